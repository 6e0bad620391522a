"""Disc intuitionistic fuzzy values, Choquet aggregation and the CASPAS method."""

from .difv import DIFV, DIFS, accuracy, compare, complement, score
from .measure import FuzzyMeasure, additive_measure, build_lambda_measure
from .pipeline import CaspasConfig, DecisionProblem, RankingResult, run_caspas

__all__ = [
    "DIFV",
    "DIFS",
    "accuracy",
    "compare",
    "complement",
    "score",
    "FuzzyMeasure",
    "additive_measure",
    "build_lambda_measure",
    "CaspasConfig",
    "DecisionProblem",
    "RankingResult",
    "run_caspas",
]

__version__ = "0.1.0"
