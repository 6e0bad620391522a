"""Baselines for cross-checking CASPAS on the same aggregated matrix.

* weighted WASPAS: the CSM/CPM pair replaced by the weighted arithmetic and
  geometric operators (WSM/WPM), blended and ranked exactly as in CASPAS;
* circular intuitionistic fuzzy TOPSIS with the evolved Minkowski distance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import difv as dv
from .aggregation import difwao, difwgo
from .difv import DIFV, SQRT2
from .pipeline import (AlternativeResult, CaspasConfig, Ranking, RankingResult, rank, ranking_from_keys,
                       significance_degree)


class TopsisError(ValueError):
    pass


def wsm(row: Sequence[DIFV], weights: Sequence[float], family: str = "q") -> DIFV:
    return difwao(row, weights, family)


def wpm(row: Sequence[DIFV], weights: Sequence[float], family: str = "q") -> DIFV:
    return difwgo(row, weights, family)


def weighted_waspas(matrix: Sequence[Sequence[DIFV]], weights: Sequence[float], config: CaspasConfig,
                    names: Sequence[str]) -> RankingResult:
    """CASPAS with WSM/WPM in place of CSM/CPM.  ``csm``/``cpm`` hold WSM/WPM."""
    results = []
    for name, row in zip(names, matrix):
        s = wsm(row, weights, config.family)
        p = wpm(row, weights, config.family)
        sd = significance_degree(s, p, config.epsilon, config.family)
        results.append(AlternativeResult(name, s, p, sd, dv.score(sd, config.xi), dv.accuracy(sd, config.xi)))
    ranking = rank([r.sd for r in results], config.xi, names)
    return RankingResult(results, ranking, config, tuple(weights), None, aggregated=[list(r) for r in matrix])


def minkowski_distance(a: DIFV, b: DIFV, beta: int = 3) -> float:
    """Evolved circular-IF Minkowski distance; lies in [0, 1]."""
    if int(beta) != beta or beta < 1:
        raise TopsisError(f"beta must be a positive integer, got {beta!r}")
    value_term = (0.5 * (abs(a.mu - b.mu) ** beta + abs(a.nu - b.nu) ** beta)) ** (1.0 / beta)
    return 0.5 * (abs(a.r - b.r) / SQRT2 + value_term)


@dataclass
class ClosenessResult:
    names: list[str]
    aggregates: list[DIFV]
    ideal: DIFV
    anti_ideal: DIFV
    distance_to_ideal: list[float]
    distance_to_anti_ideal: list[float]
    closeness: list[float]
    ranking: Ranking
    degenerate: bool = False

    @property
    def order(self) -> list[str]:
        return self.ranking.order


def displaced_ideals(values: Sequence[DIFV]) -> tuple[DIFV, DIFV]:
    """Componentwise best and worst ratings.  Both take the largest radius."""
    r_max = max(v.r for v in values)
    ideal = DIFV(max(v.mu for v in values), min(v.nu for v in values), r_max)
    anti = DIFV(min(v.mu for v in values), max(v.nu for v in values), r_max)
    return ideal, anti


def _round(v: DIFV, decimals: int | None) -> DIFV:
    if decimals is None:
        return v
    mu, nu = round(v.mu, decimals), round(v.nu, decimals)
    # rounding both up can overshoot mu + nu <= 1
    if mu + nu > 1.0:
        nu = 1.0 - mu
    return DIFV(mu, nu, round(v.r, decimals))


def cif_topsis(matrix: Sequence[Sequence[DIFV]], weights: Sequence[float], beta: int = 3, family: str = "q",
               names: Sequence[str] | None = None, decimals: int | None = None) -> ClosenessResult:
    """Rank alternatives by relative closeness to the displaced ideal.

    Each row is collapsed with the weighted geometric operator.  ``decimals``
    rounds those aggregates before the distance step, the way hand-worked
    tables do; ``None`` keeps full precision.
    """
    if not matrix:
        raise TopsisError("decision matrix is empty")
    names = list(names) if names is not None else [f"P{i + 1}" for i in range(len(matrix))]
    if len(names) != len(matrix):
        raise TopsisError("one name per matrix row is required")
    aggregates = [_round(difwgo(row, weights, family), decimals) for row in matrix]
    ideal, anti = displaced_ideals(aggregates)
    d_star = [minkowski_distance(v, ideal, beta) for v in aggregates]
    d_neg = [minkowski_distance(v, anti, beta) for v in aggregates]
    closeness, degenerate = [], False
    for ds, dn in zip(d_star, d_neg):
        if ds + dn > 0.0:
            closeness.append(dn / (ds + dn))
        else:
            # equal to both ideals: every alternative shares (mu, nu)
            closeness.append(0.5)
            degenerate = True
    if len(aggregates) == 1:
        degenerate = True
    ranking = _rank_closeness(closeness, names)
    return ClosenessResult(names, aggregates, ideal, anti, d_star, d_neg, closeness, ranking, degenerate)


def _rank_closeness(closeness: Sequence[float], names: Sequence[str]) -> Ranking:
    keys = [(round(c, 12),) for c in closeness]
    return ranking_from_keys(keys, names, {n: c for n, c in zip(names, closeness)})
