"""The CASPAS group decision method.

CASPAS blends a Choquet sum model (CSM) and a Choquet product model (CPM) of
each alternative's criterion ratings into a significance degree (SD), then
ranks alternatives by the score of their SD.  The steps are:

1. map each expert's linguistic ratings to D-IFVs, complementing cost criteria;
2. aggregate the experts into one decision matrix;
3. aggregate the experts' criterion-importance ratings, score them and
   normalise the scores into criterion weights;
4. build a lambda fuzzy measure from the weights;
5. compute CSM and CPM per alternative, blend them with ``epsilon``;
6. rank by score, breaking score ties by accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from . import difv as dv
from .aggregation import AGGREGATORS, difcaio, difcgio
from .difv import DIFV
from .measure import FuzzyMeasure, build_lambda_measure, check_weights, MeasureError

BENEFIT = "benefit"
COST = "cost"


class ProblemError(ValueError):
    """The decision problem is malformed."""


class PipelineError(RuntimeError):
    """A CASPAS stage failed; ``stage`` names it."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class CriterionSpec:
    name: str
    kind: str = BENEFIT

    def __post_init__(self):
        if self.kind not in (BENEFIT, COST):
            raise ProblemError(f"criterion {self.name!r}: kind must be 'benefit' or 'cost', got {self.kind!r}")

    @property
    def is_cost(self) -> bool:
        return self.kind == COST


@dataclass(frozen=True)
class DecisionProblem:
    """Alternatives rated by a weighted expert panel in linguistic terms.

    ``assessments[e][a][c]`` is expert ``e``'s term for alternative ``a`` on
    criterion ``c``; ``criteria_importance[e][c]`` is expert ``e``'s term for
    the importance of criterion ``c``.
    """

    alternatives: tuple[str, ...]
    criteria: tuple[CriterionSpec, ...]
    experts: tuple[str, ...]
    expert_weights: tuple[float, ...]
    assessments: tuple[tuple[tuple[str, ...], ...], ...]
    criteria_importance: tuple[tuple[str, ...], ...]
    scale: Mapping[str, DIFV] = field(default_factory=lambda: dict(dv.DEFAULT_SCALE))

    def __post_init__(self):
        as_tuple = object.__setattr__
        as_tuple(self, "alternatives", tuple(self.alternatives))
        as_tuple(self, "criteria", tuple(
            c if isinstance(c, CriterionSpec) else CriterionSpec(*c) for c in self.criteria))
        as_tuple(self, "experts", tuple(self.experts))
        as_tuple(self, "expert_weights", tuple(float(w) for w in self.expert_weights))
        as_tuple(self, "assessments", tuple(tuple(tuple(row) for row in mat) for mat in self.assessments))
        as_tuple(self, "criteria_importance", tuple(tuple(row) for row in self.criteria_importance))
        self._check()

    @property
    def criterion_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.criteria)

    def _check(self):
        for label, names in (("alternative", self.alternatives), ("criterion", self.criterion_names),
                             ("expert", self.experts)):
            if not names:
                raise ProblemError(f"at least one {label} is required")
            if len(set(names)) != len(names):
                raise ProblemError(f"{label} names must be unique: {list(names)}")
        if len(self.expert_weights) != len(self.experts):
            raise ProblemError("one weight per expert is required")
        try:
            check_weights(self.expert_weights)
        except MeasureError as exc:
            raise ProblemError(f"expert weights: {exc}") from None
        n_alt, n_crit = len(self.alternatives), len(self.criteria)
        if len(self.assessments) != len(self.experts):
            raise ProblemError("assessments need one matrix per expert")
        for e, mat in zip(self.experts, self.assessments):
            if len(mat) != n_alt:
                raise ProblemError(f"assessments[{e}] has {len(mat)} rows, expected {n_alt}")
            for a, row in zip(self.alternatives, mat):
                if len(row) != n_crit:
                    raise ProblemError(f"assessments[{e}][{a}] has {len(row)} entries, expected {n_crit}")
                for c, term in zip(self.criterion_names, row):
                    if term not in self.scale:
                        raise ProblemError(f"assessments[{e}][{a}][{c}]: unknown term {term!r}")
        if len(self.criteria_importance) != len(self.experts):
            raise ProblemError("criteria_importance needs one row per expert")
        for e, row in zip(self.experts, self.criteria_importance):
            if len(row) != n_crit:
                raise ProblemError(f"criteria_importance[{e}] has {len(row)} entries, expected {n_crit}")
            for c, term in zip(self.criterion_names, row):
                if term not in self.scale:
                    raise ProblemError(f"criteria_importance[{e}][{c}]: unknown term {term!r}")

    def subproblem(self, alternatives: Sequence[str]) -> "DecisionProblem":
        """The same problem restricted to ``alternatives`` (in the given order)."""
        index = {name: i for i, name in enumerate(self.alternatives)}
        unknown = [a for a in alternatives if a not in index]
        if unknown:
            raise ProblemError(f"unknown alternatives: {unknown}")
        rows = [index[a] for a in alternatives]
        return replace(
            self,
            alternatives=tuple(alternatives),
            assessments=tuple(tuple(mat[i] for i in rows) for mat in self.assessments),
        )

    def with_assessment(self, alternative: str, ratings: Sequence[Sequence[str]],
                        new_name: str | None = None) -> "DecisionProblem":
        """Replace one alternative's ratings; ``ratings[e][c]`` per expert."""
        if alternative not in self.alternatives:
            raise ProblemError(f"unknown alternative {alternative!r}")
        i = self.alternatives.index(alternative)
        if len(ratings) != len(self.experts):
            raise ProblemError("replacement needs one rating row per expert")
        mats = []
        for mat, row in zip(self.assessments, ratings):
            mat = list(mat)
            mat[i] = tuple(row)
            mats.append(tuple(mat))
        alts = list(self.alternatives)
        if new_name:
            alts[i] = new_name
        return replace(self, alternatives=tuple(alts), assessments=tuple(mats))


@dataclass(frozen=True)
class CaspasConfig:
    epsilon: float = 0.3
    xi: float = 0.8
    lam: float = 0.5
    family: str = "q"
    expert_aggregator: str = "arithmetic"
    # radius rule for steps that merge experts; the published tables use q
    expert_family: str = "q"

    def __post_init__(self):
        for name in ("epsilon", "xi"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
        if not self.lam >= -1.0:
            raise ValueError(f"lambda must be >= -1, got {self.lam!r}")
        for name in ("family", "expert_family"):
            if getattr(self, name) not in dv.FAMILIES:
                raise ValueError(f"{name} must be 'q' or 'p', got {getattr(self, name)!r}")
        if self.expert_aggregator not in AGGREGATORS:
            raise ValueError(f"expert_aggregator must be one of {sorted(AGGREGATORS)}")


@dataclass(frozen=True)
class AlternativeResult:
    name: str
    csm: DIFV
    cpm: DIFV
    sd: DIFV
    score: float
    accuracy: float


@dataclass
class Ranking:
    """Alternatives best-first.  ``ties`` lists groups of equivalent alternatives."""

    order: list[str]
    ties: list[list[str]]
    scores: dict[str, float]

    def __str__(self):
        tied = {name: tuple(group) for group in self.ties for name in group}
        parts, seen = [], set()
        for name in self.order:
            if name in seen:
                continue
            group = tied.get(name, (name,))
            seen.update(group)
            parts.append("=".join(group))
        return ">".join(parts)

    @property
    def best(self) -> str:
        return self.order[0]


@dataclass
class RankingResult:
    alternatives: list[AlternativeResult]
    ranking: Ranking
    config: CaspasConfig
    criteria_weights: tuple[float, ...] = ()
    measure: FuzzyMeasure | None = None
    normalized: list | None = None
    aggregated: list | None = None
    aggregated_importance: list | None = None

    @property
    def order(self) -> list[str]:
        return self.ranking.order

    def by_name(self, name: str) -> AlternativeResult:
        for alt in self.alternatives:
            if alt.name == name:
                return alt
        raise KeyError(name)


# ---------------------------------------------------------------------------
# steps


def normalize(problem: DecisionProblem) -> list[list[list[DIFV]]]:
    """Expert x alternative x criterion D-IFVs; cost cells complemented."""
    out = []
    for e, mat in enumerate(problem.assessments):
        rows = []
        for a, row in enumerate(mat):
            cells = []
            for c, term in enumerate(row):
                try:
                    cells.append(dv.from_linguistic(term, problem.scale, problem.criteria[c].is_cost))
                except KeyError:
                    raise ProblemError(
                        f"unknown term {term!r} at expert {problem.experts[e]}, "
                        f"alternative {problem.alternatives[a]}, criterion {problem.criteria[c].name}"
                    ) from None
            rows.append(cells)
        out.append(rows)
    return out


def aggregate_experts(tensor: Sequence[Sequence[Sequence[DIFV]]], expert_weights: Sequence[float],
                      config: CaspasConfig = CaspasConfig()) -> list[list[DIFV]]:
    """Merge the expert axis cell by cell with the configured weighted operator."""
    if len(tensor) != len(expert_weights):
        raise ProblemError(f"{len(tensor)} expert matrices but {len(expert_weights)} weights")
    shape = (len(tensor[0]), len(tensor[0][0]) if tensor[0] else 0)
    for mat in tensor:
        if len(mat) != shape[0] or any(len(row) != shape[1] for row in mat):
            raise ProblemError("expert matrices have mismatched dimensions")
    op = AGGREGATORS[config.expert_aggregator]
    return [
        [op([mat[a][c] for mat in tensor], expert_weights, config.expert_family) for c in range(shape[1])]
        for a in range(shape[0])
    ]


def aggregate_importance(problem: DecisionProblem, config: CaspasConfig = CaspasConfig()) -> list[DIFV]:
    op = AGGREGATORS[config.expert_aggregator]
    rated = [[problem.scale[t] for t in row] for row in problem.criteria_importance]
    return [
        op([row[c] for row in rated], problem.expert_weights, config.expert_family)
        for c in range(len(problem.criteria))
    ]


def weights_from_scores(values: Sequence[DIFV], xi: float) -> tuple[float, ...]:
    scores = [dv.score(v, xi) for v in values]
    total = math.fsum(scores)
    if total <= 0.0:
        raise ProblemError("criterion importance scores sum to zero; weights are undefined")
    return tuple(s / total for s in scores)


def derive_criteria_weights(problem: DecisionProblem, config: CaspasConfig = CaspasConfig()) -> tuple[float, ...]:
    return weights_from_scores(aggregate_importance(problem, config), config.xi)


def compute_csm(row: Sequence[DIFV], measure: FuzzyMeasure, config: CaspasConfig = CaspasConfig()) -> DIFV:
    return difcaio(row, measure, config.xi, config.family)


def compute_cpm(row: Sequence[DIFV], measure: FuzzyMeasure, config: CaspasConfig = CaspasConfig()) -> DIFV:
    return difcgio(row, measure, config.xi, config.family)


def significance_degree(csm: DIFV, cpm: DIFV, epsilon: float, family: str = "q") -> DIFV:
    """``epsilon * csm (+) (1 - epsilon) * cpm`` within one radius family."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon!r}")
    if epsilon == 0.0:
        return cpm
    if epsilon == 1.0:
        return csm
    return dv.oplus(dv.scalar(epsilon, csm, family), dv.scalar(1.0 - epsilon, cpm, family), family)


def rank(sds: Sequence[DIFV], xi: float, names: Sequence[str] | None = None) -> Ranking:
    """Best-first order by score then accuracy.

    Equivalent values stay in input order and are reported in ``ties``.
    """
    names = list(names) if names is not None else [f"P{i + 1}" for i in range(len(sds))]
    if len(names) != len(sds):
        raise ValueError("one name per significance degree is required")
    keys = [dv.rank_key(v, xi) for v in sds]
    return ranking_from_keys(keys, names, {names[i]: dv.score(sds[i], xi) for i in range(len(sds))})


def ranking_from_keys(keys: Sequence, names: Sequence[str], scores: dict[str, float]) -> Ranking:
    """Order by descending key (stable), grouping equal keys as ties."""
    order = sorted(range(len(keys)), key=lambda i: (tuple(-x for x in keys[i]), i))
    ties, i = [], 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and keys[order[j + 1]] == keys[order[i]]:
            j += 1
        if j > i:
            ties.append([names[t] for t in order[i:j + 1]])
        i = j + 1
    return Ranking(order=[names[i] for i in order], ties=ties, scores=scores)


def _stage(name, fn, *args):
    try:
        return fn(*args)
    except PipelineError:
        raise
    except (ValueError, KeyError, ArithmeticError) as exc:
        raise PipelineError(name, exc) from exc


def solve_matrix(matrix: Sequence[Sequence[DIFV]], weights: Sequence[float], config: CaspasConfig,
                 names: Sequence[str], criterion_names: Sequence[str] | None = None) -> RankingResult:
    """Steps from the fuzzy measure onwards, for an already aggregated matrix."""
    measure = _stage("fuzzy measure", build_lambda_measure, config.lam, weights, criterion_names)
    results = []
    for name, row in zip(names, matrix):
        csm = _stage("CSM", compute_csm, row, measure, config)
        cpm = _stage("CPM", compute_cpm, row, measure, config)
        sd = _stage("significance degree", significance_degree, csm, cpm, config.epsilon, config.family)
        results.append(AlternativeResult(name, csm, cpm, sd, dv.score(sd, config.xi), dv.accuracy(sd, config.xi)))
    ranking = rank([r.sd for r in results], config.xi, names)
    return RankingResult(results, ranking, config, tuple(weights), measure, aggregated=[list(r) for r in matrix])


def run_caspas(problem: DecisionProblem, config: CaspasConfig = CaspasConfig()) -> RankingResult:
    tensor = _stage("normalize", normalize, problem)
    matrix = _stage("aggregate experts", aggregate_experts, tensor, problem.expert_weights, config)
    importance = _stage("aggregate importance", aggregate_importance, problem, config)
    weights = _stage("criteria weights", weights_from_scores, importance, config.xi)
    result = solve_matrix(matrix, weights, config, problem.alternatives, problem.criterion_names)
    result.normalized = tensor
    result.aggregated_importance = importance
    return result
