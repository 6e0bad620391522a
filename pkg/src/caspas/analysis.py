"""Sensitivity sweeps and ranking-validity checks for CASPAS.

The validity checks follow the three classic tests for MCDM methods:

I.   replacing a non-optimal alternative by a worse one keeps the best one;
II.  pairwise verdicts across sub-problems are transitive;
III. sub-problem rankings merge back into the full-problem ranking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Sequence

from . import difv as dv
from .pipeline import CaspasConfig, DecisionProblem, Ranking, RankingResult, ranking_from_keys, run_caspas

AXES = ("epsilon", "xi")


class ValidityError(ValueError):
    """A validity check was asked to run outside its contract."""


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class SweepPoint:
    value: float
    results: dict[str, RankingResult]

    def ranking(self, family: str) -> Ranking:
        return self.results[family].ranking


@dataclass
class Segment:
    start: float
    stop: float
    ranking: str


@dataclass
class SweepReport:
    axis: str
    grid: list[float]
    points: list[SweepPoint]
    segments: dict[str, list[Segment]] = field(default_factory=dict)
    config: CaspasConfig | None = None

    def rankings(self, family: str) -> list[str]:
        return [str(pt.ranking(family)) for pt in self.points]


def check_grid(grid: Sequence[float]) -> list[float]:
    grid = [float(x) for x in grid]
    if not grid:
        raise ValueError("parameter grid is empty")
    if any(not 0.0 <= x <= 1.0 for x in grid):
        raise ValueError(f"grid values must lie in [0, 1]: {grid}")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError(f"grid must be strictly increasing: {grid}")
    return grid


def segments(grid: Sequence[float], labels: Sequence[str]) -> list[Segment]:
    """Maximal runs of consecutive grid points with the same ranking."""
    out: list[Segment] = []
    for value, label in zip(grid, labels):
        if out and out[-1].ranking == label:
            out[-1].stop = value
        else:
            out.append(Segment(value, value, label))
    return out


def sweep(problem: DecisionProblem, config: CaspasConfig, axis: str, grid: Sequence[float],
          families: Sequence[str] = dv.FAMILIES) -> SweepReport:
    """Re-run CASPAS over ``grid`` for one parameter, other settings fixed."""
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    grid = check_grid(grid)
    points = []
    for value in grid:
        results = {fam: run_caspas(problem, replace(config, **{axis: value, "family": fam})) for fam in families}
        points.append(SweepPoint(value, results))
    report = SweepReport(axis, grid, points, config=config)
    for fam in families:
        report.segments[fam] = segments(grid, report.rankings(fam))
    return report


# ---------------------------------------------------------------------------
# validity


@dataclass
class Condition1:
    passed: bool
    target: str
    replacement: str
    best_before: str
    best_after: str
    ranking_before: str
    ranking_after: str


@dataclass
class SubRanking:
    alternatives: list[str]
    ranking: str
    order: list[str]
    criteria_weights: tuple[float, ...]


@dataclass
class Conditions23:
    condition2: bool
    condition3: bool
    full_ranking: str
    merged_ranking: str
    merged_ties: list[list[str]]
    subproblems: list[SubRanking]
    contradictions: list[tuple[str, str]]
    copeland: dict[str, int]
    weights_invariant: bool


def validity_condition1(problem: DecisionProblem, config: CaspasConfig, target: str,
                        ratings: Sequence[Sequence[str]], new_name: str | None = None) -> Condition1:
    """Replace ``target``'s ratings and check the best alternative survives.

    The target must not be the current best, and the replacement must not
    rank above the alternative it replaces.
    """
    before = run_caspas(problem, config)
    if target not in problem.alternatives:
        raise ValidityError(f"unknown alternative {target!r}")
    if target == before.ranking.best:
        raise ValidityError(f"{target} is the current best alternative; condition I needs a non-optimal one")
    changed = problem.with_assessment(target, ratings, new_name)
    after = run_caspas(changed, config)
    name = new_name or target
    old_sd = before.by_name(target).sd
    new_sd = after.by_name(name).sd
    if dv.compare(new_sd, old_sd, config.xi) > 0:
        raise ValidityError(f"replacement {name} ranks above {target}; condition I needs a worse alternative")
    return Condition1(
        passed=after.ranking.best == before.ranking.best,
        target=target,
        replacement=name,
        best_before=before.ranking.best,
        best_after=after.ranking.best,
        ranking_before=str(before.ranking),
        ranking_after=str(after.ranking),
    )


def leave_one_out(alternatives: Sequence[str]) -> list[list[str]]:
    return [[a for a in alternatives if a != skip] for skip in alternatives]


def _verdicts(ranking: Ranking) -> set[tuple[str, str]]:
    """Strict pairs (better, worse); tied alternatives give no verdict."""
    tied = {frozenset(pair) for group in ranking.ties for pair in itertools.combinations(group, 2)}
    out = set()
    for i, a in enumerate(ranking.order):
        for b in ranking.order[i + 1:]:
            if frozenset((a, b)) not in tied:
                out.add((a, b))
    return out


def _transitive(pairs: set[tuple[str, str]]) -> bool:
    """True when the relation has no cycle (so its closure is a strict order)."""
    succ: dict[str, set[str]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    state: dict[str, int] = {}

    def visit(node):
        state[node] = 1
        for nxt in succ.get(node, ()):
            mark = state.get(nxt, 0)
            if mark == 1 or (mark == 0 and not visit(nxt)):
                return False
        state[node] = 2
        return True

    return all(state.get(n, 0) == 2 or visit(n) for n in list(succ))


def copeland(alternatives: Sequence[str], rankings: Sequence[Ranking]) -> dict[str, int]:
    """Pairwise-majority score: wins minus losses over all sub-problem verdicts."""
    votes: dict[tuple[str, str], int] = {}
    for ranking in rankings:
        for a, b in _verdicts(ranking):
            votes[(a, b)] = votes.get((a, b), 0) + 1
    score = {a: 0 for a in alternatives}
    for a, b in itertools.combinations(alternatives, 2):
        ab, ba = votes.get((a, b), 0), votes.get((b, a), 0)
        if ab > ba:
            score[a] += 1
            score[b] -= 1
        elif ba > ab:
            score[b] += 1
            score[a] -= 1
    return score


def validity_conditions_2_3(problem: DecisionProblem, config: CaspasConfig,
                            subsets: Sequence[Sequence[str]] | None = None) -> Conditions23:
    """Solve each sub-problem independently and compare with the full ranking."""
    subsets = leave_one_out(problem.alternatives) if subsets is None else [list(s) for s in subsets]
    for s in subsets:
        unknown = [a for a in s if a not in problem.alternatives]
        if unknown:
            raise ValidityError(f"subset {s} references unknown alternatives {unknown}")
        if len(set(s)) < 2:
            raise ValidityError(f"subset {s} needs at least two distinct alternatives")
    full = run_caspas(problem, config)
    subs = []
    for s in subsets:
        result = run_caspas(problem.subproblem(s), config)
        subs.append((s, result))

    verdicts = set().union(*(_verdicts(r.ranking) for _, r in subs))
    contradictions = sorted((a, b) for a, b in verdicts if (b, a) in verdicts and a < b)
    condition2 = not contradictions and _transitive(verdicts)

    scores = copeland(problem.alternatives, [r.ranking for _, r in subs])
    keys = [(scores[a],) for a in problem.alternatives]
    merged = ranking_from_keys(keys, problem.alternatives, {a: float(scores[a]) for a in problem.alternatives})
    condition3 = not merged.ties and not full.ranking.ties and merged.order == full.ranking.order

    return Conditions23(
        condition2=condition2,
        condition3=condition3,
        full_ranking=str(full.ranking),
        merged_ranking=str(merged),
        merged_ties=merged.ties,
        subproblems=[SubRanking(list(s), str(r.ranking), r.ranking.order, r.criteria_weights) for s, r in subs],
        contradictions=contradictions,
        copeland=scores,
        weights_invariant=all(r.criteria_weights == full.criteria_weights and r.measure == full.measure
                              for _, r in subs),
    )
