"""Weighted and Choquet aggregation of D-IFV collections.

All eight operators share one closed form: the value is a product over the
inputs raised to per-input exponents.  The weighted operators use the weight
vector directly; the Choquet operators first sort the inputs ascending under
``difv.compare`` and use the marginal capacities of the survivor sets.
"""

from __future__ import annotations

import math
from typing import Sequence

from .difv import DIFV, SQRT2, _check_family, rank_key
from .measure import FuzzyMeasure, MeasureError, check_weights, validate_measure


class AggregationError(ValueError):
    pass


def _weights(values: Sequence[DIFV], weights: Sequence[float]) -> tuple[float, ...]:
    if not values:
        raise AggregationError("cannot aggregate an empty collection")
    if len(values) != len(weights):
        raise AggregationError(f"{len(values)} values but {len(weights)} weights")
    try:
        return check_weights(weights)
    except MeasureError as exc:
        raise AggregationError(str(exc)) from None


def _prod(bases: Sequence[float], exponents: Sequence[float]) -> float:
    out = 1.0
    for base, e in zip(bases, exponents):
        if e == 0.0:
            continue
        out *= base ** e
    return out


def _radius(values, exponents, family):
    # same normalised form as the pairwise operations, so that chains of
    # scalar/oplus steps and the closed form round identically near 0 and sqrt 2
    if family == "q":
        return SQRT2 * _prod([v.r / SQRT2 for v in values], exponents)
    return SQRT2 - SQRT2 * _prod([1.0 - v.r / SQRT2 for v in values], exponents)


def _sole(values, exponents) -> DIFV | None:
    """The input carrying all the weight, if there is one."""
    live = [i for i, e in enumerate(exponents) if e != 0.0]
    if len(live) == 1 and exponents[live[0]] == 1.0:
        return values[live[0]]
    return None


def _arithmetic(values, exponents, family) -> DIFV:
    _check_family(family)
    sole = _sole(values, exponents)
    if sole is not None:
        return sole
    rest = _prod([1.0 - v.mu for v in values], exponents)
    # prod nu^c <= prod (1 - mu)^c holds exactly; min() keeps it under rounding
    nu = min(_prod([v.nu for v in values], exponents), rest)
    return DIFV(1.0 - rest, nu, _radius(values, exponents, family))


def _geometric(values, exponents, family) -> DIFV:
    _check_family(family)
    sole = _sole(values, exponents)
    if sole is not None:
        return sole
    rest = _prod([1.0 - v.nu for v in values], exponents)
    mu = min(_prod([v.mu for v in values], exponents), rest)
    return DIFV(mu, 1.0 - rest, _radius(values, exponents, family))


def difwao(values: Sequence[DIFV], weights: Sequence[float], family: str = "q") -> DIFV:
    """Weighted arithmetic operator (D-IFWAO)."""
    return _arithmetic(values, _weights(values, weights), family)


def difwgo(values: Sequence[DIFV], weights: Sequence[float], family: str = "q") -> DIFV:
    """Weighted geometric operator (D-IFWGO)."""
    return _geometric(values, _weights(values, weights), family)


def sorted_permutation(values: Sequence[DIFV], xi: float) -> list[int]:
    """Input indices ordered ascending by score then accuracy.

    Equivalent values keep their input order.
    """
    return sorted(range(len(values)), key=lambda i: (rank_key(values[i], xi), i))


def choquet_exponents(values: Sequence[DIFV], measure: FuzzyMeasure, xi: float) -> list[float]:
    """Per-input Choquet exponents ``tau(F_(k)) - tau(F_(k+1))``, in input order.

    ``F_(k)`` is the set of inputs ranked at position ``k`` or higher.
    """
    if not values:
        raise AggregationError("cannot aggregate an empty collection")
    if len(values) != measure.k:
        raise AggregationError(f"{len(values)} values but the measure covers {measure.k} criteria")
    problems = validate_measure(measure)
    if problems:
        raise AggregationError("invalid fuzzy measure: " + "; ".join(problems))
    order = sorted_permutation(values, xi)
    exponents = [0.0] * len(values)
    survivors = measure.full
    for idx in order:
        rest = survivors & ~(1 << idx)
        exponents[idx] = max(measure.values[survivors] - measure.values[rest], 0.0)
        survivors = rest
    return exponents


def difcaio(values: Sequence[DIFV], measure: FuzzyMeasure, xi: float, family: str = "q") -> DIFV:
    """Choquet arithmetic integral operator (D-IFCAIO)."""
    return _arithmetic(values, choquet_exponents(values, measure, xi), family)


def difcgio(values: Sequence[DIFV], measure: FuzzyMeasure, xi: float, family: str = "q") -> DIFV:
    """Choquet geometric integral operator (D-IFCGIO)."""
    return _geometric(values, choquet_exponents(values, measure, xi), family)


def difwao_q(values, weights):
    return difwao(values, weights, "q")


def difwao_p(values, weights):
    return difwao(values, weights, "p")


def difwgo_q(values, weights):
    return difwgo(values, weights, "q")


def difwgo_p(values, weights):
    return difwgo(values, weights, "p")


def difcaio_q(values, measure, xi):
    return difcaio(values, measure, xi, "q")


def difcaio_p(values, measure, xi):
    return difcaio(values, measure, xi, "p")


def difcgio_q(values, measure, xi):
    return difcgio(values, measure, xi, "q")


def difcgio_p(values, measure, xi):
    return difcgio(values, measure, xi, "p")


AGGREGATORS = {"arithmetic": difwao, "geometric": difwgo}


def is_close(a: DIFV, b: DIFV, tol: float) -> bool:
    return all(math.isclose(x, y, rel_tol=0.0, abs_tol=tol) for x, y in zip(a, b))
