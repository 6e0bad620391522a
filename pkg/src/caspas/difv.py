"""Disc intuitionistic fuzzy values (D-IFVs) and their algebra.

A D-IFV is a triple ``<(mu, nu); r>``: membership ``mu``, non-membership
``nu`` with ``mu + nu <= 1``, and a radius ``r`` in ``[0, sqrt(2)]`` that
expresses uncertainty around the ``(mu, nu)`` point.

Two radius rules are supported.  The ``q`` family contracts radii
(product), the ``p`` family expands them (probabilistic sum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

SQRT2 = math.sqrt(2.0)

# Slack for rounded literals and floating drift in closed forms.
SLACK = 1e-12

# Scores and accuracies are compared on this grid so ties are transitive.
_KEY_DIGITS = 12

FAMILIES = ("q", "p")


class DIFVError(ValueError):
    """Raised for an invalid D-IFV component; ``field`` names the culprit."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _clamp(x: float, lo: float, hi: float, field: str) -> float:
    if not math.isfinite(x):
        raise DIFVError(field, f"must be finite, got {x!r}")
    if x < lo - SLACK or x > hi + SLACK:
        raise DIFVError(field, f"{x!r} outside [{lo}, {hi}]")
    return min(max(x, lo), hi)


@dataclass(frozen=True)
class DIFV:
    """An immutable disc intuitionistic fuzzy value.

    Construction validates and clamps values that sit within ``SLACK`` of a
    boundary, so ``DIFV(0.3, 0.7000000000001, 0.5)`` is accepted.
    """

    mu: float
    nu: float
    r: float

    def __post_init__(self):
        mu = _clamp(float(self.mu), 0.0, 1.0, "mu")
        nu = _clamp(float(self.nu), 0.0, 1.0, "nu")
        r = _clamp(float(self.r), 0.0, SQRT2, "r")
        total = mu + nu
        if total > 1.0 + SLACK:
            raise DIFVError("mu+nu", f"mu + nu = {total!r} exceeds 1")
        if total > 1.0:
            # split the overshoot so both stay inside [0, 1]
            excess = (total - 1.0) / 2.0
            mu, nu = mu - excess, nu - excess
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "r", r)

    def astuple(self) -> tuple[float, float, float]:
        return (self.mu, self.nu, self.r)

    def __iter__(self):
        return iter(self.astuple())

    def __str__(self):
        return f"<({self.mu:.4g},{self.nu:.4g});{self.r:.4g}>"


def validate(mu: float, nu: float, r: float) -> DIFV:
    return DIFV(mu, nu, r)


def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise ValueError(f"unknown radius family {family!r}; expected 'q' or 'p'")


def _check_xi(xi: float) -> float:
    xi = float(xi)
    if not 0.0 <= xi <= 1.0:
        raise ValueError(f"xi must lie in [0, 1], got {xi!r}")
    return xi


# ---------------------------------------------------------------------------
# scoring and ordering


def score(v: DIFV, xi: float) -> float:
    """Blend of the intuitionistic score ``(mu - nu + 1) / 2`` and ``r / sqrt(2)``."""
    xi = _check_xi(xi)
    return xi * ((v.mu - v.nu + 1.0) / 2.0) + (1.0 - xi) * v.r / SQRT2


def accuracy(v: DIFV, xi: float) -> float:
    xi = _check_xi(xi)
    return xi * (v.mu + v.nu) + (1.0 - xi) * v.r / SQRT2


def rank_key(v: DIFV, xi: float) -> tuple[float, float]:
    """Sort key realising the score-then-accuracy order.

    Values are rounded to 12 decimals, which makes equality an equivalence
    relation and keeps the induced order a total preorder.
    """
    return (round(score(v, xi), _KEY_DIGITS), round(accuracy(v, xi), _KEY_DIGITS))


def compare(a: DIFV, b: DIFV, xi: float) -> int:
    """Return -1, 0 or 1 as ``a`` ranks below, equivalent to, or above ``b``."""
    ka, kb = rank_key(a, xi), rank_key(b, xi)
    return (ka > kb) - (ka < kb)


def complement(v: DIFV) -> DIFV:
    return DIFV(v.nu, v.mu, v.r)


# ---------------------------------------------------------------------------
# radius rules


def _radius_pair(ra: float, rb: float, family: str) -> float:
    if family == "q":
        return ra * rb / SQRT2
    return SQRT2 - SQRT2 * (1.0 - ra / SQRT2) * (1.0 - rb / SQRT2)


def _radius_power(r: float, zeta: float, family: str) -> float:
    if family == "q":
        return SQRT2 * (r / SQRT2) ** zeta
    return SQRT2 - SQRT2 * (1.0 - r / SQRT2) ** zeta


def _check_zeta(zeta: float) -> float:
    zeta = float(zeta)
    if not zeta > 0.0 or not math.isfinite(zeta):
        raise ValueError(f"exponent must be a positive finite number, got {zeta!r}")
    return zeta


# ---------------------------------------------------------------------------
# algebraic operations


def oplus(a: DIFV, b: DIFV, family: str = "q") -> DIFV:
    _check_family(family)
    rest = (1.0 - a.mu) * (1.0 - b.mu)
    # nu * nu <= (1 - mu)(1 - mu) exactly; min() keeps it so after rounding
    return DIFV(1.0 - rest, min(a.nu * b.nu, rest), _radius_pair(a.r, b.r, family))


def otimes(a: DIFV, b: DIFV, family: str = "q") -> DIFV:
    _check_family(family)
    rest = (1.0 - a.nu) * (1.0 - b.nu)
    return DIFV(min(a.mu * b.mu, rest), 1.0 - rest, _radius_pair(a.r, b.r, family))


def scalar(zeta: float, v: DIFV, family: str = "q") -> DIFV:
    """Scalar multiple ``zeta * v``."""
    _check_family(family)
    zeta = _check_zeta(zeta)
    if zeta == 1.0:
        return v
    rest = (1.0 - v.mu) ** zeta
    return DIFV(1.0 - rest, min(v.nu ** zeta, rest), _radius_power(v.r, zeta, family))


def power(v: DIFV, zeta: float, family: str = "q") -> DIFV:
    """Power ``v ** zeta``."""
    _check_family(family)
    zeta = _check_zeta(zeta)
    if zeta == 1.0:
        return v
    rest = (1.0 - v.nu) ** zeta
    return DIFV(min(v.mu ** zeta, rest), 1.0 - rest, _radius_power(v.r, zeta, family))


def oplus_q(a, b):
    return oplus(a, b, "q")


def oplus_p(a, b):
    return oplus(a, b, "p")


def otimes_q(a, b):
    return otimes(a, b, "q")


def otimes_p(a, b):
    return otimes(a, b, "p")


def scalar_q(zeta, v):
    return scalar(zeta, v, "q")


def scalar_p(zeta, v):
    return scalar(zeta, v, "p")


def power_q(v, zeta):
    return power(v, zeta, "q")


def power_p(v, zeta):
    return power(v, zeta, "p")


# ---------------------------------------------------------------------------
# D-IFS: element id -> D-IFV


class DIFS(dict):
    """A disc intuitionistic fuzzy set, keyed by element identifier."""

    def __init__(self, elements: Mapping | Iterable = ()):
        super().__init__(elements)
        for key, value in self.items():
            if not isinstance(value, DIFV):
                raise TypeError(f"element {key!r} is not a DIFV: {value!r}")


def _same_domain(a: DIFS, b: DIFS) -> None:
    if set(a) != set(b):
        missing = sorted(map(str, set(a) ^ set(b)))
        raise ValueError(f"D-IFS element domains differ: {', '.join(missing)}")


def set_subset(a: DIFS, b: DIFS) -> bool:
    _same_domain(a, b)
    return all(
        a[x].r <= b[x].r and a[x].mu <= b[x].mu and a[x].nu >= b[x].nu for x in a
    )


def set_equal(a: DIFS, b: DIFS) -> bool:
    return set_subset(a, b) and set_subset(b, a)


def set_complement(a: DIFS) -> DIFS:
    return DIFS({x: complement(v) for x, v in a.items()})


# ---------------------------------------------------------------------------
# linguistic terms

DEFAULT_SCALE: dict[str, DIFV] = {
    "EH": DIFV(0.9, 0.1, 0.9),
    "VH": DIFV(0.8, 0.2, 0.8),
    "H": DIFV(0.7, 0.3, 0.7),
    "MH": DIFV(0.6, 0.4, 0.6),
    "M": DIFV(0.5, 0.5, 0.5),
    "ML": DIFV(0.4, 0.6, 0.4),
    "L": DIFV(0.3, 0.7, 0.3),
    "VL": DIFV(0.2, 0.8, 0.2),
    "EL": DIFV(0.1, 0.9, 0.1),
}

TERM_NAMES = {
    "EH": "Extremely High",
    "VH": "Very High",
    "H": "High",
    "MH": "Moderately High",
    "M": "Medium",
    "ML": "Moderately Low",
    "L": "Low",
    "VL": "Very Low",
    "EL": "Extremely Low",
}


def make_scale(overrides: Mapping[str, Iterable[float]] | None = None) -> dict[str, DIFV]:
    """Default term table with optional ``code -> (mu, nu, r)`` overrides."""
    scale = dict(DEFAULT_SCALE)
    for code, triple in (overrides or {}).items():
        scale[str(code)] = triple if isinstance(triple, DIFV) else DIFV(*triple)
    return scale


def from_linguistic(term: str, scale: Mapping[str, DIFV] | None = None, is_cost: bool = False) -> DIFV:
    scale = DEFAULT_SCALE if scale is None else scale
    try:
        value = scale[term]
    except KeyError:
        raise KeyError(f"unknown linguistic term {term!r}") from None
    return complement(value) if is_cost else value
