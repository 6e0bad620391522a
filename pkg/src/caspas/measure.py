"""Fuzzy measures (capacities) over small criterion sets.

Measures are stored densely: ``values[mask]`` is the capacity of the subset
whose members are the set bits of ``mask``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_CRITERIA = 24
WEIGHT_TOL = 1e-6
BOUNDARY_TOL = 1e-9
MONOTONE_TOL = 1e-12
# below this |lambda| (subnormal range) the measure is taken as additive
LAMBDA_ZERO = 1e-300


class MeasureError(ValueError):
    pass


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 0:
            raise MeasureError(f"negative criterion index {i}")
        mask |= 1 << i
    return mask


def members(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


@dataclass(frozen=True)
class FuzzyMeasure:
    k: int
    values: tuple[float, ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.k < 1 or self.k > MAX_CRITERIA:
            raise MeasureError(f"criterion count must lie in [1, {MAX_CRITERIA}], got {self.k}")
        if len(self.values) != 1 << self.k:
            raise MeasureError(f"expected {1 << self.k} subset values, got {len(self.values)}")
        if self.names is not None and len(self.names) != self.k:
            raise MeasureError("names must have one entry per criterion")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @property
    def full(self) -> int:
        return (1 << self.k) - 1

    def __call__(self, subset: int | Iterable[int]) -> float:
        return measure_of(self, subset)

    def label(self, mask: int) -> list[str]:
        names = self.names or tuple(str(i) for i in range(self.k))
        return [names[i] for i in members(mask)]

    def to_json(self) -> dict[str, float]:
        """Subset descriptor (sorted, comma-joined criterion names) to value."""
        out = {}
        for mask in sorted(range(1 << self.k), key=lambda m: (bin(m).count("1"), members(m))):
            out[",".join(sorted(self.label(mask)))] = self.values[mask]
        return out

    @classmethod
    def from_json(cls, data: dict[str, float], names: Sequence[str]) -> "FuzzyMeasure":
        index = {name: i for i, name in enumerate(names)}
        values = [None] * (1 << len(names))
        for key, value in data.items():
            labels = [s for s in key.split(",") if s]
            try:
                values[mask_of(index[s] for s in labels)] = float(value)
            except KeyError as exc:
                raise MeasureError(f"unknown criterion {exc.args[0]!r} in subset {key!r}") from None
        if any(v is None for v in values):
            raise MeasureError("measure table does not cover every subset")
        return cls(len(names), tuple(values), tuple(names))


def measure_of(m: FuzzyMeasure, subset: int | Iterable[int]) -> float:
    mask = subset if isinstance(subset, int) else mask_of(subset)
    if mask < 0 or mask > m.full:
        raise MeasureError(f"subset {subset!r} references criteria outside 0..{m.k - 1}")
    return m.values[mask]


def validate_measure(m: FuzzyMeasure) -> list[str]:
    """List boundary and monotonicity violations; empty when ``m`` is a capacity.

    Monotonicity is checked on covering pairs ``(A, A + {i})``, which is
    enough because the subset order is generated by single additions.
    """
    problems = []
    if abs(m.values[0]) > BOUNDARY_TOL:
        problems.append(f"boundary: tau({{}}) = {m.values[0]!r}, expected 0")
    if abs(m.values[m.full] - 1.0) > BOUNDARY_TOL:
        problems.append(f"boundary: tau({m.label(m.full)}) = {m.values[m.full]!r}, expected 1")
    for mask in range(1 << m.k):
        for i in range(m.k):
            if mask >> i & 1:
                continue
            bigger = mask | 1 << i
            if m.values[mask] > m.values[bigger] + MONOTONE_TOL:
                problems.append(
                    f"monotonicity: tau({m.label(mask)}) = {m.values[mask]:.6g} > "
                    f"tau({m.label(bigger)}) = {m.values[bigger]:.6g}"
                )
    return problems


def check_weights(weights: Sequence[float], renormalize: bool = False) -> tuple[float, ...]:
    w = tuple(float(x) for x in weights)
    if not w:
        raise MeasureError("weight vector is empty")
    if any(not math.isfinite(x) or x < 0.0 or x > 1.0 + WEIGHT_TOL for x in w):
        raise MeasureError(f"weights must lie in [0, 1]: {w}")
    total = math.fsum(w)
    if abs(total - 1.0) > WEIGHT_TOL:
        if not renormalize or total <= 0.0:
            raise MeasureError(f"weights sum to {total:.9g}, not 1")
        w = tuple(x / total for x in w)
    return w


def additive_measure(weights: Sequence[float], names: Sequence[str] | None = None,
                     renormalize: bool = False) -> FuzzyMeasure:
    w = check_weights(weights, renormalize)
    k = len(w)
    values = [0.0] * (1 << k)
    for mask in range(1, 1 << k):
        low = mask & -mask
        values[mask] = values[mask ^ low] + w[low.bit_length() - 1]
    return FuzzyMeasure(k, tuple(values), tuple(names) if names else None)


def lambda_densities(lam: float, weights: Sequence[float]) -> list[float]:
    """Singleton densities ``g_i = ((1 + lam) ** w_i - 1) / lam``.

    With these densities the lambda-measure of the full set is
    ``((1 + lam) ** sum(w) - 1) / lam``, i.e. exactly 1 when the weights sum
    to 1, so no root finding for ``lam`` is needed.
    """
    if abs(lam) < LAMBDA_ZERO:
        return list(weights)
    # expm1/log1p keep precision for lam near 0
    return [math.expm1(w * math.log1p(lam)) / lam for w in weights]


def build_lambda_measure(lam: float, weights: Sequence[float], names: Sequence[str] | None = None,
                         renormalize: bool = False) -> FuzzyMeasure:
    """Sugeno lambda-measure with interaction index ``lam`` and criterion weights.

    ``lam > 0`` models synergy between criteria, ``lam < 0`` redundancy and
    ``lam == 0`` gives the additive measure.
    """
    lam = float(lam)
    if not math.isfinite(lam) or lam < -1.0:
        raise MeasureError(f"lambda must be >= -1, got {lam!r}")
    if lam == -1.0:
        raise MeasureError("lambda = -1 is degenerate: (1 + lambda) ** w vanishes")
    w = check_weights(weights, renormalize)
    if abs(lam) < LAMBDA_ZERO:
        return additive_measure(w, names)
    g = lambda_densities(lam, w)
    k = len(w)
    # log of prod(1 + lam * g_i) over members, built incrementally by lowest bit;
    # log1p/expm1 avoid cancellation when lam is tiny
    logs = [math.log1p(lam * gi) for gi in g]
    acc = [0.0] * (1 << k)
    values = [0.0] * (1 << k)
    for mask in range(1, 1 << k):
        low = mask & -mask
        acc[mask] = acc[mask ^ low] + logs[low.bit_length() - 1]
        values[mask] = math.expm1(acc[mask]) / lam
    values[-1] = 1.0 if abs(values[-1] - 1.0) <= BOUNDARY_TOL else values[-1]
    return FuzzyMeasure(k, tuple(values), tuple(names) if names else None)
