"""Exact degree thresholds shared by the detectors and the reducers.

The conflict bound ``sqrt((2k - r + 4)(r - 1) + 1/4) + 1/2`` is irrational in
general; it is compared with integers by squaring, so no float is involved
in any decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError


@dataclass(frozen=True)
class SqrtBound:
    """The number ``sqrt(radicand) + 1/2`` for ``radicand = (2k-r+4)(r-1) + 1/4``."""

    k: int
    r: int

    @property
    def radicand(self) -> Fraction:
        return Fraction((2 * self.k - self.r + 4) * (self.r - 1)) + Fraction(1, 4)

    def _four_radicand(self) -> int:
        return 4 * (2 * self.k - self.r + 4) * (self.r - 1) + 1

    def exceeded_by(self, d: int) -> bool:
        """``d > bound``, decided as ``(2d - 1)^2 > 4 * radicand``."""
        return 2 * d - 1 > 0 and (2 * d - 1) ** 2 > self._four_radicand()

    def at_least(self, d: int) -> bool:
        """``d <= bound``."""
        return not self.exceeded_by(d)

    def largest_below(self) -> int:
        """Largest integer ``d`` with ``d <= bound``."""
        s = math.isqrt(self._four_radicand())
        # 2d - 1 <= sqrt(4R)  <=>  2d - 1 <= floor(sqrt(4R))
        return (s + 1) // 2

    def __float__(self) -> float:
        return math.sqrt(self.radicand) + 0.5

    def __str__(self) -> str:
        return f"sqrt({self.radicand})+1/2"


def conflict_bound(k: int, r: int) -> SqrtBound:
    """Largest degree of a vertex that can conflict with a degree-``r`` neighbour."""
    if not 1 <= r <= 6:
        raise ParameterError(f"r must lie in 1..6, got {r}")
    if k < r:
        raise ParameterError(f"k must be at least r, got k={k}, r={r}")
    return SqrtBound(k, r)


def conflict_possible(d_u: int, r: int, k: int) -> bool:
    """False when a vertex of degree ``d_u`` can never conflict with a degree-``r`` neighbour."""
    return conflict_bound(k, r).at_least(d_u)


def low_degree_threshold(k: int, r: int) -> Fraction:
    """``(2k + 6 - 4r) / 3``, the degree cap on the centre of a C1 pattern."""
    return Fraction(2 * k + 6 - 4 * r, 3)
