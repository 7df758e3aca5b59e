"""Bound constants certifying the two hypothesis regimes.

``Ratio(m, M)`` certifies ``m^2 A <= B <= M^2 A``; ``Box(m1, M1, m2, M2)``
certifies ``m1^2 <= A <= M1^2`` and ``m2^2 <= B <= M2^2``.  Degenerate
intervals (``m == M``) are accepted so equality configurations can be expressed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union


def _check_interval(lo: float, hi: float, lo_name: str, hi_name: str):
    for name, v in ((lo_name, lo), (hi_name, hi)):
        if not (isinstance(v, (int, float)) and math.isfinite(v)):
            raise ValueError(f"{name} must be a finite real, got {v!r}")
    if not lo > 0:
        raise ValueError(f"{lo_name} must be positive, got {lo}")
    if lo > hi:
        raise ValueError(f"{lo_name}={lo} exceeds {hi_name}={hi}")


@dataclass(frozen=True)
class Ratio:
    m: float
    M: float

    def __post_init__(self):
        _check_interval(self.m, self.M, "m", "M")


@dataclass(frozen=True)
class Box:
    m1: float
    M1: float
    m2: float
    M2: float

    def __post_init__(self):
        _check_interval(self.m1, self.M1, "m1", "M1")
        _check_interval(self.m2, self.M2, "m2", "M2")

    def to_ratio(self) -> Ratio:
        # m^2 = m2^2/M1^2 <= A^{-1/2} B A^{-1/2} <= M2^2/m1^2 = M^2
        return Ratio(self.m2 / self.M1, self.M2 / self.m1)

    def swapped(self) -> "Box":
        return Box(self.m2, self.M2, self.m1, self.M1)

    @property
    def gamma(self) -> float:
        return max(self.m1 / self.M1, self.m2 / self.M2)

    @classmethod
    def kantorovich(cls, m: float, M: float) -> "Box":
        """Box for the pair ``(A, A^{-1})`` with ``m^2 <= A <= M^2``."""
        return cls(m, M, 1.0 / M, 1.0 / m)


Bounds = Union[Ratio, Box]
