"""Instance records consumed by the evaluators.

Construction validates shapes and basic sign constraints only.  Whether the
bound constants really certify the data is re-checked inside every evaluator,
so a file with falsified bounds still loads and is reported, not rejected.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..bounds import Box, Bounds, Ratio
from ..errors import DimMismatch
from ..linalg import as_matrix
from ..maps import PositiveMap


def _same_dim(phi: PositiveMap, *mats):
    for X in mats:
        if X is not None and X.shape[0] != phi.input_dim:
            raise DimMismatch(f"matrix dim {X.shape[0]} does not match map input dim {phi.input_dim}")


def _real_vector(x, name: str, allow_zero: bool = True) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.size < 1 or not np.all(np.isfinite(v)):
        raise ValueError(f"{name} must be a non-empty finite real vector")
    if np.any(v < 0) or (not allow_zero and np.any(v == 0)):
        raise ValueError(f"{name} must be {'nonnegative' if allow_zero else 'strictly positive'}")
    return v


@dataclass(frozen=True, eq=False)
class OperatorInstance:
    A: np.ndarray
    B: Optional[np.ndarray]
    phi: PositiveMap
    bounds: Bounds

    def __post_init__(self):
        object.__setattr__(self, "A", as_matrix(self.A))
        if self.B is not None:
            object.__setattr__(self, "B", as_matrix(self.B))
        _same_dim(self.phi, self.A, self.B)


@dataclass(frozen=True, eq=False)
class DiscreteData:
    a: np.ndarray
    b: np.ndarray
    bounds: Bounds
    w: Optional[np.ndarray] = None

    def __post_init__(self):
        a = _real_vector(self.a, "a")
        b = _real_vector(self.b, "b")
        w = np.ones_like(a) if self.w is None else _real_vector(self.w, "w", allow_zero=False)
        if not (a.size == b.size == w.size):
            raise DimMismatch(f"tuple lengths differ: a={a.size}, b={b.size}, w={w.size}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.a.size


@dataclass(frozen=True, eq=False)
class QuadratureData:
    """Values of ``f`` and ``g`` at quadrature nodes with probability weights ``mu``."""

    f: np.ndarray
    g: np.ndarray
    mu: np.ndarray
    bounds: Ratio

    def __post_init__(self):
        f = _real_vector(self.f, "f")
        g = _real_vector(self.g, "g")
        mu = _real_vector(self.mu, "mu")
        if not (f.size == g.size == mu.size):
            raise DimMismatch("f, g and mu must have equal length")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "mu", mu)


@dataclass(frozen=True, eq=False)
class HilbertInstance:
    T: np.ndarray
    S: np.ndarray
    xi: np.ndarray
    bounds: Box

    def __post_init__(self):
        T, S = as_matrix(self.T), as_matrix(self.S)
        xi = np.asarray(self.xi, dtype=np.complex128)
        if xi.ndim == 1:
            xi = xi.reshape(1, -1)
        if T.shape != S.shape or xi.ndim != 2 or xi.shape[1] != T.shape[0]:
            raise DimMismatch("T, S and the vectors xi must share one dimension")
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "xi", xi)


@dataclass(frozen=True, eq=False)
class GrussLemmaInstance:
    phi: PositiveMap
    A: np.ndarray
    M: complex
    m: complex

    def __post_init__(self):
        object.__setattr__(self, "A", as_matrix(self.A))
        object.__setattr__(self, "M", complex(self.M))
        object.__setattr__(self, "m", complex(self.m))
        _same_dim(self.phi, self.A)


@dataclass(frozen=True, eq=False)
class CSInstance:
    phi: PositiveMap
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "A", as_matrix(self.A))
        object.__setattr__(self, "B", as_matrix(self.B))
        _same_dim(self.phi, self.A, self.B)


@dataclass(frozen=True, eq=False)
class GrussInstance:
    phi: PositiveMap
    A: np.ndarray
    B: np.ndarray
    M1: complex
    m1: complex
    M2: complex
    m2: complex

    def __post_init__(self):
        object.__setattr__(self, "A", as_matrix(self.A))
        object.__setattr__(self, "B", as_matrix(self.B))
        for name in ("M1", "m1", "M2", "m2"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        _same_dim(self.phi, self.A, self.B)


@dataclass(frozen=True, eq=False)
class OimsInstance:
    """Pair with ``m1 <= A <= M1``, ``m2 <= B <= M2`` and ``Phi(I)`` invertible, ``Phi(I) <= I``."""

    A: np.ndarray
    B: np.ndarray
    phi: PositiveMap
    bounds: Box

    def __post_init__(self):
        object.__setattr__(self, "A", as_matrix(self.A))
        object.__setattr__(self, "B", as_matrix(self.B))
        _same_dim(self.phi, self.A, self.B)

    @property
    def gamma(self) -> float:
        return self.bounds.gamma


@dataclass(frozen=True, eq=False)
class VarianceInstance:
    base: OimsInstance
    X: np.ndarray
    m: float
    M: float

    def __post_init__(self):
        object.__setattr__(self, "X", as_matrix(self.X))
        _same_dim(self.base.phi, self.X)
        if not float(self.m) <= float(self.M):
            raise ValueError(f"m={self.m} exceeds M={self.M}")
