"""Positive linear maps between matrix algebras and their structural checks.

The taxonomy is closed: vector states, state mixtures, weighted diagonal
states, the normalized trace, compressions, pinchings, the normalized partial
trace over the left tensor factor, and the identity.  All of them are
completely positive by construction.  Scalar-valued maps return ``1 x 1``
matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ._rng import complex_gaussian, random_psd, substream
from .errors import DimMismatch, HypothesisUnmet, NotApplicable
from .linalg import (
    DEFAULT_TOL,
    OrderVerdict,
    ToleranceConfig,
    as_matrix,
    eye,
    herm,
    is_psd,
    loewner_leq,
    opnorm,
    sq_mod,
)


class PositiveMap:
    """Common interface: ``apply`` plus an optional subalgebra embedding.

    Maps that declare an embedding ``embed`` of their output algebra into their
    input algebra are candidates for the left-multiplier property
    ``Phi(X embed(Y)) = Phi(X) Y``.
    """

    input_dim: int
    output_dim: int

    def apply(self, T) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, T) -> np.ndarray:
        return self.apply(T)

    def embed(self, Y) -> np.ndarray:
        raise NotApplicable(f"{type(self).__name__} declares no subalgebra embedding")

    def sample_subalgebra(self, rng: np.random.Generator) -> np.ndarray:
        raise NotApplicable(f"{type(self).__name__} declares no subalgebra embedding")

    @property
    def has_embedding(self) -> bool:
        return type(self).embed is not PositiveMap.embed

    def _input(self, T) -> np.ndarray:
        T = as_matrix(T)
        if T.shape[0] != self.input_dim:
            raise DimMismatch(
                f"{type(self).__name__} acts on dim {self.input_dim}, got {T.shape[0]}"
            )
        return T


class _ScalarValued(PositiveMap):
    output_dim = 1

    def embed(self, Y) -> np.ndarray:
        return as_matrix(Y)[0, 0] * eye(self.input_dim)

    def sample_subalgebra(self, rng):
        return complex_gaussian(rng, (1, 1))


def _vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128).reshape(-1)
    if v.size < 1 or not np.all(np.isfinite(v)):
        raise ValueError("vector must be non-empty and finite")
    return v


@dataclass(frozen=True, eq=False)
class VectorState(_ScalarValued):
    """``T -> <T x, x>`` for a unit vector ``x``."""

    x: np.ndarray

    def __post_init__(self):
        v = _vector(self.x)
        if abs(np.linalg.norm(v) - 1.0) > 1e-12:
            raise ValueError(f"vector state needs a unit vector, |x| = {np.linalg.norm(v)!r}")
        object.__setattr__(self, "x", v)

    @property
    def input_dim(self):
        return self.x.size

    def apply(self, T):
        T = self._input(T)
        return np.array([[np.vdot(self.x, T @ self.x)]])


@dataclass(frozen=True, eq=False)
class StateMixture(_ScalarValued):
    """``T -> sum_i <T xi_i, xi_i>``; unital iff ``sum_i |xi_i|^2 = 1``."""

    vectors: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.vectors, dtype=np.complex128)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2 or arr.size == 0 or not np.all(np.isfinite(arr)):
            raise ValueError("state mixture needs a finite (count, dim) array of vectors")
        object.__setattr__(self, "vectors", arr)

    @property
    def input_dim(self):
        return self.vectors.shape[1]

    def apply(self, T):
        T = self._input(T)
        X = self.vectors.T
        return np.array([[np.sum(X.conj() * (T @ X))]])


@dataclass(frozen=True, eq=False)
class WeightedDiagState(_ScalarValued):
    """``T -> sum_i w_i T_ii``, the vector functional at ``x = (sqrt w_i)``."""

    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float).reshape(-1)
        if w.size < 1 or not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise ValueError("weights must be finite and strictly positive")
        object.__setattr__(self, "w", w)

    @property
    def input_dim(self):
        return self.w.size

    def apply(self, T):
        T = self._input(T)
        return np.array([[np.dot(self.w, np.diag(T))]])


@dataclass(frozen=True, eq=False)
class NormalizedTrace(_ScalarValued):
    dim: int

    def __post_init__(self):
        if int(self.dim) < 1:
            raise ValueError("dim must be positive")

    @property
    def input_dim(self):
        return int(self.dim)

    def apply(self, T):
        T = self._input(T)
        return np.array([[np.trace(T) / self.dim]])


@dataclass(frozen=True, eq=False)
class Compression(PositiveMap):
    """``T -> V* T V`` for an isometry ``V`` (columns orthonormal)."""

    V: np.ndarray

    def __post_init__(self):
        V = np.asarray(self.V, dtype=np.complex128)
        if V.ndim != 2 or V.shape[1] < 1 or V.shape[1] > V.shape[0]:
            raise ValueError(f"isometry must be d x r with 1 <= r <= d, got {V.shape}")
        if np.linalg.norm(V.conj().T @ V - np.eye(V.shape[1])) > 1e-10:
            raise ValueError("columns of V are not orthonormal")
        object.__setattr__(self, "V", V)

    @property
    def input_dim(self):
        return self.V.shape[0]

    @property
    def output_dim(self):
        return self.V.shape[1]

    def apply(self, T):
        T = self._input(T)
        return self.V.conj().T @ T @ self.V

    def embed(self, Y):
        return self.V @ as_matrix(Y) @ self.V.conj().T

    def sample_subalgebra(self, rng):
        return complex_gaussian(rng, (self.output_dim, self.output_dim))


@dataclass(frozen=True, eq=False)
class Pinching(PositiveMap):
    """Zero every off-diagonal block of the partition ``blocks``."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if not blocks or any(b < 1 for b in blocks):
            raise ValueError("block sizes must be positive")
        object.__setattr__(self, "blocks", blocks)

    @property
    def input_dim(self):
        return sum(self.blocks)

    @property
    def output_dim(self):
        return self.input_dim

    def _mask(self):
        labels = np.repeat(np.arange(len(self.blocks)), self.blocks)
        return labels[:, None] == labels[None, :]

    def apply(self, T):
        T = self._input(T)
        return np.where(self._mask(), T, 0.0)

    def embed(self, Y):
        Y = as_matrix(Y)
        if Y.shape[0] != self.input_dim:
            raise DimMismatch("subalgebra element has the wrong size")
        return Y

    def sample_subalgebra(self, rng):
        Z = complex_gaussian(rng, (self.input_dim, self.input_dim))
        return np.where(self._mask(), Z, 0.0)


@dataclass(frozen=True, eq=False)
class PartialTraceLeft(PositiveMap):
    """Normalized trace over the left factor of ``M_n (x) M_k``, landing in ``M_k``.

    Unital, and a left multiplier for the embedding ``Y -> I_n (x) Y``.
    """

    n: int
    k: int

    def __post_init__(self):
        if int(self.n) < 1 or int(self.k) < 1:
            raise ValueError("factor dimensions must be positive")

    @property
    def input_dim(self):
        return int(self.n) * int(self.k)

    @property
    def output_dim(self):
        return int(self.k)

    def apply(self, T):
        T = self._input(T)
        n, k = int(self.n), int(self.k)
        return np.einsum("ijil->jl", T.reshape(n, k, n, k)) / n

    def embed(self, Y):
        return np.kron(eye(int(self.n)), as_matrix(Y))

    def sample_subalgebra(self, rng):
        return complex_gaussian(rng, (int(self.k), int(self.k)))


@dataclass(frozen=True, eq=False)
class Identity(PositiveMap):
    dim: int

    @property
    def input_dim(self):
        return int(self.dim)

    @property
    def output_dim(self):
        return int(self.dim)

    def apply(self, T):
        return self._input(T).copy()

    def embed(self, Y):
        return as_matrix(Y)

    def sample_subalgebra(self, rng):
        return complex_gaussian(rng, (int(self.dim), int(self.dim)))


MAP_TYPES = {
    cls.__name__: cls
    for cls in (
        VectorState,
        StateMixture,
        WeightedDiagState,
        NormalizedTrace,
        Compression,
        Pinching,
        PartialTraceLeft,
        Identity,
    )
}


def apply(phi: PositiveMap, T) -> np.ndarray:
    return phi.apply(T)


def image_of_identity(phi: PositiveMap) -> np.ndarray:
    return herm(phi.apply(eye(phi.input_dim)))


def check_unital(phi: PositiveMap, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    resid = opnorm(image_of_identity(phi) - eye(phi.output_dim))
    return resid <= cfg.band(1.0)


def check_subunital(phi: PositiveMap, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    """``Phi(I)`` invertible and ``Phi(I) <= I``."""
    P = image_of_identity(phi)
    return bool(is_psd(P, cfg).margin > cfg.abs_tol and loewner_leq(P, eye(phi.output_dim), cfg))


@dataclass
class SampledCheck:
    ok: bool
    trials: int
    worst: float = 0.0
    counterexample: Optional[dict] = field(default=None)

    def __bool__(self):
        return self.ok


def check_positive_sampled(
    phi: PositiveMap, trials: int = 50, rng_seed: int = 0, cfg: ToleranceConfig = DEFAULT_TOL
) -> SampledCheck:
    """Apply ``phi`` to random PSD matrices (full and deficient rank) and test the images."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = phi.input_dim
    worst = np.inf
    for t in range(trials):
        rng = substream(rng_seed, t)
        P = random_psd(rng, n, rank=int(rng.integers(1, n + 1)))
        verdict = is_psd(herm(phi.apply(P)), cfg)
        worst = min(worst, verdict.margin)
        if not verdict.holds:
            return SampledCheck(False, t + 1, worst, {"trial": t, "input": P, "margin": verdict.margin})
    return SampledCheck(True, trials, worst)


def check_left_multiplier(
    phi: PositiveMap,
    subalgebra_sampler: Optional[Callable[[np.random.Generator], np.ndarray]] = None,
    trials: int = 20,
    rng_seed: int = 0,
    cfg: ToleranceConfig = DEFAULT_TOL,
    tol: Optional[float] = None,
) -> SampledCheck:
    """Sampled test of ``Phi(X embed(Y)) = Phi(X) Y`` for ``Y`` in the output algebra.

    Raises ``NotApplicable`` when the map declares no embedding.
    """
    if not phi.has_embedding:
        raise NotApplicable(f"{type(phi).__name__} declares no subalgebra embedding")
    sampler = subalgebra_sampler or phi.sample_subalgebra
    tol = cfg.rel_tol if tol is None else tol
    n = phi.input_dim
    worst = 0.0
    for t in range(trials):
        rng = substream(rng_seed, t)
        X = complex_gaussian(rng, (n, n))
        Y = as_matrix(sampler(rng))
        lhs = phi.apply(X @ phi.embed(Y))
        rhs = phi.apply(X) @ Y
        scale = max(1.0, opnorm(X) * opnorm(Y))
        resid = float(np.linalg.norm(lhs - rhs)) / scale
        worst = max(worst, resid)
        if resid > tol:
            return SampledCheck(False, t + 1, worst, {"trial": t, "X": X, "Y": Y, "residual": resid})
    return SampledCheck(True, trials, worst)


def check_schwarz(phi: PositiveMap, A, cfg: ToleranceConfig = DEFAULT_TOL) -> OrderVerdict:
    """Verdict for ``|Phi(A)|^2 <= Phi(|A|^2)``; requires a unital map."""
    if not check_unital(phi, cfg):
        raise HypothesisUnmet("Schwarz check needs a unital map")
    A = as_matrix(A)
    PA = phi.apply(A)
    return loewner_leq(sq_mod(PA), herm(phi.apply(A.conj().T @ A)), cfg)
