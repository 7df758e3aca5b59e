"""Random instance generation for every hypothesis class.

Every draw is keyed by ``(seed, index)`` so sweeps are reproducible no matter
how the indices are distributed over workers.  Spectra are sampled in a box and
conjugated by a random unitary; with ``include_endpoints`` both ends of the box
are attained, because that is where the bound constants are sharp.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._rng import complex_gaussian, random_unitary, substream
from .bounds import Box, Ratio
from .catalog import FAMILIES, evaluate
from .catalog.instances import (
    CSInstance,
    DiscreteData,
    GrussInstance,
    GrussLemmaInstance,
    HilbertInstance,
    OimsInstance,
    OperatorInstance,
    QuadratureData,
    VarianceInstance,
)
from .linalg import DEFAULT_TOL, ToleranceConfig, herm, opnorm, sqrt_psd
from .maps import (
    Compression,
    Identity,
    NormalizedTrace,
    PartialTraceLeft,
    Pinching,
    PositiveMap,
    StateMixture,
    VectorState,
    WeightedDiagState,
)


@dataclass(frozen=True)
class GenConfig:
    dim: int
    seed: int
    spectrum_lo: float
    spectrum_hi: float
    include_endpoints: bool = True

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if not self.spectrum_lo <= self.spectrum_hi:
            raise ValueError("spectrum_lo exceeds spectrum_hi")


def _spectrum(rng, n: int, lo: float, hi: float, include_endpoints: bool) -> np.ndarray:
    lam = rng.uniform(lo, hi, size=n)
    if include_endpoints and n >= 2:
        i, j = rng.choice(n, size=2, replace=False)
        lam[i], lam[j] = lo, hi
    return lam


def _conjugate(rng, lam) -> np.ndarray:
    U = random_unitary(rng, len(lam))
    return herm((U * lam) @ U.conj().T)


def pd_with_spectrum(rng, n: int, lo: float, hi: float, include_endpoints: bool = True) -> np.ndarray:
    if lo <= 0:
        raise ValueError("spectrum_lo must be positive")
    return _conjugate(rng, _spectrum(rng, n, lo, hi, include_endpoints))


def random_pd_with_spectrum(cfg: GenConfig, index: int = 0) -> np.ndarray:
    """Hermitian positive definite matrix with spectrum inside ``[spectrum_lo, spectrum_hi]``."""
    rng = substream(cfg.seed, index)
    return pd_with_spectrum(rng, cfg.dim, cfg.spectrum_lo, cfg.spectrum_hi, cfg.include_endpoints)


def ratio_partner(rng, A, m: float, M: float, include_endpoints: bool = True) -> np.ndarray:
    C = pd_with_spectrum(rng, A.shape[0], m * m, M * M, include_endpoints)
    Ah = sqrt_psd(A)
    return herm(Ah @ C @ Ah)


def random_ratio_pair(A, m: float, M: float, seed: int, index: int = 0, include_endpoints: bool = True) -> np.ndarray:
    """``B = A^{1/2} C A^{1/2}`` with the spectrum of ``C`` in ``[m^2, M^2]``, hence ``m^2 A <= B <= M^2 A``."""
    if not 0 < m <= M:
        raise ValueError("need 0 < m <= M")
    return ratio_partner(substream(seed, index), np.asarray(A, dtype=np.complex128), m, M, include_endpoints)


def unit_vector(rng, n: int) -> np.ndarray:
    z = complex_gaussian(rng, n)
    return z / np.linalg.norm(z)


def random_state(dim: int, count: int, seed: int, index: int = 0) -> PositiveMap:
    """Vector state (``count == 1``) or a unital mixture of ``count`` vectors."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = substream(seed, index)
    if count == 1:
        return VectorState(unit_vector(rng, dim))
    X = complex_gaussian(rng, (count, dim))
    return StateMixture(X / np.linalg.norm(X))


def disk_points(rng, n: int, m: complex, M: complex, include_endpoints: bool = True) -> np.ndarray:
    c, r = (M + m) / 2, abs(M - m) / 2
    z = c + r * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
    if include_endpoints and n >= 2:
        i, j = rng.choice(n, size=2, replace=False)
        z[i], z[j] = m, M
    return z


def normal_in_disk(rng, n: int, m: complex, M: complex, include_endpoints: bool = True) -> np.ndarray:
    z = disk_points(rng, n, complex(m), complex(M), include_endpoints)
    U = random_unitary(rng, n)
    return (U * z) @ U.conj().T


def random_normal_in_disk(dim: int, m: complex, M: complex, seed: int, index: int = 0, include_endpoints: bool = True) -> np.ndarray:
    """Normal matrix with spectrum in the closed disk having ``[m, M]`` as a diameter."""
    return normal_in_disk(substream(seed, index), dim, m, M, include_endpoints)


def operator_in_disk(rng, n: int, m: complex, M: complex, normal: bool = False) -> np.ndarray:
    """``(M + m)/2 + K`` with ``||K|| <= |M - m|/2``; non-normal unless ``normal``."""
    if normal:
        return normal_in_disk(rng, n, m, M)
    K = complex_gaussian(rng, (n, n))
    s = 1.0 if rng.uniform() < 0.5 else rng.uniform(0.2, 1.0)
    K *= s * abs(M - m) / 2 / max(opnorm(K), 1e-300)
    return (M + m) / 2 * np.eye(n) + K


# ---------------------------------------------------------------- maps


def _partitions(n: int, rng) -> tuple:
    cuts = sorted(rng.choice(np.arange(1, n), size=rng.integers(0, n), replace=False)) if n > 1 else []
    edges = [0, *cuts, n]
    return tuple(int(b - a) for a, b in zip(edges, edges[1:]))


def _factorizations(n: int):
    return [(a, n // a) for a in range(1, n + 1) if n % a == 0]


MAP_KINDS = ("VectorState", "StateMixture", "WeightedDiagState", "NormalizedTrace", "Compression", "Pinching", "PartialTraceLeft", "Identity")


def random_map(rng, n: int, mode: str = "any", kind: Optional[str] = None) -> PositiveMap:
    """Draw a map on ``M_n``.

    ``mode`` is ``"any"`` (positive, arbitrary scale), ``"unital"`` or
    ``"subunital"`` (``Phi(I)`` invertible and ``<= I``).
    """
    kind = kind or MAP_KINDS[rng.integers(len(MAP_KINDS))]
    if kind == "VectorState":
        return VectorState(unit_vector(rng, n))
    if kind == "StateMixture":
        X = complex_gaussian(rng, (int(rng.integers(1, 4)), n))
        X /= np.linalg.norm(X)
        if mode == "any":
            X *= math.sqrt(rng.uniform(0.2, 3.0))
        elif mode == "subunital":
            X *= math.sqrt(rng.uniform(0.3, 1.0))
        return StateMixture(X)
    if kind == "WeightedDiagState":
        w = rng.uniform(0.05, 1.0, size=n)
        if mode == "any":
            return WeightedDiagState(w * rng.uniform(0.2, 3.0))
        total = 1.0 if mode == "unital" else rng.uniform(0.3, 1.0)
        return WeightedDiagState(w * (total / w.sum()))
    if kind == "NormalizedTrace":
        return NormalizedTrace(n)
    if kind == "Compression":
        r = int(rng.integers(1, n + 1))
        return Compression(random_unitary(rng, n)[:, :r])
    if kind == "Pinching":
        return Pinching(_partitions(n, rng))
    if kind == "PartialTraceLeft":
        facs = _factorizations(n)
        a, b = facs[rng.integers(len(facs))]
        return PartialTraceLeft(a, b)
    if kind == "Identity":
        return Identity(n)
    raise ValueError(f"unknown map kind {kind!r}")


# ---------------------------------------------------------------- bounds


def _random_ratio(rng) -> Ratio:
    m = rng.uniform(0.3, 1.0)
    return Ratio(m, m * rng.uniform(1.2, 4.0))


def _random_box(rng) -> Box:
    m1, m2 = rng.uniform(0.4, 1.2, size=2)
    return Box(m1, m1 * rng.uniform(1.1, 3.0), m2, m2 * rng.uniform(1.1, 3.0))


def _random_complex_pair(rng):
    m = complex(rng.normal(), rng.normal())
    r = rng.uniform(0.2, 2.0)
    return m, m + r * np.exp(2j * np.pi * rng.uniform())


# ---------------------------------------------------------------- instances


def _operator(family, rng, n, bounds, endpoints):
    if family == "KantorovichOp":
        bounds = bounds or _random_ratio(rng)
        m, M = (bounds.m1, bounds.M1) if isinstance(bounds, Box) else (bounds.m, bounds.M)
        A = pd_with_spectrum(rng, n, m * m, M * M, endpoints)
        return OperatorInstance(A, None, random_map(rng, n, "unital"), bounds)
    if family in ("DM1", "CasselsOp", "KlamkinOp"):
        bounds = bounds or _random_ratio(rng)
        lo = rng.uniform(0.2, 1.0)
        A = pd_with_spectrum(rng, n, lo, lo * rng.uniform(1.0, 10.0), endpoints)
        B = ratio_partner(rng, A, bounds.m, bounds.M, endpoints)
        return OperatorInstance(A, B, random_map(rng, n, "any"), bounds)
    bounds = bounds or _random_box(rng)
    A = pd_with_spectrum(rng, n, bounds.m1**2, bounds.M1**2, endpoints)
    B = pd_with_spectrum(rng, n, bounds.m2**2, bounds.M2**2, endpoints)
    mode = "subunital" if family == "GrussOp" else "any"
    return OperatorInstance(A, B, random_map(rng, n, mode), bounds)


def _in_interval(rng, n, lo, hi, endpoints):
    v = rng.uniform(lo, hi, size=n)
    if endpoints and n >= 2:
        i, j = rng.choice(n, size=2, replace=False)
        v[i], v[j] = lo, hi
    return v


def _discrete(family, rng, n, bounds, endpoints):
    if family == "Schweitzer":
        bounds = bounds or _random_ratio(rng)
        a = _in_interval(rng, n, bounds.m, bounds.M, endpoints)
        return DiscreteData(a, 1.0 / a, bounds)
    if family in ("CasselsWeighted", "KlamkinWeighted"):
        bounds = bounds or _random_ratio(rng)
        b = rng.uniform(0.2, 3.0, size=n)
        a = b * _in_interval(rng, n, bounds.m, bounds.M, endpoints)
        return DiscreteData(a, b, bounds, rng.uniform(0.1, 2.0, size=n))
    bounds = bounds or _random_box(rng)
    a = _in_interval(rng, n, bounds.m1, bounds.M1, endpoints)
    b = _in_interval(rng, n, bounds.m2, bounds.M2, endpoints)
    if family == "OimsClassical":
        w = None
    elif family == "GrussDiscrete":
        w = rng.uniform(0.1, 1.0, size=n)
        w *= rng.uniform(0.5, 1.0) / w.sum()
    else:
        w = rng.uniform(0.1, 2.0, size=n)
    return DiscreteData(a, b, bounds, w)


def _integral(rng, n, bounds, endpoints):
    bounds = bounds or _random_ratio(rng)
    mu = rng.dirichlet(np.ones(n))
    mu /= mu.sum()
    g = rng.uniform(0.3, 2.0, size=n)
    f = g * _in_interval(rng, n, bounds.m, bounds.M, endpoints)
    return QuadratureData(f, g, mu, bounds)


def _oims_base(rng, n, bounds, endpoints, vector=False):
    bounds = bounds or _random_box(rng)
    A = pd_with_spectrum(rng, n, bounds.m1, bounds.M1, endpoints)
    B = pd_with_spectrum(rng, n, bounds.m2, bounds.M2, endpoints)
    phi = VectorState(unit_vector(rng, n)) if vector else random_map(rng, n, "subunital")
    return OimsInstance(A, B, phi, bounds)


_LEFT_MULTIPLIER_KINDS = ("PartialTraceLeft", "Identity", "VectorState", "NormalizedTrace", "Compression", "Pinching")


def _unital_left_multiplier(rng, n):
    return random_map(rng, n, "unital", kind=_LEFT_MULTIPLIER_KINDS[rng.integers(len(_LEFT_MULTIPLIER_KINDS))])


def build_instance(family: str, rng, dim: int, bounds=None, include_endpoints: bool = True):
    """Draw one instance of ``family`` of size ``dim`` from ``rng`` (not yet certified)."""
    kind = FAMILIES[family].kind
    n, ep = dim, include_endpoints
    if kind == "operator":
        return _operator(family, rng, n, bounds, ep)
    if kind == "discrete":
        return _discrete(family, rng, n, bounds, ep)
    if kind == "integral":
        return _integral(rng, n, bounds, ep)
    if kind == "hilbert":
        bounds = bounds or _random_box(rng)
        T = pd_with_spectrum(rng, n, bounds.m1, bounds.M1, ep)
        S = pd_with_spectrum(rng, n, bounds.m2, bounds.M2, ep)
        return HilbertInstance(T, S, complex_gaussian(rng, (int(rng.integers(1, 4)), n)), bounds)
    if kind == "gruss_lemma":
        m, M = _random_complex_pair(rng)
        A = operator_in_disk(rng, n, m, M, normal=rng.uniform() < 0.5)
        return GrussLemmaInstance(random_map(rng, n, "unital"), A, M, m)
    if kind == "cs_left":
        return CSInstance(_unital_left_multiplier(rng, n), complex_gaussian(rng, (n, n)), complex_gaussian(rng, (n, n)))
    if kind == "gruss_product":
        m1, M1 = _random_complex_pair(rng)
        m2, M2 = _random_complex_pair(rng)
        normal = rng.uniform() < 0.5
        A = operator_in_disk(rng, n, m1, M1, normal)
        B = operator_in_disk(rng, n, m2, M2, normal)
        return GrussInstance(_unital_left_multiplier(rng, n), A, B, M1, m1, M2, m2)
    if kind == "variance":
        base = _oims_base(rng, n, bounds, ep)
        m = rng.uniform(0.1, 1.0)
        M = m * rng.uniform(1.0, 5.0)
        return VarianceInstance(base, pd_with_spectrum(rng, n, m, M, ep), m, M)
    if kind == "oims":
        return _oims_base(rng, n, bounds, ep, vector=(family == "OimsVector"))
    raise ValueError(f"no generator for family {family!r}")


def default_dim(family: str, rng) -> int:
    kind = FAMILIES[family].kind
    if kind == "discrete":
        return int(rng.integers(1, 11))
    if kind == "integral":
        return int(rng.integers(1, 17))
    return int(rng.integers(2, 9))


def random_instance(
    family: str,
    seed: int,
    index: int = 0,
    dim: Optional[int] = None,
    bounds=None,
    include_endpoints: bool = True,
    cfg: ToleranceConfig = DEFAULT_TOL,
    max_attempts: int = 20,
):
    """Certified random instance of ``family`` keyed by ``(seed, index)``.

    Draws are re-checked by the family's own hypothesis test before they are
    returned; a rejected draw is resampled from the next sub-stream.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    for attempt in range(max_attempts):
        rng = substream(seed, index, attempt)
        n = dim if dim is not None else default_dim(family, rng)
        inst = build_instance(family, rng, n, bounds, include_endpoints)
        if evaluate(family, inst, cfg).hypothesis_ok:
            return inst
    raise RuntimeError(f"could not draw a certified {family} instance in {max_attempts} attempts")


_RATIO_ONLY = {"DM1", "CasselsOp", "KlamkinOp", "Schweitzer", "CasselsWeighted", "KlamkinWeighted", "CasselsIntegral", "KlamkinIntegral"}
_NO_BOUNDS = {"gruss_lemma", "cs_left", "gruss_product"}


def bounds_regime(family: str) -> Optional[str]:
    """Which user bounds a family accepts: ``"ratio"``, ``"box"``, ``"either"`` or ``None``."""
    if family == "KantorovichOp":
        return "either"
    if family in _RATIO_ONLY:
        return "ratio"
    if FAMILIES[family].kind in _NO_BOUNDS:
        return None
    return "box"
