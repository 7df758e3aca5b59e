"""Geometric operator mean and the order relations built on it."""
from __future__ import annotations

import numpy as np

from .bounds import Box
from .errors import DimMismatch, HypothesisUnmet, SingularMatrix
from .linalg import (
    DEFAULT_TOL,
    OrderVerdict,
    ToleranceConfig,
    check_hermitian,
    eigvalsh,
    eye,
    herm,
    loewner_leq,
    pd_power,
    sqrt_psd,
)

# switch to the B-leg formula when A is this much worse conditioned than B
_LEG_SWITCH_RATIO = 1e3


def _cond(lam: np.ndarray) -> float:
    return float(lam[-1] / lam[0]) if lam[0] > 0 else np.inf


def _mean_a_leg(A, B, cfg):
    Ah = sqrt_psd(A, cfg)
    Aih = pd_power(A, -0.5, cfg)
    inner = sqrt_psd(herm(Aih @ B @ Aih), cfg)
    return herm(Ah @ inner @ Ah)


def geometric_mean(A, B, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Geometric mean ``A # B = A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}``.

    ``A`` must be positive definite and ``B`` positive semidefinite.  When both
    are definite and ``A`` is far worse conditioned than ``B`` the mirrored
    formula is evaluated instead, which is exact by symmetry of the mean.
    """
    A = check_hermitian(A, cfg)
    B = check_hermitian(B, cfg)
    if A.shape != B.shape:
        raise DimMismatch(f"mean of {A.shape} and {B.shape}")
    la = eigvalsh(A)
    if la[0] <= cfg.abs_tol:
        raise SingularMatrix("left argument of the geometric mean is not positive definite")
    lb = eigvalsh(B)
    if lb[0] > cfg.abs_tol and _cond(la) > _LEG_SWITCH_RATIO * _cond(lb):
        return _mean_a_leg(B, A, cfg)
    return _mean_a_leg(A, B, cfg)


def am_gm_gap(A, B, cfg: ToleranceConfig = DEFAULT_TOL) -> OrderVerdict:
    """Verdict for ``A # B <= (A + B) / 2``."""
    G = geometric_mean(A, B, cfg)
    return loewner_leq(G, herm(0.5 * (np.asarray(A) + np.asarray(B))), cfg)


def certify_box(A, B, box: Box, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    n = np.asarray(A).shape[0]
    I = eye(n)
    return bool(
        loewner_leq(box.m1**2 * I, A, cfg)
        and loewner_leq(A, box.M1**2 * I, cfg)
        and loewner_leq(box.m2**2 * I, B, cfg)
        and loewner_leq(B, box.M2**2 * I, cfg)
    )


def mean_sandwich(A, B, box: Box, cfg: ToleranceConfig = DEFAULT_TOL) -> tuple[OrderVerdict, OrderVerdict]:
    """Scalar sandwich ``m1^2 m2 / M1 <= A # B <= M1^2 M2 / m1`` under a box hypothesis."""
    if not certify_box(A, B, box, cfg):
        raise HypothesisUnmet("box constants do not bound A and B")
    G = geometric_mean(A, B, cfg)
    I = eye(G.shape[0])
    lower = loewner_leq(box.m1**2 * box.m2 / box.M1 * I, G, cfg)
    upper = loewner_leq(G, box.M1**2 * box.M2 / box.m1 * I, cfg)
    return lower, upper
