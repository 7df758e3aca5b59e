"""Ozeki-Izumino-Mori-Seo type differences for maps with ``0 < Phi(I) <= I``."""
from __future__ import annotations

import numpy as np

from ..errors import NotApplicable
from ..linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    check_hermitian,
    eye,
    herm,
    inv_pd,
    is_psd,
    loewner_leq,
    pd_power,
    sq_mod,
    sqrt_psd,
)
from ..maps import VectorState, check_subunital
from ..means import geometric_mean
from .instances import OimsInstance, VarianceInstance
from .report import InequalityReport, build_report

OIMS_VARIANTS = ("Phi1", "Phi2", "VectorOOI")


def normalized_map(inst: OimsInstance, cfg: ToleranceConfig = DEFAULT_TOL):
    """``Psi(X) = Phi(A)^{-1/2} Phi(A^{1/2} X A^{1/2}) Phi(A)^{-1/2}``, a unital positive map."""
    phi = inst.phi
    Ah = sqrt_psd(inst.A, cfg)
    Pih = pd_power(herm(phi.apply(inst.A)), -0.5, cfg)

    def psi(X):
        return herm(Pih @ phi.apply(Ah @ X @ Ah) @ Pih)

    return psi


def eval_variance_bound(base: OimsInstance, X, m: float, M: float, cfg: ToleranceConfig = DEFAULT_TOL) -> InequalityReport:
    """``Psi(X^2) - Psi(X)^2 <= (M - m)^2 / 4`` for ``m <= X <= M``."""
    X = check_hermitian(X, cfg)
    n = X.shape[0]
    PA = herm(base.phi.apply(base.A))
    bounded = bool(loewner_leq(m * eye(n), X, cfg) and loewner_leq(X, M * eye(n), cfg))
    invertible = is_psd(PA, cfg).margin > cfg.abs_tol and is_psd(base.A, cfg).margin > cfg.abs_tol
    ok = bounded and invertible
    note = "" if ok else ("m <= X <= M fails" if not bounded else "Phi(A) is not invertible")

    def sides():
        psi = normalized_map(base, cfg)
        PX = psi(X)
        return psi(X @ X) - PX @ PX, (M - m) ** 2 / 4 * eye(base.phi.output_dim)

    return build_report("VarianceBound", ok, sides, cfg, note)


def evaluate_variance(inst: VarianceInstance, cfg: ToleranceConfig = DEFAULT_TOL) -> InequalityReport:
    return eval_variance_bound(inst.base, inst.X, inst.m, inst.M, cfg)


def _oims_hypothesis(inst: OimsInstance, cfg) -> tuple[bool, str]:
    bd, n = inst.bounds, inst.A.shape[0]
    I = eye(n)
    if not check_subunital(inst.phi, cfg):
        return False, "needs Phi(I) invertible with Phi(I) <= I"
    ok = bool(
        loewner_leq(bd.m1 * I, inst.A, cfg)
        and loewner_leq(inst.A, bd.M1 * I, cfg)
        and loewner_leq(bd.m2 * I, inst.B, cfg)
        and loewner_leq(inst.B, bd.M2 * I, cfg)
    )
    return ok, "" if ok else "box constants do not bound A and B"


def _twisted_difference(P, Q, G, cfg):
    """``P^{1/2} Q P^{1/2} - |P^{-1/2} G P^{1/2}|^2``."""
    Ph = sqrt_psd(P, cfg)
    Pih = inv_pd(Ph, cfg)
    return herm(Ph @ Q @ Ph) - sq_mod(Pih @ G @ Ph)


def eval_oims(variant: str, inst: OimsInstance, cfg: ToleranceConfig = DEFAULT_TOL) -> InequalityReport:
    if variant not in OIMS_VARIANTS:
        raise ValueError(f"unknown OIMS variant {variant!r}")
    if variant == "VectorOOI" and not isinstance(inst.phi, VectorState):
        raise NotApplicable("VectorOOI needs a vector state")
    ok, note = _oims_hypothesis(inst, cfg)
    bd = inst.bounds
    spread = (bd.M1 * bd.M2 - bd.m1 * bd.m2) ** 2
    A2, B2 = herm(inst.A @ inst.A), herm(inst.B @ inst.B)
    family = "Oims" + variant if variant != "VectorOOI" else "OimsVector"

    def sides():
        G2 = geometric_mean(A2, B2, cfg)
        if variant == "VectorOOI":
            x = inst.phi.x
            form = lambda Y: float(np.vdot(x, Y @ x).real)  # noqa: E731
            lhs = form(A2) * form(B2) - form(G2) ** 2
            return lhs, spread / (4 * inst.gamma**2)
        phi = inst.phi
        PA2, PB2, G = herm(phi.apply(A2)), herm(phi.apply(B2)), herm(phi.apply(G2))
        I = eye(phi.output_dim)
        if variant == "Phi1":
            return _twisted_difference(PB2, PA2, G, cfg), spread / 4 * (bd.M2 / bd.m2) ** 2 * I
        return _twisted_difference(PA2, PB2, G, cfg), spread / 4 * (bd.M1 / bd.m1) ** 2 * I

    return build_report(family, ok, sides, cfg, note)
