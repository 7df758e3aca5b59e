"""Reverse Cauchy-Schwarz operator inequalities for a positive map and a pair ``A, B``.

Ratio regime: ``m^2 A <= B <= M^2 A``.  Box regime: ``m1^2 <= A <= M1^2``,
``m2^2 <= B <= M2^2``.
"""
from __future__ import annotations

import math


from ..bounds import Box, Ratio
from ..errors import SingularMatrix
from ..linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    eigvalsh,
    eye,
    herm,
    inv_pd,
    is_psd,
    loewner_leq,
    pd_power,
    sqrt_psd,
)
from ..maps import PositiveMap, check_subunital, check_unital
from ..means import certify_box, geometric_mean
from .instances import OperatorInstance
from .report import InequalityReport, build_report, make_report

RATIO_FAMILIES = ("DM1", "CasselsOp", "KlamkinOp")
BOX_FAMILIES = ("DM2", "PolyaSzegoOp", "ShishaMondOp", "GrussOp")
OPERATOR_FAMILIES = ("DM1", "CasselsOp", "KlamkinOp", "KantorovichOp", "DM2", "PolyaSzegoOp", "ShishaMondOp", "GrussOp")


def tighten_bounds(A, B, cfg: ToleranceConfig = DEFAULT_TOL) -> Ratio:
    """Tightest ``Ratio`` the pair admits: extreme eigenvalues of ``A^{-1/2} B A^{-1/2}``."""
    Aih = pd_power(A, -0.5, cfg)
    lam = eigvalsh(Aih @ B @ Aih)
    lo, hi = math.sqrt(max(lam[0], 0.0)), math.sqrt(max(lam[-1], 0.0))
    if lo <= 0:
        raise SingularMatrix("B is not positive definite")
    return Ratio(lo, max(lo, hi))


def _is_pd(X, cfg) -> bool:
    return is_psd(X, cfg).margin > cfg.abs_tol


def certify_ratio(A, B, ratio: Ratio, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    return bool(
        _is_pd(A, cfg)
        and loewner_leq(ratio.m**2 * A, B, cfg)
        and loewner_leq(B, ratio.M**2 * A, cfg)
    )


def kantorovich_constants(bounds) -> tuple[float, float]:
    """``(m, M)`` with ``m^2 <= A <= M^2``, read from a Ratio or from a Box's first pair."""
    if isinstance(bounds, Box):
        return bounds.m1, bounds.M1
    return bounds.m, bounds.M


def _hypothesis(family: str, inst: OperatorInstance, cfg) -> tuple[bool, str]:
    A, B, bounds, phi = inst.A, inst.B, inst.bounds, inst.phi
    if family == "KantorovichOp":
        m, M = kantorovich_constants(bounds)
        n = A.shape[0]
        if not check_unital(phi, cfg):
            return False, "map is not unital"
        ok = bool(loewner_leq(m * m * eye(n), A, cfg) and loewner_leq(A, M * M * eye(n), cfg))
        return ok, "" if ok else "spectrum of A outside [m^2, M^2]"
    if B is None:
        return False, "B is missing"
    if family in RATIO_FAMILIES:
        if not isinstance(bounds, Ratio):
            return False, "family needs Ratio bounds"
        ok = certify_ratio(A, B, bounds, cfg)
        return ok, "" if ok else "m^2 A <= B <= M^2 A fails"
    if not isinstance(bounds, Box):
        return False, "family needs Box bounds"
    if not certify_box(A, B, bounds, cfg):
        return False, "box constants do not bound A and B"
    if family == "GrussOp" and not check_subunital(phi, cfg):
        return False, "GrussOp needs Phi(I) invertible with Phi(I) <= I"
    return True, ""


def _klamkin_lhs(PA, PB, PG, cfg):
    Gh = sqrt_psd(PG, cfg)
    Gih = pd_power(PG, -0.5, cfg)
    return herm(Gih @ PB @ Gih - Gh @ inv_pd(PA, cfg) @ Gh)


def operator_sides(family: str, A, B, phi: PositiveMap, bounds, cfg: ToleranceConfig = DEFAULT_TOL):
    """Both sides of ``family`` on ``(A, B, phi)`` as matrices in the output algebra."""
    ap = lambda X: herm(phi.apply(X))  # noqa: E731
    I = eye(phi.output_dim)
    if family == "KantorovichOp":
        m, M = kantorovich_constants(bounds)
        lhs = geometric_mean(ap(A), ap(inv_pd(A, cfg)), cfg)
        return lhs, (M * M + m * m) / (2 * M * m) * I

    PA, PB = ap(A), ap(B)
    PG = ap(geometric_mean(A, B, cfg))
    if family in RATIO_FAMILIES:
        m, M = bounds.m, bounds.M
        if family == "DM1":
            return M * m * PA + PB, (M + m) * PG
        if family == "CasselsOp":
            return geometric_mean(PA, PB, cfg), (M + m) / (2 * math.sqrt(M * m)) * PG
        return _klamkin_lhs(PA, PB, PG, cfg), (math.sqrt(M) - math.sqrt(m)) ** 2 * I

    m1, M1, m2, M2 = bounds.m1, bounds.M1, bounds.m2, bounds.M2
    if family == "DM2":
        return (M2 * m2) / (M1 * m1) * PA + PB, (M2 / m1 + m2 / M1) * PG
    if family == "PolyaSzegoOp":
        r = math.sqrt((M1 * M2) / (m1 * m2))
        return geometric_mean(PA, PB, cfg), 0.5 * (r + 1.0 / r) * PG
    if family == "ShishaMondOp":
        return _klamkin_lhs(PA, PB, PG, cfg), (math.sqrt(M2 / m1) - math.sqrt(m2 / M1)) ** 2 * I
    if family == "GrussOp":
        P, p = math.sqrt(M1 * M2), math.sqrt(m1 * m2)
        const = P * (P - p) ** 2 / (2 * p) * min(M1 / m1, M2 / m2)
        return geometric_mean(PA, PB, cfg) - PG, const * I
    raise ValueError(f"unknown operator family {family!r}")


def eval_operator_family(family: str, inst: OperatorInstance, cfg: ToleranceConfig = DEFAULT_TOL) -> InequalityReport:
    if family not in OPERATOR_FAMILIES:
        raise ValueError(f"unknown operator family {family!r}")
    ok, note = _hypothesis(family, inst, cfg)
    mismatched = (
        (family in RATIO_FAMILIES and not isinstance(inst.bounds, Ratio))
        or (family in BOX_FAMILIES and not isinstance(inst.bounds, Box))
        or (family != "KantorovichOp" and inst.B is None)
    )
    if mismatched:
        return make_report(family, False, None, None, cfg, note)
    return build_report(
        family, ok, lambda: operator_sides(family, inst.A, inst.B, inst.phi, inst.bounds, cfg), cfg, note
    )
