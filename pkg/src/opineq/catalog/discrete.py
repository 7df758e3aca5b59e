"""Scalar corollaries: weighted sums, finite quadrature and Hilbert-space vector sums.

Every discrete family can also be evaluated through the operator pipeline with
``A = diag(a^2)``, ``B = diag(b^2)`` and the functional ``T -> <T x, x>`` at
``x = (sqrt w_i)``; :func:`scalar_via_operator` does exactly that and then
rewrites the two operator sides into the shape of the scalar display.
"""
from __future__ import annotations

import math

import numpy as np

from ..bounds import Box, Ratio
from ..errors import DegenerateDenominator, NotApplicable
from ..linalg import DEFAULT_TOL, ToleranceConfig, eye, loewner_leq, sqrt_psd
from ..maps import VectorState, WeightedDiagState
from ..means import geometric_mean
from .instances import DiscreteData, HilbertInstance, OperatorInstance, QuadratureData
from .operator import eval_operator_family
from .report import InequalityReport, build_report, make_report, within

BOX_DISCRETE = ("DiazMetcalf", "PolyaSzego", "ShishaMond", "GrussDiscrete", "GruebRheinboldt", "OimsClassical")
RATIO_DISCRETE = ("Schweitzer", "CasselsWeighted", "KlamkinWeighted")
DISCRETE_FAMILIES = (
    "DiazMetcalf",
    "PolyaSzego",
    "ShishaMond",
    "GrussDiscrete",
    "Schweitzer",
    "CasselsWeighted",
    "KlamkinWeighted",
    "GruebRheinboldt",
    "OimsClassical",
)
INTEGRAL_FAMILIES = ("CasselsIntegral", "KlamkinIntegral")
HILBERT_FAMILIES = ("HilbertDiazMetcalf", "HilbertPolyaSzego")


def _sums(a, b, w):
    Sab = float(np.dot(w, a * b))
    if Sab == 0.0:
        raise DegenerateDenominator("weighted sum of a*b vanishes")
    return float(np.dot(w, a * a)), float(np.dot(w, b * b)), Sab


def _discrete_hypothesis(family: str, data: DiscreteData, cfg) -> tuple[bool, str]:
    bounds = data.bounds
    if family in BOX_DISCRETE:
        if not isinstance(bounds, Box):
            return False, "family needs Box bounds"
        ok = within(data.a, bounds.m1, bounds.M1, cfg) and within(data.b, bounds.m2, bounds.M2, cfg)
        if not ok:
            return False, "entries outside the box"
        if family == "GrussDiscrete" and data.w.sum() > 1.0 + cfg.band(1.0):
            return False, "GrussDiscrete needs sum(w) <= 1"
        return True, ""
    if not isinstance(bounds, Ratio):
        return False, "family needs Ratio bounds"
    if family == "Schweitzer":
        ok = within(data.a, bounds.m, bounds.M, cfg)
        return ok, "" if ok else "entries of a outside [m, M]"
    if np.any(data.b <= 0):
        return False, "b must be strictly positive"
    ok = within(data.a / data.b, bounds.m, bounds.M, cfg)
    return ok, "" if ok else "ratios a/b outside [m, M]"


def _discrete_sides(family: str, data: DiscreteData):
    a, b, w, bd = data.a, data.b, data.w, data.bounds
    if family == "Schweitzer":
        m, M = bd.m, bd.M
        lhs = float(np.mean(a * a)) * float(np.mean(1.0 / (a * a)))
        return lhs, (M * M + m * m) ** 2 / (4 * M * M * m * m)
    if family == "OimsClassical":
        # unweighted, as the classical statement is
        n = a.size
        lhs = float(np.dot(a, a) * np.dot(b, b) - np.dot(a, b) ** 2)
        return lhs, n * n / 3.0 * (bd.M1 * bd.M2 - bd.m1 * bd.m2) ** 2
    Sa, Sb, Sab = _sums(a, b, w)
    if family in RATIO_DISCRETE:
        m, M = bd.m, bd.M
        if family == "CasselsWeighted":
            return Sa * Sb / Sab**2, (M + m) ** 2 / (4 * m * M)
        return Sa * Sb - Sab**2, (math.sqrt(M) - math.sqrt(m)) ** 2 / (M * m) * Sab * Sa
    m1, M1, m2, M2 = bd.m1, bd.M1, bd.m2, bd.M2
    if family == "DiazMetcalf":
        return Sb + (m2 * M2) / (m1 * M1) * Sa, (M2 / m1 + m2 / M1) * Sab
    if family == "PolyaSzego":
        r = math.sqrt((M1 * M2) / (m1 * m2))
        return Sa * Sb / Sab**2, 0.25 * (r + 1.0 / r) ** 2
    if family == "GruebRheinboldt":
        P, p = M1 * M2, m1 * m2
        return Sa * Sb / Sab**2, (P + p) ** 2 / (4 * p * P)
    if family == "ShishaMond":
        return Sa / Sab - Sab / Sb, (math.sqrt(M1 / m2) - math.sqrt(m1 / M2)) ** 2
    if family == "GrussDiscrete":
        P, p = math.sqrt(M1 * M2), math.sqrt(m1 * m2)
        return math.sqrt(Sa * Sb) - Sab, P * (P - p) ** 2 / (2 * p) * min(M1 / m1, M2 / m2)
    raise ValueError(f"unknown discrete family {family!r}")


def eval_discrete_family(family: str, data: DiscreteData, cfg: ToleranceConfig = DEFAULT_TOL) -> InequalityReport:
    if family not in DISCRETE_FAMILIES:
        raise ValueError(f"unknown discrete family {family!r}")
    ok, note = _discrete_hypothesis(family, data, cfg)
    if not ok and note.startswith("family needs"):
        return make_report(family, False, None, None, cfg, note)
    return build_report(family, ok, lambda: _discrete_sides(family, data), cfg, note)


def _diag(v) -> np.ndarray:
    return np.diag(np.asarray(v, dtype=np.complex128))


def _operator_route(family: str, data: DiscreteData):
    """``(operator family, instance, rewrite)`` realising a discrete family.

    ``rewrite(lhs, rhs, PG)`` maps the 1x1 operator sides to the scalar
    display; ``PG`` is ``Phi(A # B)``.
    """
    a, b, w, bd = data.a, data.b, data.w, data.bounds
    A, B = _diag(a * a), _diag(b * b)
    phi = WeightedDiagState(w)
    same = lambda lhs, rhs, PG: (lhs, rhs)  # noqa: E731
    squared_ratio = lambda lhs, rhs, PG: ((lhs / PG) ** 2, (rhs / PG) ** 2)  # noqa: E731
    if family == "DiazMetcalf":
        return "DM2", OperatorInstance(A, B, phi, bd), same
    if family in ("PolyaSzego", "GruebRheinboldt"):
        return "PolyaSzegoOp", OperatorInstance(A, B, phi, bd), squared_ratio
    if family == "ShishaMond":
        # the scalar display is the operator one with the roles of a and b exchanged
        return "ShishaMondOp", OperatorInstance(B, A, phi, bd.swapped()), same
    if family == "GrussDiscrete":
        return "GrussOp", OperatorInstance(A, B, phi, bd), same
    if family == "Schweitzer":
        n = a.size
        state = VectorState(np.full(n, 1.0 / math.sqrt(n)))
        return "KantorovichOp", OperatorInstance(A, None, state, bd), lambda lhs, rhs, PG: (lhs**2, rhs**2)
    if family not in RATIO_DISCRETE:
        raise NotApplicable(f"{family} has no operator route")
    # ratio constraint m <= a/b <= M means (1/M)^2 A <= B <= (1/m)^2 A
    inv = Ratio(1.0 / bd.M, 1.0 / bd.m)
    if family == "CasselsWeighted":
        return "CasselsOp", OperatorInstance(A, B, phi, inv), squared_ratio
    if family == "KlamkinWeighted":
        Sa = float(np.dot(w, a * a))
        return "KlamkinOp", OperatorInstance(A, B, phi, inv), lambda lhs, rhs, PG: (lhs * PG * Sa, rhs * PG * Sa)
    raise ValueError(f"unknown discrete family {family!r}")


def scalar_via_operator(family: str, data: DiscreteData, cfg: ToleranceConfig = DEFAULT_TOL) -> InequalityReport:
    """Evaluate a discrete family through diagonal operators and a vector functional."""
    if family not in DISCRETE_FAMILIES:
        raise ValueError(f"unknown discrete family {family!r}")
    ok, note = _discrete_hypothesis(family, data, cfg)
    if not ok and note.startswith("family needs"):
        return make_report(family, False, None, None, cfg, note)
    op_family, inst, rewrite = _operator_route(family, data)
    op = eval_operator_family(op_family, inst, cfg)
    if op.lhs is None:
        return make_report(family, False, None, None, cfg, op.note)

    def sides():
        PG = 1.0
        if op_family != "KantorovichOp":
            PG = float(inst.phi.apply(geometric_mean(inst.A, inst.B, cfg))[0, 0].real)
        return rewrite(float(op.lhs[0, 0].real), float(op.rhs[0, 0].real), PG)

    return build_report(family, op.hypothesis_ok, sides, cfg, f"via {op_family}")


def _quadrature_hypothesis(q: QuadratureData, cfg) -> tuple[bool, str]:
    if not isinstance(q.bounds, Ratio):
        return False, "integral families need Ratio bounds"
    if abs(q.mu.sum() - 1.0) > 1e-12:
        return False, "weights must sum to 1"
    m, M = q.bounds.m, q.bounds.M
    slack = cfg.band(1.0) * np.maximum(1.0, np.abs(q.g))
    ok = bool(np.all(m * q.g <= q.f + slack) and np.all(q.f <= M * q.g + slack))
    return ok, "" if ok else "m g <= f <= M g fails"


def eval_integral_family(family: str, samples: QuadratureData, cfg: ToleranceConfig = DEFAULT_TOL) -> InequalityReport:
    if family not in INTEGRAL_FAMILIES:
        raise ValueError(f"unknown integral family {family!r}")
    ok, note = _quadrature_hypothesis(samples, cfg)
    if not isinstance(samples.bounds, Ratio):
        return make_report(family, False, None, None, cfg, note)
    f, g, mu = samples.f, samples.g, samples.mu
    m, M = samples.bounds.m, samples.bounds.M

    def sides():
        If2, Ig2, Ifg = float(mu @ (f * f)), float(mu @ (g * g)), float(mu @ (f * g))
        if family == "CasselsIntegral":
            return If2 * Ig2, (M + m) ** 2 / (4 * M * m) * Ifg**2
        return If2 * Ig2 - Ifg**2, (math.sqrt(M) - math.sqrt(m)) ** 2 / (M * m) * Ifg * If2

    return build_report(family, ok, sides, cfg, note)


def _hilbert_hypothesis(inst: HilbertInstance, cfg) -> bool:
    bd, n = inst.bounds, inst.T.shape[0]
    I = eye(n)
    return bool(
        loewner_leq(bd.m1 * I, inst.T, cfg)
        and loewner_leq(inst.T, bd.M1 * I, cfg)
        and loewner_leq(bd.m2 * I, inst.S, cfg)
        and loewner_leq(inst.S, bd.M2 * I, cfg)
    )


def eval_hilbert_corollary(inst: HilbertInstance, cfg: ToleranceConfig = DEFAULT_TOL) -> tuple[InequalityReport, InequalityReport]:
    """Both vector-sum inequalities for ``m1 <= T <= M1``, ``m2 <= S <= M2``.

    Sums run over the rows of ``inst.xi``; the mean term uses ``(T^2 # S^2)^{1/2}``.
    """
    if not isinstance(inst.bounds, Box):
        bad = make_report("HilbertDiazMetcalf", False, None, None, cfg, "needs Box bounds")
        return bad, make_report("HilbertPolyaSzego", False, None, None, cfg, "needs Box bounds")
    ok = _hilbert_hypothesis(inst, cfg)
    bd = inst.bounds
    m1, M1, m2, M2 = bd.m1, bd.M1, bd.m2, bd.M2

    def norms():
        X = inst.xi.T
        T, S = inst.T, inst.S
        R = sqrt_psd(geometric_mean(T @ T, S @ S, cfg), cfg)
        sq = lambda Y: float(np.sum(np.abs(Y @ X) ** 2))  # noqa: E731
        return sq(T), sq(S), sq(R)

    def first():
        sT, sS, sR = norms()
        return (M2 * m2) / (M1 * m1) * sT + sS, (M2 / m1 + m2 / M1) * sR

    def second():
        sT, sS, sR = norms()
        r = math.sqrt((M1 * M2) / (m1 * m2))
        return math.sqrt(sT * sS), 0.5 * (r + 1.0 / r) * sR

    note = "" if ok else "operator bounds on T or S fail"
    return (
        build_report("HilbertDiazMetcalf", ok, first, cfg, note),
        build_report("HilbertPolyaSzego", ok, second, cfg, note),
    )
