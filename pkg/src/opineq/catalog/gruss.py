"""Grüss-type bounds for unital maps and unital left multipliers.

The disk hypothesis ``Re((M - A)^* (A - m)) >= 0`` with complex ``m, M`` says
exactly that ``A - (M + m)/2`` has operator norm at most ``|M - m| / 2``.
"""
from __future__ import annotations

from ..errors import NotApplicable
from ..linalg import (
    DEFAULT_TOL,
    OrderVerdict,
    ToleranceConfig,
    abs_op,
    as_matrix,
    eye,
    herm,
    lambda_min,
    opnorm,
    sq_mod,
)
from ..maps import PositiveMap, check_left_multiplier, check_unital
from .instances import CSInstance, GrussInstance, GrussLemmaInstance
from .report import InequalityReport, build_report

# sampled left-multiplier trials performed inside each evaluation
_LM_TRIALS = 3


def disk_condition(A, M: complex, m: complex, cfg: ToleranceConfig = DEFAULT_TOL) -> OrderVerdict:
    """Verdict for ``Re((M - A)^* (A - m)) >= 0``."""
    A = as_matrix(A)
    I = eye(A.shape[0])
    left, right = M * I - A, A - m * I
    H = herm(left.conj().T @ right)
    margin = lambda_min(H)
    scale = opnorm(left) * opnorm(right)
    return OrderVerdict(margin >= -cfg.band(scale), margin, scale)


def _variance(phi: PositiveMap, A):
    """``Phi(|A|^2) - |Phi(A)|^2``."""
    return herm(phi.apply(A.conj().T @ A)) - sq_mod(phi.apply(A))


def _covariance(phi: PositiveMap, A, B):
    """``Phi(A^* B) - Phi(A)^* Phi(B)``."""
    return phi.apply(A.conj().T @ B) - phi.apply(A).conj().T @ phi.apply(B)


def _left_multiplier_ok(phi: PositiveMap, cfg) -> bool:
    if not phi.has_embedding:
        raise NotApplicable(f"{type(phi).__name__} declares no subalgebra embedding")
    return bool(check_left_multiplier(phi, trials=_LM_TRIALS, rng_seed=0, cfg=cfg))


def eval_gruss_lemma(phi: PositiveMap, A, M: complex, m: complex, cfg: ToleranceConfig = DEFAULT_TOL) -> InequalityReport:
    """``Phi(|A|^2) - |Phi(A)|^2 <= |M - m|^2 / 4`` for a unital ``Phi``."""
    A = as_matrix(A)
    unital = check_unital(phi, cfg)
    disk = disk_condition(A, M, m, cfg).holds
    ok = unital and disk
    note = "" if ok else ("map is not unital" if not unital else "disk condition fails")
    rhs = 0.25 * abs(M - m) ** 2 * eye(phi.output_dim)
    return build_report("GrussLemma", ok, lambda: (_variance(phi, A), rhs), cfg, note)


def eval_cs_left_multiplier(phi: PositiveMap, A, B, cfg: ToleranceConfig = DEFAULT_TOL) -> InequalityReport:
    """``|Phi(A^*B) - Phi(A)^*Phi(B)|^2 <= ||Phi(|A|^2) - |Phi(A)|^2|| (Phi(|B|^2) - |Phi(B)|^2)``."""
    A, B = as_matrix(A), as_matrix(B)
    ok = _left_multiplier_ok(phi, cfg) and check_unital(phi, cfg)
    note = "" if ok else "map is not a unital left multiplier"

    def sides():
        C = _covariance(phi, A, B)
        return sq_mod(C), opnorm(_variance(phi, A)) * _variance(phi, B)

    return build_report("CSLeftMultiplier", ok, sides, cfg, note)


def eval_gruss_product(inst: GrussInstance, cfg: ToleranceConfig = DEFAULT_TOL) -> InequalityReport:
    """``|Phi(A^*B) - Phi(A)^*Phi(B)| <= |M1 - m1| |M2 - m2| / 4`` for a unital left multiplier."""
    phi = inst.phi
    structural = _left_multiplier_ok(phi, cfg) and check_unital(phi, cfg)
    disks = disk_condition(inst.A, inst.M1, inst.m1, cfg).holds and disk_condition(inst.B, inst.M2, inst.m2, cfg).holds
    ok = structural and disks
    note = "" if ok else ("map is not a unital left multiplier" if not structural else "disk condition fails")
    rhs = 0.25 * abs(inst.M1 - inst.m1) * abs(inst.M2 - inst.m2) * eye(phi.output_dim)
    return build_report("GrussProduct", ok, lambda: (abs_op(_covariance(phi, inst.A, inst.B)), rhs), cfg, note)


def evaluate_gruss_lemma(inst: GrussLemmaInstance, cfg: ToleranceConfig = DEFAULT_TOL) -> InequalityReport:
    return eval_gruss_lemma(inst.phi, inst.A, inst.M, inst.m, cfg)


def evaluate_cs(inst: CSInstance, cfg: ToleranceConfig = DEFAULT_TOL) -> InequalityReport:
    return eval_cs_left_multiplier(inst.phi, inst.A, inst.B, cfg)

