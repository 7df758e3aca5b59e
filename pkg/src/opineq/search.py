"""Hill-climbing search for instances that make a bound nearly tight.

Moves are random perturbations of the matrices, the state vector and the
weights.  A move is kept only if the perturbed instance still satisfies the
family's hypotheses and strictly lowers ``|rel_slack|``; otherwise it is
rejected and a new one is drawn.  The step shrinks after a run of rejections.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from ._rng import complex_gaussian, substream
from .catalog import evaluate
from .catalog.instances import DiscreteData, OperatorInstance
from .catalog.report import InequalityReport
from .errors import NotApplicable, OpIneqError
from .linalg import DEFAULT_TOL, ToleranceConfig, herm, opnorm
from .maps import StateMixture, VectorState, WeightedDiagState


@dataclass(frozen=True)
class SearchResult:
    instance: object
    report: InequalityReport
    objective: float
    initial_objective: float
    accepted: int
    iterations: int

    @property
    def gap(self) -> float:
        return abs(self.report.gap_min)


def _objective(report: InequalityReport) -> float:
    if not report.hypothesis_ok or not math.isfinite(report.rel_slack):
        return math.inf
    return abs(report.rel_slack)


def _nudge_hermitian(rng, X, step):
    n = X.shape[0]
    H = herm(complex_gaussian(rng, (n, n)))
    return herm(X + step * max(opnorm(X), 1e-12) * H / max(opnorm(H), 1e-300))


def _nudge_unit(rng, x, step):
    y = x + step * complex_gaussian(rng, x.shape)
    return y / np.linalg.norm(y)


def _nudge_positive(rng, v, step):
    return v * np.exp(step * rng.standard_normal(v.shape))


def _nudge_map(rng, phi, step):
    if isinstance(phi, VectorState):
        return VectorState(_nudge_unit(rng, phi.x, step))
    if isinstance(phi, StateMixture):
        X = phi.vectors
        Y = X + step * complex_gaussian(rng, X.shape)
        return StateMixture(Y * (np.linalg.norm(X) / np.linalg.norm(Y)))
    if isinstance(phi, WeightedDiagState):
        w = _nudge_positive(rng, phi.w, step)
        return WeightedDiagState(w * (phi.w.sum() / w.sum()))
    return phi


def _propose_operator(rng, inst: OperatorInstance, step):
    choice = rng.integers(3)
    if choice == 0 or (choice == 1 and inst.B is None):
        return replace(inst, A=_nudge_hermitian(rng, inst.A, step))
    if choice == 1:
        return replace(inst, B=_nudge_hermitian(rng, inst.B, step))
    return replace(inst, phi=_nudge_map(rng, inst.phi, step))


def _propose_discrete(rng, family, data: DiscreteData, step):
    choice = rng.integers(3)
    a, b, w = data.a, data.b, data.w
    if choice == 0:
        a = _nudge_positive(rng, a, step)
    elif choice == 1:
        b = _nudge_positive(rng, b, step)
    elif family not in ("OimsClassical", "Schweitzer"):
        w2 = _nudge_positive(rng, w, step)
        w = w2 * (w.sum() / w2.sum())
    if family == "Schweitzer":
        b = 1.0 / a
    return DiscreteData(a, b, data.bounds, w)


def propose(rng, family: str, instance, step: float):
    if isinstance(instance, OperatorInstance):
        return _propose_operator(rng, instance, step)
    if isinstance(instance, DiscreteData):
        return _propose_discrete(rng, family, instance, step)
    raise NotApplicable(f"no search moves for {type(instance).__name__}")


def near_equality_search(
    family: str,
    instance,
    budget: int = 1000,
    step: float = 0.05,
    seed: int = 0,
    cfg: ToleranceConfig = DEFAULT_TOL,
    target: float = 1e-12,
    patience: int = 50,
    min_step: float = 1e-9,
) -> SearchResult:
    """Minimize ``|rel_slack|`` of ``family`` starting from a certified ``instance``."""
    report = evaluate(family, instance, cfg)
    if not report.hypothesis_ok:
        raise ValueError("starting instance does not satisfy the family hypotheses")
    best, best_report = instance, report
    start = best_obj = _objective(report)
    accepted = stale = it = 0
    rng = substream(seed, 0)
    for it in range(1, budget + 1):
        if best_obj <= target:
            it -= 1
            break
        cand = propose(rng, family, best, step)
        try:
            rep = evaluate(family, cand, cfg)
        except OpIneqError:
            rep = None
        obj = _objective(rep) if rep is not None else math.inf
        if obj < best_obj:
            best, best_report, best_obj = cand, rep, obj
            accepted += 1
            stale = 0
        else:
            stale += 1
            if stale >= patience:
                step = max(step / 2, min_step)
                stale = 0
    return SearchResult(best, best_report, best_obj, start, accepted, it)
