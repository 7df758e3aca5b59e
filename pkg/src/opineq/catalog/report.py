from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import OpIneqError
from ..linalg import DEFAULT_TOL, ToleranceConfig, as_matrix, herm, lambda_min, opnorm

EQUALITY_REL_TOL = 1e-9


class Verdict(str, enum.Enum):
    HOLDS = "Holds"
    HOLDS_AT_EQUALITY = "HoldsAtEquality"
    VIOLATED = "Violated"
    HYPOTHESIS_UNMET = "HypothesisUnmet"

    def __str__(self):
        return self.value


@dataclass(frozen=True, eq=False)
class InequalityReport:
    """Outcome of evaluating one inequality on one instance.

    ``gap_min`` is the smallest eigenvalue of ``rhs - lhs``; it is NaN when the
    sides could not be formed because the hypothesis failed.
    """

    family: str
    hypothesis_ok: bool
    lhs: Optional[np.ndarray]
    rhs: Optional[np.ndarray]
    gap_min: float
    rel_slack: float
    verdict: Verdict
    scale: float = 0.0
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict in (Verdict.HOLDS, Verdict.HOLDS_AT_EQUALITY)


def make_report(
    family: str,
    hypothesis_ok: bool,
    lhs,
    rhs,
    cfg: ToleranceConfig = DEFAULT_TOL,
    note: str = "",
) -> InequalityReport:
    if lhs is None or rhs is None:
        return InequalityReport(
            family, bool(hypothesis_ok), None, None, math.nan, math.nan,
            Verdict.HYPOTHESIS_UNMET if not hypothesis_ok else Verdict.VIOLATED, 0.0, note,
        )
    lhs = herm(as_matrix(lhs))
    rhs = herm(as_matrix(rhs))
    gap = lambda_min(rhs - lhs)
    scale = max(opnorm(lhs), opnorm(rhs))
    rel_slack = gap / max(1.0, opnorm(rhs))
    if not hypothesis_ok:
        verdict = Verdict.HYPOTHESIS_UNMET
    elif gap < -cfg.band(scale):
        verdict = Verdict.VIOLATED
    elif abs(gap) <= EQUALITY_REL_TOL * max(1.0, scale):
        verdict = Verdict.HOLDS_AT_EQUALITY
    else:
        verdict = Verdict.HOLDS
    return InequalityReport(family, bool(hypothesis_ok), lhs, rhs, gap, rel_slack, verdict, scale, note)


def build_report(
    family: str,
    hypothesis_ok: bool,
    sides: Callable[[], tuple],
    cfg: ToleranceConfig = DEFAULT_TOL,
    note: str = "",
) -> InequalityReport:
    """Form both sides and grade them.

    When the hypothesis already failed, a numerical failure while forming the
    sides is absorbed into a ``HypothesisUnmet`` report.
    """
    try:
        lhs, rhs = sides()
    except OpIneqError as exc:
        if hypothesis_ok:
            raise
        lhs = rhs = None
        note = note or f"sides not formed: {exc}"
    return make_report(family, hypothesis_ok, lhs, rhs, cfg, note)


def within(values, lo: float, hi: float, cfg: ToleranceConfig) -> bool:
    """Every entry of ``values`` lies in ``[lo, hi]`` up to the tolerance band."""
    v = np.asarray(values, dtype=float)
    return bool(np.all(v >= lo - cfg.band(abs(lo))) and np.all(v <= hi + cfg.band(abs(hi))))
