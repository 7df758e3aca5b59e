"""Executable inequality families and the registry that dispatches on family ids."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..linalg import DEFAULT_TOL, ToleranceConfig
from .discrete import (
    DISCRETE_FAMILIES,
    HILBERT_FAMILIES,
    INTEGRAL_FAMILIES,
    eval_discrete_family,
    eval_hilbert_corollary,
    eval_integral_family,
    scalar_via_operator,
)
from .gruss import (
    disk_condition,
    eval_cs_left_multiplier,
    eval_gruss_lemma,
    eval_gruss_product,
    evaluate_cs,
    evaluate_gruss_lemma,
)
from .instances import (
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
from .oims import OIMS_VARIANTS, eval_oims, eval_variance_bound, evaluate_variance, normalized_map
from .operator import OPERATOR_FAMILIES, certify_ratio, eval_operator_family, operator_sides, tighten_bounds
from .report import InequalityReport, Verdict, make_report


@dataclass(frozen=True)
class Family:
    name: str
    kind: str
    evaluate: Callable[..., InequalityReport]


def _hilbert(index: int):
    return lambda inst, cfg: eval_hilbert_corollary(inst, cfg)[index]


def _build_registry() -> dict[str, Family]:
    reg: dict[str, Family] = {}
    for name in OPERATOR_FAMILIES:
        reg[name] = Family(name, "operator", lambda inst, cfg, _n=name: eval_operator_family(_n, inst, cfg))
    for name in DISCRETE_FAMILIES:
        reg[name] = Family(name, "discrete", lambda inst, cfg, _n=name: eval_discrete_family(_n, inst, cfg))
    for name in INTEGRAL_FAMILIES:
        reg[name] = Family(name, "integral", lambda inst, cfg, _n=name: eval_integral_family(_n, inst, cfg))
    for i, name in enumerate(HILBERT_FAMILIES):
        reg[name] = Family(name, "hilbert", _hilbert(i))
    reg["GrussLemma"] = Family("GrussLemma", "gruss_lemma", evaluate_gruss_lemma)
    reg["CSLeftMultiplier"] = Family("CSLeftMultiplier", "cs_left", evaluate_cs)
    reg["GrussProduct"] = Family("GrussProduct", "gruss_product", eval_gruss_product)
    reg["VarianceBound"] = Family("VarianceBound", "variance", evaluate_variance)
    for variant, name in zip(OIMS_VARIANTS, ("OimsPhi1", "OimsPhi2", "OimsVector")):
        reg[name] = Family(name, "oims", lambda inst, cfg, _v=variant: eval_oims(_v, inst, cfg))
    return reg


FAMILIES: dict[str, Family] = _build_registry()


def evaluate(family: str, instance, cfg: ToleranceConfig = DEFAULT_TOL) -> InequalityReport:
    """Evaluate ``instance`` under the registered ``family``."""
    try:
        entry = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    return entry.evaluate(instance, cfg)


__all__ = [
    "FAMILIES",
    "Family",
    "evaluate",
    "InequalityReport",
    "Verdict",
    "make_report",
    "OPERATOR_FAMILIES",
    "DISCRETE_FAMILIES",
    "INTEGRAL_FAMILIES",
    "HILBERT_FAMILIES",
    "OIMS_VARIANTS",
    "tighten_bounds",
    "certify_ratio",
    "operator_sides",
    "eval_operator_family",
    "eval_discrete_family",
    "scalar_via_operator",
    "eval_integral_family",
    "eval_hilbert_corollary",
    "disk_condition",
    "eval_gruss_lemma",
    "eval_cs_left_multiplier",
    "eval_gruss_product",
    "eval_variance_bound",
    "eval_oims",
    "normalized_map",
    "OperatorInstance",
    "DiscreteData",
    "QuadratureData",
    "HilbertInstance",
    "GrussLemmaInstance",
    "CSInstance",
    "GrussInstance",
    "OimsInstance",
    "VarianceInstance",
]
