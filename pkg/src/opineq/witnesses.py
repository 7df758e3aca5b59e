"""Hand-built instances at which a bound is attained.

Each entry is small enough to check by hand; they pin the constants of the
catalog from the other side (a bound that is too loose would not be tight here).
"""
from __future__ import annotations

import math

import numpy as np

from .bounds import Box, Ratio
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
from .maps import VectorState


def _diag(*v):
    return np.diag(np.array(v, dtype=np.complex128))


def equality_witnesses() -> list[tuple[str, object]]:
    balanced = VectorState(np.full(2, 1 / math.sqrt(2)))
    tilted = VectorState(np.array([math.sqrt(2 / 3), math.sqrt(1 / 3)]))
    A, B = _diag(1, 4), _diag(4, 1)
    ab = dict(a=[1.0, 2.0], b=[2.0, 1.0])
    box12 = Box(1, 2, 1, 2)
    proj = _diag(0, 1)
    I2 = np.eye(2)
    return [
        ("KantorovichOp", OperatorInstance(A, None, balanced, Ratio(1, 2))),
        ("DM1", OperatorInstance(A, B, balanced, Ratio(0.5, 2))),
        ("CasselsOp", OperatorInstance(A, B, balanced, Ratio(0.5, 2))),
        ("DM2", OperatorInstance(A, B, balanced, box12)),
        ("PolyaSzegoOp", OperatorInstance(A, B, balanced, box12)),
        ("KlamkinOp", OperatorInstance(I2, _diag(1, 16), tilted, Ratio(1, 4))),
        ("ShishaMondOp", OperatorInstance(I2, _diag(1, 16), tilted, Box(1, 1, 1, 4))),
        ("GrussOp", OperatorInstance(I2, I2, balanced, Box(1, 1, 1, 1))),
        ("DiazMetcalf", DiscreteData(**ab, bounds=box12)),
        ("PolyaSzego", DiscreteData(**ab, bounds=box12)),
        ("GruebRheinboldt", DiscreteData(**ab, bounds=box12)),
        ("CasselsWeighted", DiscreteData(**ab, bounds=Ratio(0.5, 2))),
        ("Schweitzer", DiscreteData([1.0, 2.0], [1.0, 0.5], Ratio(1, 2))),
        ("KlamkinWeighted", DiscreteData([1.0, 1.0], [1.0, 4.0], Ratio(0.25, 1), [2 / 3, 1 / 3])),
        ("ShishaMond", DiscreteData([1.0, 4.0], [1.0, 1.0], Box(1, 4, 1, 1), [2 / 3, 1 / 3])),
        ("CasselsIntegral", QuadratureData([1.0, 2.0], [2.0, 1.0], [0.5, 0.5], Ratio(0.5, 2))),
        ("KlamkinIntegral", QuadratureData([1.0, 1.0], [1.0, 4.0], [2 / 3, 1 / 3], Ratio(0.25, 1))),
        ("HilbertDiazMetcalf", HilbertInstance(_diag(1, 2), _diag(2, 1), I2, box12)),
        ("HilbertPolyaSzego", HilbertInstance(_diag(1, 2), _diag(2, 1), I2, box12)),
        ("GrussLemma", GrussLemmaInstance(balanced, proj, 1, 0)),
        ("CSLeftMultiplier", CSInstance(balanced, proj, proj)),
        ("GrussProduct", GrussInstance(balanced, proj, proj, 1, 0, 1, 0)),
        ("VarianceBound", VarianceInstance(OimsInstance(I2, I2, balanced, Box(1, 1, 1, 1)), _diag(1, 3), 1, 3)),
    ]
