import math

import numpy as np
import pytest

from opineq.bounds import Ratio
from opineq.catalog import OperatorInstance, evaluate
from opineq.generators import random_instance
from opineq.maps import VectorState
from opineq.search import near_equality_search
from opineq.witnesses import equality_witnesses


def test_witness_is_returned_unchanged():
    fam, inst = equality_witnesses()[0]
    res = near_equality_search(fam, inst, budget=100, seed=0)
    assert res.instance is inst and res.objective <= 1e-10 and res.iterations == 0


def test_zero_budget_returns_start():
    inst = random_instance("CasselsOp", 3, 0)
    res = near_equality_search("CasselsOp", inst, budget=0)
    assert res.instance is inst and res.objective == res.initial_objective


@pytest.mark.parametrize("family", ["CasselsOp", "DM2", "CasselsWeighted", "ShishaMond", "GrussDiscrete"])
def test_search_never_worsens(family):
    inst = random_instance(family, 9, 0)
    res = near_equality_search(family, inst, budget=300, seed=1)
    assert res.objective <= res.initial_objective
    rep = evaluate(family, res.instance)
    assert rep.hypothesis_ok and abs(rep.rel_slack) == res.objective


def test_search_is_deterministic():
    inst = random_instance("DM1", 4, 0)
    a = near_equality_search("DM1", inst, budget=200, seed=3)
    b = near_equality_search("DM1", inst, budget=200, seed=3)
    assert a.objective == b.objective and np.array_equal(a.instance.A, b.instance.A)


def test_kantorovich_search_approaches_equality():
    x = np.array([0.8, 0.6])
    inst = OperatorInstance(np.diag([1.0, 3.0]), None, VectorState(x), Ratio(1, 2))
    res = near_equality_search("KantorovichOp", inst, budget=5000, step=0.1, seed=1)
    assert res.initial_objective > 0.05
    assert res.objective <= 1e-6
    lam = np.linalg.eigvalsh(res.instance.A)
    assert lam == pytest.approx([1.0, 4.0], abs=1e-3)


def test_rejects_uncertified_start():
    inst = OperatorInstance(np.diag([1.0, 9.0]), None, VectorState([1.0, 0.0]), Ratio(1, 2))
    with pytest.raises(ValueError):
        near_equality_search("KantorovichOp", inst)


def test_search_objective_is_finite():
    res = near_equality_search("Schweitzer", random_instance("Schweitzer", 2, 0, dim=4), budget=200)
    assert math.isfinite(res.objective)
    assert np.allclose(res.instance.b, 1 / res.instance.a)
