from dataclasses import dataclass

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_matrix, rel_err, rng_for, seeds
from opineq._rng import random_unitary
from opineq.errors import DimMismatch, HypothesisUnmet, NotApplicable
from opineq.generators import MAP_KINDS, random_map
from opineq.linalg import eye
from opineq.maps import (
    Compression,
    Identity,
    NormalizedTrace,
    PartialTraceLeft,
    Pinching,
    PositiveMap,
    StateMixture,
    VectorState,
    WeightedDiagState,
    check_left_multiplier,
    check_positive_sampled,
    check_schwarz,
    check_subunital,
    check_unital,
)

HALF = VectorState(np.full(2, 1 / np.sqrt(2)))


@dataclass(frozen=True, eq=False)
class TransposeMinusTrace(PositiveMap):
    """Linear but not positive: ``T -> T^t - tr(T) I``."""

    dim: int

    @property
    def input_dim(self):
        return self.dim

    @property
    def output_dim(self):
        return self.dim

    def apply(self, T):
        T = self._input(T)
        return T.T - np.trace(T) * np.eye(self.dim)


def test_apply_examples():
    T = np.arange(9.0).reshape(3, 3)
    assert np.allclose(Identity(3)(T), T)
    assert HALF(np.diag([1.0, 4.0])).shape == (1, 1)
    assert HALF(np.diag([1.0, 4.0]))[0, 0] == pytest.approx(2.5)
    rng = rng_for(1)
    X, Y = random_matrix(rng, 2), random_matrix(rng, 2)
    assert np.allclose(PartialTraceLeft(2, 2)(np.kron(X, Y)), np.trace(X) / 2 * Y)


def test_partial_trace_against_loop():
    rng = rng_for(2)
    n, k = 3, 2
    T = random_matrix(rng, n * k)
    ref = np.zeros((k, k), complex)
    for i in range(n):
        ref += T[i * k:(i + 1) * k, i * k:(i + 1) * k]
    assert np.allclose(PartialTraceLeft(n, k)(T), ref / n)


def test_dimension_checks():
    with pytest.raises(DimMismatch):
        Identity(2)(np.eye(3))
    with pytest.raises(ValueError):
        VectorState([1.0, 1.0])
    with pytest.raises(ValueError):
        Compression(np.ones((2, 1)))
    with pytest.raises(ValueError):
        WeightedDiagState([1.0, 0.0])


def test_unital_examples():
    assert check_unital(HALF)
    assert check_unital(WeightedDiagState([0.3, 0.7]))
    assert not check_unital(WeightedDiagState([1.0, 1.0]))
    assert check_unital(Compression(random_unitary(rng_for(3), 4)[:, :2]))
    assert check_unital(PartialTraceLeft(2, 3))
    assert check_unital(Pinching((1, 2)))
    assert check_unital(NormalizedTrace(3))
    assert not check_unital(StateMixture(np.eye(2)))


def test_subunital():
    assert check_subunital(WeightedDiagState([0.2, 0.3]))
    assert not check_subunital(WeightedDiagState([0.8, 0.7]))
    assert check_subunital(Identity(2))


@pytest.mark.parametrize("kind", MAP_KINDS)
@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_taxonomy_is_positive(kind, n):
    phi = random_map(rng_for(n, 7), n, "any", kind)
    assert check_positive_sampled(phi, trials=30, rng_seed=n)


def test_non_positive_map_is_detected():
    res = check_positive_sampled(TransposeMinusTrace(3), trials=10)
    assert not res
    assert res.counterexample is not None and res.counterexample["margin"] < 0


@given(seeds, st.sampled_from(MAP_KINDS), st.integers(1, 6), st.floats(-3, 3))
def test_linear_and_adjoint_compatible(seed, kind, n, alpha):
    rng = rng_for(seed)
    phi = random_map(rng, n, "any", kind)
    S, T = random_matrix(rng, n), random_matrix(rng, n)
    assert rel_err(phi(alpha * S + T), alpha * phi(S) + phi(T)) <= 1e-12
    assert rel_err(phi(T.conj().T), phi(T).conj().T) <= 1e-12


@pytest.mark.parametrize("n,k", [(2, 2), (3, 2), (2, 3)])
def test_partial_trace_is_left_multiplier(n, k):
    res = check_left_multiplier(PartialTraceLeft(n, k), trials=200, tol=1e-12)
    assert res and res.worst <= 1e-12


def test_left_multiplier_examples():
    assert check_left_multiplier(Identity(3))
    assert check_left_multiplier(HALF)
    assert check_left_multiplier(Pinching((2, 1)))
    assert check_left_multiplier(Compression(random_unitary(rng_for(4), 3)[:, :2]))
    with pytest.raises(NotApplicable):
        check_left_multiplier(TransposeMinusTrace(2))


def test_wrong_embedding_is_detected():
    # a general (non block-diagonal) Y does not pass through a pinching
    sampler = lambda rng: random_matrix(rng, 3)  # noqa: E731
    assert not check_left_multiplier(Pinching((2, 1)), subalgebra_sampler=sampler)


def test_schwarz_examples():
    rng = rng_for(9)
    A = random_matrix(rng, 3)
    v = check_schwarz(Identity(3), A)
    assert v.holds and abs(v.margin) <= 1e-12
    v = check_schwarz(HALF, np.diag([0.0, 1.0]))
    assert v.holds and v.margin == pytest.approx(0.25)
    with pytest.raises(HypothesisUnmet):
        check_schwarz(WeightedDiagState([1.0, 1.0]), A[:2, :2])


@given(seeds, st.sampled_from(MAP_KINDS), st.integers(1, 6))
def test_schwarz_for_unital_maps_on_normal_input(seed, kind, n):
    rng = rng_for(seed)
    phi = random_map(rng, n, "unital", kind)
    U = random_unitary(rng, n)
    A = (U * (rng.standard_normal(n) + 1j * rng.standard_normal(n))) @ U.conj().T
    assert check_schwarz(phi, A).holds
    assert check_unital(phi)


def test_scalar_embedding():
    phi = StateMixture(np.ones((2, 3)) / np.sqrt(6))
    assert np.allclose(phi.embed(np.array([[2.0]])), 2 * eye(3))
