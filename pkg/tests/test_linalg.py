import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import dims, random_matrix, random_pd, rel_err, rng_for, seeds
from opineq._rng import random_hermitian, random_psd, random_unitary
from opineq.errors import DimMismatch, NotHermitian, NotPSD, SingularMatrix
from opineq.linalg import (
    ToleranceConfig,
    abs_op,
    hermitian_eigen,
    inv_pd,
    is_psd,
    jacobi_eigh,
    loewner_leq,
    opnorm,
    re_part,
    sqrt_psd,
)

S2 = np.array([[2.0, 1.0], [1.0, 2.0]])


def test_tolerance_config_rejects_negative():
    with pytest.raises(ValueError):
        ToleranceConfig(abs_tol=-1.0)
    with pytest.raises(ValueError):
        ToleranceConfig(rel_tol=float("nan"))


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_eigen_examples(method):
    es = hermitian_eigen(np.eye(3), method=method)
    assert np.allclose(es.eigenvalues, [1, 1, 1])
    assert np.allclose(hermitian_eigen(np.diag([4.0, 1.0]), method=method).eigenvalues, [1, 4])
    es = hermitian_eigen(S2, method=method)
    assert np.allclose(es.eigenvalues, [1, 3])
    assert np.allclose(es.reconstruct(), S2)


def test_eigen_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eigen(np.array([[1.0, 2.0], [0.0, 1.0]]))


@given(seeds, st.integers(1, 12))
def test_jacobi_agrees_with_lapack(seed, n):
    H = random_hermitian(rng_for(seed), n)
    jac = jacobi_eigh(H)
    ref = np.linalg.eigvalsh(H)
    scale = max(1.0, np.linalg.norm(H))
    assert np.max(np.abs(jac.eigenvalues - ref)) <= 1e-12 * scale
    V = jac.eigenvectors
    assert np.linalg.norm(V.conj().T @ V - np.eye(n)) <= 1e-10
    assert np.linalg.norm(jac.reconstruct() - H) <= 1e-9 * np.linalg.norm(H)


@given(seeds, st.integers(1, 12))
def test_spectral_reconstruction(seed, n):
    H = random_hermitian(rng_for(seed), n)
    es = hermitian_eigen(H)
    assert np.all(np.diff(es.eigenvalues) >= 0)
    assert np.linalg.norm(es.reconstruct() - H) <= 1e-9 * np.linalg.norm(H)


def test_is_psd_examples():
    v = is_psd(np.eye(2))
    assert v.holds and v.margin == pytest.approx(1)
    v = is_psd(np.diag([1.0, -0.5]))
    assert not v.holds and v.margin == pytest.approx(-0.5)
    v = is_psd(S2)
    assert v.holds and v.margin == pytest.approx(1)


def test_loewner_examples():
    I = np.eye(2)
    v = loewner_leq(I, 2 * I)
    assert v.holds and v.margin == pytest.approx(1)
    v = loewner_leq(2 * I, I)
    assert not v.holds and v.margin == pytest.approx(-1)
    v = loewner_leq(np.diag([1.0, 4.0]), np.array([[3.0, 1.0], [1.0, 5.0]]))
    assert v.holds and v.margin == pytest.approx((3 - np.sqrt(5)) / 2)
    assert v.scale == pytest.approx(opnorm(np.array([[3.0, 1.0], [1.0, 5.0]])))
    with pytest.raises(DimMismatch):
        loewner_leq(np.eye(2), np.eye(3))


def test_tolerance_band_is_relative():
    big = 1e6 * np.eye(2)
    assert loewner_leq(big + 1e-5 * np.eye(2), big).holds
    assert not loewner_leq(big + 1e-2 * np.eye(2), big).holds


def test_sqrt_examples():
    assert np.allclose(sqrt_psd(np.eye(2)), np.eye(2))
    assert np.allclose(sqrt_psd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
    assert np.allclose(sqrt_psd(np.array([[5.0, 4.0], [4.0, 5.0]])), S2)


def test_sqrt_clamps_roundoff_but_rejects_negative():
    R = sqrt_psd(np.diag([1.0, -1e-13]))
    assert np.allclose(R, np.diag([1.0, 0.0]))
    with pytest.raises(NotPSD):
        sqrt_psd(np.diag([1.0, -1e-3]))


@given(seeds, dims)
def test_sqrt_squares_back(seed, n):
    H = random_psd(rng_for(seed), n)
    R = sqrt_psd(H)
    assert is_psd(R).holds
    assert np.linalg.norm(R @ R - H) <= 1e-9 * max(1.0, np.linalg.norm(H))


def test_inverse_examples():
    assert np.allclose(inv_pd(np.eye(2)), np.eye(2))
    assert np.allclose(inv_pd(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]))
    assert np.allclose(inv_pd(S2), np.array([[2.0, -1.0], [-1.0, 2.0]]) / 3)
    with pytest.raises(SingularMatrix):
        inv_pd(np.diag([1.0, 0.0]))


@given(seeds, dims)
def test_inverse_is_order_reversing(seed, n):
    rng = rng_for(seed)
    X = random_pd(rng, n)
    Y = X + random_psd(rng, n)
    assert loewner_leq(X, Y).holds
    assert loewner_leq(inv_pd(Y), inv_pd(X)).holds
    assert np.linalg.norm(X @ inv_pd(X) - np.eye(n)) <= 1e-9 * max(1.0, np.linalg.cond(X))


def test_abs_examples():
    assert np.allclose(abs_op(-np.eye(2)), np.eye(2))
    assert np.allclose(abs_op(np.diag([3j, -4])), np.diag([3.0, 4.0]))
    assert np.allclose(abs_op(np.array([[0.0, 1.0], [0.0, 0.0]])), np.diag([0.0, 1.0]))


@given(seeds, dims)
def test_abs_left_unitary_invariance(seed, n):
    rng = rng_for(seed)
    T = random_matrix(rng, n)
    U = random_unitary(rng, n)
    assert rel_err(abs_op(U @ T), abs_op(T)) <= 1e-9


def test_re_part_examples():
    assert np.allclose(re_part(S2), S2)
    assert np.allclose(re_part(np.array([[0.0, 2.0], [0.0, 0.0]])), np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(re_part(1j * np.eye(3)), 0)


@given(seeds, dims)
def test_loewner_reflexive_and_antisymmetric(seed, n):
    rng = rng_for(seed)
    X = random_hermitian(rng, n)
    v = loewner_leq(X, X)
    assert v.holds and v.margin >= -1e-10
    Y = X + random_psd(rng, n, rank=1) + 0.1 * np.eye(n)
    assert loewner_leq(X, Y).holds
    assert not loewner_leq(Y, X).holds
