import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import dims, random_matrix, random_pd, rel_err, rng_for, seeds
from opineq._rng import random_psd
from opineq.bounds import Box
from opineq.errors import DimMismatch, HypothesisUnmet, SingularMatrix
from opineq.linalg import inv_pd, is_psd, loewner_leq, sqrt_psd
from opineq.means import am_gm_gap, geometric_mean, mean_sandwich

A14, B41 = np.diag([1.0, 4.0]), np.diag([4.0, 1.0])


def mean_by_riccati(A, B):
    """Independent oracle: the unique PD solution of ``X A^{-1} X = B``, via a block sign iteration.

    For ``Z = [[0, B], [A^{-1}, 0]]`` the matrix sign is ``[[0, A # B], [(A # B)^{-1}, 0]]``.
    """
    n = A.shape[0]
    Z = np.block([[np.zeros((n, n)), B], [np.linalg.inv(A), np.zeros((n, n))]]).astype(complex)
    for _ in range(100):
        Zn = 0.5 * (Z + np.linalg.inv(Z))
        if np.linalg.norm(Zn - Z) <= 1e-15 * np.linalg.norm(Z):
            Z = Zn
            break
        Z = Zn
    return Z[:n, n:]


def test_mean_examples():
    assert np.allclose(geometric_mean(np.eye(2), np.eye(2)), np.eye(2))
    assert np.allclose(geometric_mean(A14, B41), 2 * np.eye(2))
    assert np.allclose(geometric_mean(A14, inv_pd(A14)), np.eye(2))


def test_mean_errors():
    with pytest.raises(SingularMatrix):
        geometric_mean(np.diag([1.0, 0.0]), np.eye(2))
    with pytest.raises(DimMismatch):
        geometric_mean(np.eye(2), np.eye(3))


def test_mean_allows_singular_right_argument():
    G = geometric_mean(np.eye(2), np.diag([4.0, 0.0]))
    assert np.allclose(G, np.diag([2.0, 0.0]))


@given(seeds, st.integers(1, 6))
def test_mean_matches_riccati_oracle(seed, n):
    rng = rng_for(seed)
    A, B = random_pd(rng, n), random_pd(rng, n)
    assert rel_err(geometric_mean(A, B), mean_by_riccati(A, B)) <= 1e-8


@given(seeds, dims)
def test_mean_laws(seed, n):
    rng = rng_for(seed)
    A, B = random_pd(rng, n), random_pd(rng, n)
    G = geometric_mean(A, B)
    assert is_psd(G).holds
    assert rel_err(G, geometric_mean(B, A)) <= 1e-9
    assert rel_err(geometric_mean(A, A), A) <= 1e-9
    assert rel_err(geometric_mean(A, inv_pd(A)), np.eye(n)) <= 1e-9
    # G is the solution of the Riccati equation G A^{-1} G = B
    assert rel_err(G @ inv_pd(A) @ G, B) <= 1e-8


@given(seeds, dims, st.floats(0.01, 100.0))
def test_mean_homogeneity(seed, n, alpha):
    rng = rng_for(seed)
    A, B = random_pd(rng, n), random_pd(rng, n)
    assert rel_err(geometric_mean(alpha * A, B), np.sqrt(alpha) * geometric_mean(A, B)) <= 1e-9


@given(seeds, dims)
def test_mean_congruence(seed, n):
    rng = rng_for(seed)
    A, B = random_pd(rng, n), random_pd(rng, n)
    T = random_matrix(rng, n) + 3 * np.eye(n)
    Tc = T.conj().T
    lhs = Tc @ geometric_mean(A, B) @ T
    rhs = geometric_mean(Tc @ A @ T, Tc @ B @ T)
    assert rel_err(lhs, rhs) <= 1e-8


@given(seeds, dims)
def test_mean_monotone_in_second_argument(seed, n):
    rng = rng_for(seed)
    A, B1 = random_pd(rng, n), random_pd(rng, n)
    B2 = B1 + random_psd(rng, n)
    assert loewner_leq(geometric_mean(A, B1), geometric_mean(A, B2)).holds


def test_am_gm_examples():
    v = am_gm_gap(np.eye(2), np.eye(2))
    assert v.holds and abs(v.margin) <= 1e-12
    v = am_gm_gap(A14, B41)
    assert v.holds and v.margin == pytest.approx(0.5)


@given(seeds, dims)
def test_am_gm(seed, n):
    rng = rng_for(seed)
    assert am_gm_gap(random_pd(rng, n), random_pd(rng, n)).holds


def test_sandwich_examples():
    r = 1 / np.sqrt(2)
    lo, hi = mean_sandwich(np.eye(2), np.eye(2), Box(r, np.sqrt(2), r, np.sqrt(2)))
    assert lo.holds and hi.holds
    lo, hi = mean_sandwich(A14, A14, Box(1, 2, 1, 2))
    # lower constant m1^2 m2 / M1 = 1/2 against spectrum {1, 4}
    assert lo.holds and lo.margin == pytest.approx(0.5)
    assert hi.holds and hi.margin == pytest.approx(4.0)
    with pytest.raises(HypothesisUnmet):
        mean_sandwich(A14, A14, Box(1.5, 2, 1, 2))


@given(seeds, dims)
def test_sandwich_on_random_boxes(seed, n):
    rng = rng_for(seed)
    A, B = random_pd(rng, n, 0.5, 4.0), random_pd(rng, n, 0.2, 9.0)
    la, lb = np.linalg.eigvalsh(A), np.linalg.eigvalsh(B)
    box = Box(np.sqrt(la[0]), np.sqrt(la[-1]), np.sqrt(lb[0]), np.sqrt(lb[-1]))
    lo, hi = mean_sandwich(A, B, box)
    assert lo.holds and hi.holds


def test_leg_switch_is_consistent():
    # badly conditioned left leg triggers the mirrored formula
    A = np.diag([1e-6, 1.0, 1e3])
    B = random_pd(rng_for(5), 3, 1.0, 2.0)
    G = geometric_mean(A, B)
    Ah = sqrt_psd(A)
    Aih = np.diag(1 / np.sqrt(np.diag(A)))
    direct = Ah @ sqrt_psd(Aih @ B @ Aih) @ Ah
    assert rel_err(G, direct) <= 1e-8
