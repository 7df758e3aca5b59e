"""Random primitives keyed by ``(seed, index, ...)`` substreams."""
import numpy as np


def substream(seed: int, *keys: int) -> np.random.Generator:
    """Independent generator for ``(seed, *keys)``; identical keys give identical draws."""
    return np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, *(int(k) for k in keys)])


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    # QR of a Ginibre matrix with the phase fix on R's diagonal
    Z = complex_gaussian(rng, (n, n))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.where(np.abs(d) > 0, np.abs(d), 1.0))


def random_psd(rng: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    rank = n if rank is None else rank
    G = complex_gaussian(rng, (n, rank))
    P = G @ G.conj().T
    return 0.5 * (P + P.conj().T)


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    Z = complex_gaussian(rng, (n, n))
    return 0.5 * (Z + Z.conj().T)
