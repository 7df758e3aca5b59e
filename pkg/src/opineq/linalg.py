"""Dense complex matrix toolbox: spectral decomposition, functional calculus, Löwner order.

Every matrix is a square ``complex128`` numpy array.  Scalars produced by
state-like maps are carried as ``1 x 1`` matrices so that they flow through the
same order comparisons as genuine operators.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, NoConvergence, NotHermitian, NotPSD, SingularMatrix


@dataclass(frozen=True)
class ToleranceConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    hermitian_tol: float = 1e-9
    recon_tol: float = 1e-9
    ortho_tol: float = 1e-10

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "hermitian_tol", "recon_tol", "ortho_tol"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and nonnegative, got {value!r}")

    def band(self, scale: float) -> float:
        """Admissible negative excursion for an order check at magnitude ``scale``."""
        return self.abs_tol + self.rel_tol * scale


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class EigenSystem:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


@dataclass(frozen=True)
class OrderVerdict:
    holds: bool
    margin: float
    scale: float

    def __bool__(self):
        return self.holds


def as_matrix(x) -> np.ndarray:
    """Coerce ``x`` to a finite square complex matrix (scalars become 1x1)."""
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimMismatch(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def eye(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def herm(X: np.ndarray) -> np.ndarray:
    """Hermitian part ``(X + X*) / 2``."""
    return 0.5 * (X + X.conj().T)


re_part = herm


def hermitian_residual(H: np.ndarray) -> float:
    return float(np.max(np.abs(H - H.conj().T))) if H.size else 0.0


def check_hermitian(H, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    H = as_matrix(H)
    resid = hermitian_residual(H)
    # scaled by the entry magnitude so large operators are not misclassified
    limit = cfg.hermitian_tol * max(1.0, float(np.max(np.abs(H))))
    if resid > limit:
        raise NotHermitian(f"symmetry residual {resid:.3e} exceeds {limit:.3e}")
    return herm(H)


def jacobi_eigh(H: np.ndarray, tol: float = 1e-14, max_sweeps: int = 60) -> EigenSystem:
    """Cyclic complex Jacobi eigensolver for a Hermitian matrix.

    Each rotation first strips the phase of the pivot ``H[p, q]`` and then
    applies the real symmetric Jacobi rotation, so the accumulated transform
    stays unitary.  Sweeps stop once the off-diagonal Frobenius mass drops below
    ``tol * ||H||_F``.
    """
    A = herm(np.array(H, dtype=np.complex128))
    n = A.shape[0]
    V = eye(n)
    fro = np.linalg.norm(A)
    if n == 1 or fro == 0.0:
        return EigenSystem(np.real(np.diag(A)).copy(), V)
    target = tol * fro
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = A[p, q]
                beta = abs(b)
                if beta <= 1e-300:
                    continue
                phase = b / beta
                a_pp = A[p, p].real
                a_qq = A[q, q].real
                theta = 0.5 * np.arctan2(2.0 * beta, a_pp - a_qq)
                c, s = np.cos(theta), np.sin(theta)
                G = np.array([[c, -s], [s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ G
                A[idx, :] = G.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                V[:, idx] = V[:, idx] @ G
    else:
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off > target:
            raise NoConvergence(f"Jacobi stalled at off-diagonal mass {off:.3e} after {max_sweeps} sweeps")
    lam = np.real(np.diag(A))
    order = np.argsort(lam, kind="stable")
    return EigenSystem(lam[order], V[:, order])


def hermitian_eigen(H, cfg: ToleranceConfig = DEFAULT_TOL, method: str = "lapack") -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix with eigenvalues ascending.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``method="jacobi"`` runs the
    self-contained cyclic Jacobi solver.
    """
    H = check_hermitian(H, cfg)
    if method == "lapack":
        lam, V = np.linalg.eigh(H)
        return EigenSystem(lam, V)
    if method == "jacobi":
        return jacobi_eigh(H)
    raise ValueError(f"unknown eigen method {method!r}")


def eigvalsh(H: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(herm(H))


def lambda_min(H: np.ndarray) -> float:
    return float(eigvalsh(H)[0])


def opnorm(T: np.ndarray) -> float:
    """Operator norm, i.e. the largest singular value."""
    T = np.asarray(T)
    if T.size == 1:
        return float(abs(T.reshape(-1)[0]))
    return float(np.linalg.norm(T, 2))


def is_psd(H, cfg: ToleranceConfig = DEFAULT_TOL) -> OrderVerdict:
    H = check_hermitian(H, cfg)
    lam = np.linalg.eigvalsh(H)
    scale = float(np.max(np.abs(lam)))
    margin = float(lam[0])
    return OrderVerdict(margin >= -cfg.band(scale), margin, scale)


def loewner_leq(X, Y, cfg: ToleranceConfig = DEFAULT_TOL) -> OrderVerdict:
    """Verdict for ``X <= Y`` in the Löwner order."""
    X = check_hermitian(X, cfg)
    Y = check_hermitian(Y, cfg)
    if X.shape != Y.shape:
        raise DimMismatch(f"cannot compare {X.shape} with {Y.shape}")
    scale = max(opnorm(X), opnorm(Y))
    margin = lambda_min(Y - X)
    return OrderVerdict(margin >= -cfg.band(scale), margin, scale)


def _spectral(H, cfg: ToleranceConfig):
    es = hermitian_eigen(H, cfg)
    return es.eigenvalues, es.eigenvectors


def _rebuild(lam: np.ndarray, V: np.ndarray) -> np.ndarray:
    return herm((V * lam) @ V.conj().T)


def sqrt_psd(H, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix."""
    lam, V = _spectral(H, cfg)
    scale = float(np.max(np.abs(lam)))
    if lam[0] < -cfg.band(scale):
        raise NotPSD(f"smallest eigenvalue {lam[0]:.3e} is below the tolerance band")
    return _rebuild(np.sqrt(np.clip(lam, 0.0, None)), V)


def _pd_spectrum(H, cfg: ToleranceConfig):
    lam, V = _spectral(H, cfg)
    if lam[0] <= cfg.abs_tol:
        raise SingularMatrix(f"smallest eigenvalue {lam[0]:.3e} is not safely positive")
    return lam, V


def inv_pd(H, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    lam, V = _pd_spectrum(H, cfg)
    return _rebuild(1.0 / lam, V)


def pd_power(H, p: float, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """``H**p`` for positive definite ``H`` and any real exponent."""
    lam, V = _pd_spectrum(H, cfg)
    return _rebuild(lam**p, V)


def abs_op(T) -> np.ndarray:
    """Modulus ``|T| = (T* T)^{1/2}``."""
    T = as_matrix(T)
    return sqrt_psd(herm(T.conj().T @ T))


def sq_mod(T: np.ndarray) -> np.ndarray:
    """``|T|^2 = T* T`` (Hermitized)."""
    return herm(T.conj().T @ T)
