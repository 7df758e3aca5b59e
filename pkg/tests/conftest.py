import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from opineq._rng import complex_gaussian, random_unitary, substream

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 8)


def rng_for(seed, *keys):
    return substream(seed, *keys)


def random_pd(rng, n, lo=0.1, hi=10.0):
    lam = rng.uniform(lo, hi, size=n)
    U = random_unitary(rng, n)
    H = (U * lam) @ U.conj().T
    return (H + H.conj().T) / 2


def random_matrix(rng, n):
    return complex_gaussian(rng, (n, n))


def rel_err(X, Y):
    return np.linalg.norm(X - Y) / max(1.0, np.linalg.norm(Y))


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
