import numpy as np
import pytest
import scipy.linalg

from tracebound.states import DensityMatrix


def ginibre_state(rng, n, rank=None):
    """Oracle-side sampler, independent of tracebound.random_density."""
    rank = n if rank is None else rank
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    w = g @ g.conj().T
    return w / np.trace(w).real


def random_hermitian(rng, n, scale=1.0):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (g + g.conj().T) / 2


def oracle_fidelity(a, b):
    """Uhlmann fidelity through scipy's Schur-based sqrtm (full-rank inputs only)."""
    ra = scipy.linalg.sqrtm(np.asarray(a))
    rb = scipy.linalg.sqrtm(np.asarray(b))
    return float(np.sum(scipy.linalg.svdvals(ra @ rb)) ** 2)


def oracle_trace_distance(a, b):
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(np.asarray(a) - np.asarray(b)))))


def ket(index, n):
    v = np.zeros(n)
    v[index] = 1.0
    return DensityMatrix(np.outer(v, v))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.REPORT):
        passed, detail = mod.REPORT[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}")
