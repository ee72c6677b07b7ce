import numpy as np
import pytest

import blochwave as bw

import _criteria


@pytest.fixture(scope="session")
def bench():
    return bw.lambda_benchmark()


@pytest.fixture(scope="session")
def bench_h(bench):
    return bw.lambda_hamiltonian(bench)


@pytest.fixture(scope="session")
def bench_full(bench_h):
    return bw.assemble(bench_h)


@pytest.fixture(scope="session")
def bench_bstar(bench_h):
    # tighter than the default so downstream identity checks are limited by
    # the identities, not by the iteration cutoff
    return bw.fixed_point(bench_h, tol=1e-13)


@pytest.fixture(scope="session")
def bench_model(bench_bstar, bench_h):
    return bw.build_model(bench_bstar, bench_h)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria.touched():
        return
    terminalreporter.section("acceptance criteria")
    for line in _criteria.lines():
        terminalreporter.write_line(line)


def rand_herm(rng: np.random.Generator, n: int) -> np.ndarray:
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (m + m.conj().T)


def rand_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))
