"""Dense kernel checks: norms, roots, exponentials, Sylvester solves."""

import numpy as np
import pytest
from scipy.linalg import expm

import blochwave as bw
from blochwave.linalg import (
    as_cmatrix,
    check_hermitian,
    herm_defect,
    herm_eig,
    herm_inv_sqrt,
    herm_sqrt,
    mat_exp,
    spectral_norm,
    sylvester_solve,
)

from conftest import rand_herm

RNG = np.random.default_rng(42)


def test_as_cmatrix_rejects_vectors_and_nonfinite():
    with pytest.raises(bw.DimensionMismatch):
        as_cmatrix(np.ones(3))
    with pytest.raises(ValueError):
        as_cmatrix(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_spectral_norm_known_values():
    assert spectral_norm(np.diag([3.0, -4.0])) == pytest.approx(4.0, abs=1e-14)
    # nilpotent: largest singular value 1, all eigenvalues 0
    assert spectral_norm([[0.0, 1.0], [0.0, 0.0]]) == pytest.approx(1.0, abs=1e-14)


def test_spectral_norm_unitary_invariance():
    m = rand_herm(RNG, 5) + 1j * RNG.standard_normal((5, 5))
    z = RNG.standard_normal((5, 5)) + 1j * RNG.standard_normal((5, 5))
    q, _ = np.linalg.qr(z)
    assert spectral_norm(q @ m) == pytest.approx(spectral_norm(m), rel=1e-12)


def test_herm_defect_and_check():
    assert herm_defect(rand_herm(RNG, 4)) <= 1e-15
    n = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert herm_defect(n) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ValueError):
        check_hermitian(n)
    # relative bound: scaling a hermitian matrix must not trip the check
    check_hermitian(1e8 * rand_herm(RNG, 3))


def test_herm_eig_reconstructs_ascending():
    m = rand_herm(RNG, 6)
    w, v = herm_eig(m)
    assert np.all(np.diff(w) >= 0)
    assert spectral_norm((v * w) @ v.conj().T - m) <= 1e-13 * (1 + spectral_norm(m))


def test_herm_sqrt_squares_back():
    m = np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex)
    r = herm_sqrt(m)
    assert herm_defect(r) == 0.0
    assert spectral_norm(r @ r - m) <= 1e-14


def test_herm_inv_sqrt_inverts():
    g = rand_herm(RNG, 5)
    m = g @ g.conj().T + np.eye(5)  # positive definite by construction
    assert spectral_norm(herm_sqrt(m) @ herm_inv_sqrt(m) - np.eye(5)) <= 1e-12


def test_herm_sqrt_rejects_indefinite():
    with pytest.raises(bw.NotPositiveDefinite) as info:
        herm_sqrt(np.diag([1.0, -1.0]))
    assert info.value.eigenvalue == pytest.approx(-1.0, abs=1e-14)


def test_mat_exp_hermitian_rotation():
    sigma1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    # exp(-i (pi/2) sigma1) = -i sigma1
    u = mat_exp(sigma1, -1j * np.pi / 2.0)
    assert spectral_norm(u + 1j * sigma1) <= 1e-14
    assert spectral_norm(u.conj().T @ u - np.eye(2)) <= 1e-14


def test_mat_exp_general_matches_scipy():
    m = RNG.standard_normal((4, 4)) + 1j * RNG.standard_normal((4, 4))
    assert spectral_norm(mat_exp(m, -0.3j) - expm(-0.3j * m)) <= 1e-12


def test_mat_exp_nilpotent_truncates():
    n = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    t = 0.7
    assert spectral_norm(mat_exp(n, -1j * t) - (np.eye(2) - 1j * t * n)) <= 1e-14


def test_sylvester_solve_random_roundtrip():
    a = rand_herm(RNG, 4) + 3.0 * np.eye(4)
    c = rand_herm(RNG, 3) - 3.0 * np.eye(3)
    rhs = RNG.standard_normal((4, 3)) + 1j * RNG.standard_normal((4, 3))
    y = sylvester_solve(a, c, rhs)
    assert spectral_norm(a @ y - y @ c - rhs) <= 1e-11 * spectral_norm(rhs)


def test_sylvester_solve_detects_overlap():
    with pytest.raises(bw.SpectraOverlap) as info:
        sylvester_solve(np.eye(2), np.eye(3), np.ones((2, 3)))
    pair = info.value.closest_pair
    assert pair[0] == pytest.approx(1.0) and pair[1] == pytest.approx(1.0)


def test_sylvester_solve_shape_check():
    with pytest.raises(bw.DimensionMismatch):
        sylvester_solve(np.eye(2), np.eye(3), np.ones((3, 2)))
