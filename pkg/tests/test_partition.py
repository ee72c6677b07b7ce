"""Partitioned Hamiltonian container and scale diagnostics."""

import numpy as np
import pytest

import blochwave as bw
from blochwave.partition import PartitionedHamiltonian, assemble, diagnostics, split

from conftest import rand_herm

RNG = np.random.default_rng(7)


def _random_instance(p=2, q=3):
    omega = rand_herm(RNG, p)
    coupling = RNG.standard_normal((q, p)) + 1j * RNG.standard_normal((q, p))
    delta = rand_herm(RNG, q) + 5.0 * np.eye(q)
    return PartitionedHamiltonian(omega=omega, coupling=coupling, delta=delta)


def test_split_assemble_roundtrip():
    h_full = rand_herm(RNG, 5)
    h = split(h_full, 2)
    assert h.p == 2 and h.q == 3
    assert np.allclose(assemble(h), h_full, atol=1e-15)
    assert np.allclose(h.omega, h_full[:2, :2])
    assert np.allclose(h.coupling, h_full[2:, :2])


def test_full_matrix_is_hermitian_with_coupling_in_place():
    h = _random_instance()
    full = assemble(h)
    assert np.allclose(full, full.conj().T)
    assert np.allclose(full[h.p:, :h.p], h.coupling)


def test_rejects_nonhermitian_blocks():
    bad = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        PartitionedHamiltonian(omega=bad, coupling=np.zeros((1, 2)), delta=np.eye(1))
    with pytest.raises(ValueError):
        PartitionedHamiltonian(
            omega=np.zeros((2, 2)), coupling=np.zeros((2, 2)), delta=bad + np.eye(2)
        )


def test_rejects_coupling_shape_mismatch():
    with pytest.raises(bw.DimensionMismatch):
        PartitionedHamiltonian(
            omega=np.zeros((2, 2)), coupling=np.zeros((2, 3)), delta=np.eye(3)
        )


def test_rejects_singular_fast_block():
    with pytest.raises(bw.DeltaSingular):
        PartitionedHamiltonian(
            omega=np.zeros((1, 1)), coupling=np.zeros((2, 1)), delta=np.diag([1.0, 0.0])
        )


def test_delta_inv_is_inverse():
    h = _random_instance()
    assert np.allclose(h.delta @ h.delta_inv(), np.eye(h.q), atol=1e-12)


def test_benchmark_diagnostics_frozen(bench_h):
    d = diagnostics(bench_h)
    assert d.eps == pytest.approx(0.00875, abs=1e-15)
    assert d.eps_prime == pytest.approx(0.25, abs=1e-15)
    assert d.a_ratio == pytest.approx(200.0 / 7.0, rel=1e-13)
    assert d.convergent
    assert d.ball_radius == pytest.approx(3.6943137311051104, rel=1e-12)
    assert d.ball_radius_min == pytest.approx(0.27068626889488945, rel=1e-12)
    # the two radii are roots of r^2 - ((1-eps)/eps') r + 1
    assert d.ball_radius * d.ball_radius_min == pytest.approx(1.0, rel=1e-12)
    assert d.norms["delta"] == pytest.approx(1.0, abs=1e-15)
    assert d.norms["coupling"] == pytest.approx(0.25, abs=1e-15)


def test_diagnostics_nonconvergent_has_no_ball():
    p = bw.LambdaParams(delta=-0.0175, omega_a=0.9, omega_b=1.3, big_delta=1.0)
    d = diagnostics(bw.lambda_hamiltonian(p))
    assert not d.convergent
    assert d.ball_radius is None and d.ball_radius_min is None


def test_diagnostics_zero_slow_block():
    h = PartitionedHamiltonian(
        omega=np.zeros((2, 2)), coupling=0.1 * np.ones((1, 2)), delta=np.eye(1)
    )
    d = diagnostics(h)
    assert d.eps == 0.0
    assert np.isinf(d.a_ratio)
    assert d.convergent


def test_fast_block_norm_uses_smallest_eigenvalue():
    # ||delta^-1|| for hermitian delta is 1/min|eig|, not 1/||delta||
    h = PartitionedHamiltonian(
        omega=0.01 * np.eye(2), coupling=np.zeros((2, 2)), delta=np.diag([0.5, 4.0])
    )
    d = diagnostics(h)
    assert d.norms["delta_inv"] == pytest.approx(2.0, abs=1e-14)
    assert d.eps == pytest.approx(0.02, abs=1e-15)
