"""Benchmark instances: the three-level Lambda system and random ensembles.

The Lambda system has two low-lying states coupled to one far-detuned excited
state by fields Omega_a, Omega_b, with two-photon detuning delta and
one-photon detuning big_delta. In the partitioned form

    omega = -(delta/2) sigma3,   Omega = (Omega_a, Omega_b)/2,   delta block = (big_delta).

``random_separated`` manufactures well-separated instances with prescribed
scale ratios for property fuzzing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadTargets, DeltaZero
from .partition import PartitionedHamiltonian

__all__ = [
    "LambdaParams",
    "lambda_benchmark",
    "lambda_hamiltonian",
    "lambda_manifold_coefficients",
    "random_separated",
]

SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


@dataclass(frozen=True)
class LambdaParams:
    """Angular-frequency parameters of the three-level system."""

    delta: float
    omega_a: complex
    omega_b: complex
    big_delta: float

    def __post_init__(self):
        if self.big_delta == 0:
            raise ValueError("big_delta must be nonzero")

    @property
    def eps(self) -> float:
        """The natural expansion parameter delta / big_delta."""
        return self.delta / self.big_delta


def lambda_benchmark() -> LambdaParams:
    """Moderately strong coupling at large one-photon detuning.

    delta = -0.0175, Omega_a = 0.4, Omega_b = 0.3 in units of big_delta: the
    working point used throughout the tests and demos, where the lowest-order
    elimination visibly fails to track the population envelope.
    """
    return LambdaParams(delta=-0.0175, omega_a=0.4, omega_b=0.3, big_delta=1.0)


def lambda_hamiltonian(p: LambdaParams) -> PartitionedHamiltonian:
    """Partitioned blocks of the three-level Hamiltonian (slow dim 2, fast dim 1)."""
    omega = -(p.delta / 2.0) * SIGMA3
    coupling = 0.5 * np.array([[p.omega_a, p.omega_b]], dtype=complex)
    delta = np.array([[p.big_delta]], dtype=complex)
    return PartitionedHamiltonian(omega=omega, coupling=coupling, delta=delta)


def lambda_manifold_coefficients(p: LambdaParams, order: int) -> list[np.ndarray]:
    """Rows h_1 .. h_order of the linear invariant-manifold expansion.

    The fast amplitude on the manifold is gamma = sum_k eps^k h_k (alpha, beta)
    with eps = delta/big_delta. Each h_k is linear, represented by a row
    (u, v) acting as u*alpha + v*beta, with

        h_1 = -(Omega_a, Omega_b) / (2 delta)

    and the recurrence

        h_(k+1) = (beta d_beta - alpha d_alpha) h_k / 2
                  + (1 / 2 delta) sum_{l=1}^{k-1} h_(k-l) (Omega_a^* d_alpha + Omega_b^* d_beta) h_l.

    On rows the scaling operator acts as (u, v) -> (-u, v) and the derivative
    contraction of h_l is the scalar Omega_a^* u_l + Omega_b^* v_l.
    """
    if p.delta == 0:
        raise DeltaZero("manifold coefficients need a nonzero two-photon detuning")
    if order < 1:
        raise ValueError("order must be >= 1")
    oa, ob = complex(p.omega_a), complex(p.omega_b)
    rows = [np.array([-oa, -ob], dtype=complex) / (2.0 * p.delta)]
    for k in range(1, order):
        u, v = rows[k - 1]
        nxt = 0.5 * np.array([-u, v], dtype=complex)
        for l in range(1, k):
            contraction = np.conj(oa) * rows[l - 1][0] + np.conj(ob) * rows[l - 1][1]
            nxt = nxt + contraction * rows[k - l - 1] / (2.0 * p.delta)
        rows.append(nxt)
    return rows


def _random_herm(rng: np.random.Generator, n: int) -> np.ndarray:
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (m + m.conj().T)


def _scaled_to(m: np.ndarray, target: float) -> np.ndarray:
    if target == 0:
        return np.zeros_like(m)
    n = np.linalg.norm(m, 2)
    if n == 0:  # pragma: no cover - zero draw has measure zero
        raise BadTargets("degenerate random draw, try another seed")
    return m * (target / n)


def random_separated(
    p: int, q: int, eps: float, eps_prime: float, seed: int
) -> PartitionedHamiltonian:
    """Random instance with prescribed diagnostics (eps, eps').

    The fast block gets eigenvalues in a band [s, 2s] for a random overall
    scale s, so ||delta^-1|| = 1/s exactly; omega and Omega are rescaled so
    the requested ratios hold to roundoff. eps < 1 guarantees the spectra of
    omega and delta stay disjoint. Deterministic for a fixed seed.
    """
    if p < 1 or q < 1:
        raise BadTargets("both sector dimensions must be >= 1")
    if eps < 0 or eps_prime < 0:
        raise BadTargets("scale targets must be nonnegative")
    if eps >= 1:
        raise BadTargets(
            f"eps = {eps} >= 1 would let the slow spectrum reach the fast band"
        )

    rng = np.random.default_rng(seed)
    scale = rng.uniform(0.5, 2.0)

    w, v = np.linalg.eigh(_random_herm(rng, q))
    if q > 1 and w[-1] > w[0]:
        w = 1.0 + (w - w[0]) / (w[-1] - w[0])  # remap spectrum onto [1, 2]
    else:
        # smallest eigenvalue must be exactly 1 so ||delta^-1|| = 1/scale
        w = np.ones(q)
    delta = scale * (v * w) @ v.conj().T
    delta = 0.5 * (delta + delta.conj().T)

    omega = _scaled_to(_random_herm(rng, p), eps * scale)
    omega = 0.5 * (omega + omega.conj().T)
    coupling_raw = rng.standard_normal((q, p)) + 1j * rng.standard_normal((q, p))
    coupling = _scaled_to(coupling_raw, eps_prime * scale)

    return PartitionedHamiltonian(omega=omega, coupling=coupling, delta=delta)
