"""Partitioned Hamiltonians and scale diagnostics.

A hermitian H is split into a slow p x p block omega, a fast q x q block
delta and the coupling Omega (q x p, slow to fast):

    H = [[omega, Omega^dag],
         [Omega, delta   ]]

The diagnostics decide whether the elimination regime applies:

    eps  = ||delta^-1|| ||omega||,   eps' = ||delta^-1|| ||Omega||

with the sufficient convergence condition eps' <= (1 - eps)/2, eps < 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .errors import DeltaSingular, DimensionMismatch
from .linalg import as_cmatrix, check_hermitian, spectral_norm

__all__ = [
    "PartitionedHamiltonian",
    "ScaleDiagnostics",
    "split",
    "assemble",
    "diagnostics",
]


@dataclass(frozen=True)
class PartitionedHamiltonian:
    """Block data (omega, coupling, delta) of a two-sector hermitian matrix."""

    omega: np.ndarray
    coupling: np.ndarray
    delta: np.ndarray

    def __post_init__(self):
        omega = check_hermitian(self.omega, "omega")
        delta = check_hermitian(self.delta, "delta")
        coupling = as_cmatrix(self.coupling, "coupling")
        p, q = omega.shape[0], delta.shape[0]
        if coupling.shape != (q, p):
            raise DimensionMismatch(
                f"coupling must be {q}x{p} (fast x slow), got {coupling.shape}"
            )
        # smallest |eigenvalue| of delta, relative to its norm
        ev = np.linalg.eigvalsh(delta)
        nd = float(np.max(np.abs(ev))) if q else 0.0
        if q == 0 or np.min(np.abs(ev)) <= TOL.delta_invertible * max(nd, 1e-300):
            raise DeltaSingular(
                f"fast block is singular within tolerance {TOL.delta_invertible:g}"
            )
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "coupling", coupling)
        object.__setattr__(self, "delta", delta)

    @property
    def p(self) -> int:
        return self.omega.shape[0]

    @property
    def q(self) -> int:
        return self.delta.shape[0]

    def delta_inv(self) -> np.ndarray:
        return np.linalg.inv(self.delta)


@dataclass(frozen=True)
class ScaleDiagnostics:
    """Scale ratios and the convergence verdict for one instance.

    ball_radius is the larger invariant-ball radius

        r = (1 - eps)/(2 eps') + sqrt(((1 - eps)/(2 eps'))^2 - 1)

    and ball_radius_min the smaller root (the fixed point itself lies inside
    the smaller ball). Both are None when eps' = 0 or when the convergence
    condition fails.
    """

    eps: float
    eps_prime: float
    a_ratio: float
    ball_radius: float | None
    ball_radius_min: float | None
    convergent: bool
    norms: dict = field(default_factory=dict, repr=False)


def split(h_full, p: int) -> PartitionedHamiltonian:
    """Partition a hermitian (p+q) x (p+q) matrix at slow dimension p."""
    a = check_hermitian(h_full, "H")
    n = a.shape[0]
    if not 0 < p < n:
        raise DimensionMismatch(f"slow dimension must satisfy 0 < p < {n}, got {p}")
    return PartitionedHamiltonian(
        omega=a[:p, :p], coupling=a[p:, :p], delta=a[p:, p:]
    )


def assemble(h: PartitionedHamiltonian) -> np.ndarray:
    """Dense (p+q) x (p+q) matrix [[omega, Omega^dag], [Omega, delta]]."""
    return np.block(
        [[h.omega, h.coupling.conj().T], [h.coupling, h.delta]]
    )


def diagnostics(h: PartitionedHamiltonian) -> ScaleDiagnostics:
    """Compute eps, eps', a = ||Omega||/||omega|| and the ball radii.

    delta is hermitian, so ||delta^-1|| = 1/min|eigenvalue|.
    """
    ev = np.linalg.eigvalsh(h.delta)
    inv_norm = 1.0 / float(np.min(np.abs(ev)))
    n_omega = spectral_norm(h.omega)
    n_coupling = spectral_norm(h.coupling)

    eps = inv_norm * n_omega
    eps_prime = inv_norm * n_coupling
    a_ratio = n_coupling / n_omega if n_omega > 0 else math.inf

    convergent = (eps < 1.0) and (eps_prime <= 0.5 * (1.0 - eps))
    r_plus = r_minus = None
    if eps_prime > 0 and convergent:
        half = (1.0 - eps) / (2.0 * eps_prime)
        root = math.sqrt(max(half * half - 1.0, 0.0))
        r_plus, r_minus = half + root, half - root

    return ScaleDiagnostics(
        eps=eps,
        eps_prime=eps_prime,
        a_ratio=a_ratio,
        ball_radius=r_plus,
        ball_radius_min=r_minus,
        convergent=convergent,
        norms={
            "omega": n_omega,
            "coupling": n_coupling,
            "delta_inv": inv_norm,
            "delta": float(np.max(np.abs(ev))),
        },
    )
