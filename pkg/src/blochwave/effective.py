"""Effective Hamiltonians, normalizers and the block-diagonalizing unitary.

Given any candidate wave operator B (exact or approximate) this module builds

  * the Bloch effective Hamiltonian  h_bloch = omega + Omega^dag B
    (generally non-hermitian),
  * the normalizers S = sqrt(1 + B^dag B) and S~ = sqrt(1 + B B^dag),
  * the hermitized slow Hamiltonian
    h_alpha = S^-1 (omega + Omega^dag B + B^dag Omega + B^dag delta B) S^-1,
  * the fast companion
    h_gamma = S~^-1 (delta - Omega B^dag - B Omega^dag + B omega B^dag) S~^-1,
  * the explicit transformation
    X = [[1, -B^dag], [B, 1]] diag(S^-1, S~^-1),

together with the dressed projector, effective observables and effective
density matrices. h_alpha, h_gamma are hermitian and X is unitary for any B
whatsoever; only the decoupling quality (the off-diagonal blocks of X^dag H X)
depends on the embedding residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL
from .embedding import WaveOperator, _bmat, residual
from .errors import (
    DimensionMismatch,
    NotASolution,
    NotUnitary,
    SlowSectorEmpty,
)
from .linalg import (
    as_cmatrix,
    check_hermitian,
    herm_inv_sqrt,
    herm_sqrt,
    spectral_norm,
    sylvester_solve,
)
from .partition import PartitionedHamiltonian, assemble, diagnostics

__all__ = [
    "EffectiveModel",
    "bloch_hamiltonian",
    "normalizers",
    "hermitized_hamiltonian",
    "fast_companion",
    "diagonalizer",
    "triangularize",
    "build_model",
    "sylvester_decouple",
    "dressed_projector",
    "effective_observable",
    "effective_density",
]

# unitarity slack accepted for externally supplied transformations
UNITARY_CHECK = 1e-8


def _check_dims(bm: np.ndarray, h: PartitionedHamiltonian):
    if bm.shape != (h.q, h.p):
        raise DimensionMismatch(
            f"b must be {h.q}x{h.p} (fast x slow), got {bm.shape}"
        )


def bloch_hamiltonian(b, h: PartitionedHamiltonian) -> np.ndarray:
    """omega + Omega^dag B, the slow generator on the invariant graph."""
    bm = _bmat(b)
    _check_dims(bm, h)
    return h.omega + h.coupling.conj().T @ bm


def normalizers(b) -> tuple[np.ndarray, np.ndarray]:
    """(S, S~) = (sqrt(1 + B^dag B), sqrt(1 + B B^dag)).

    Both are positive definite, and S~ B = B S holds exactly in exact
    arithmetic (S~^2 B = B S^2).
    """
    bm = _bmat(b)
    q, p = bm.shape
    s = herm_sqrt(np.eye(p) + bm.conj().T @ bm, "1 + B^dag B")
    s_t = herm_sqrt(np.eye(q) + bm @ bm.conj().T, "1 + B B^dag")
    return s, s_t


def hermitized_hamiltonian(b, h: PartitionedHamiltonian) -> np.ndarray:
    """S^-1 (omega + Omega^dag b + b^dag Omega + b^dag delta b) S^-1.

    Hermitian for every candidate b, solution or not. When b has a small
    embedding residual this equals S h_bloch S^-1, so it is isospectral to
    the Bloch Hamiltonian at convergence.
    """
    bm = _bmat(b)
    _check_dims(bm, h)
    om = h.coupling
    # hermitian by inspection for any b: the cross terms are daggers of each
    # other and b^dag delta b inherits hermiticity from delta
    mid = h.omega + om.conj().T @ bm + bm.conj().T @ om + bm.conj().T @ h.delta @ bm
    s_inv = herm_inv_sqrt(np.eye(h.p) + bm.conj().T @ bm, "1 + b^dag b")
    return s_inv @ mid @ s_inv


def fast_companion(b, h: PartitionedHamiltonian) -> np.ndarray:
    """S~^-1 (delta - Omega b^dag - b Omega^dag + b omega b^dag) S~^-1."""
    bm = _bmat(b)
    _check_dims(bm, h)
    om = h.coupling
    mid = h.delta - om @ bm.conj().T - bm @ om.conj().T + bm @ h.omega @ bm.conj().T
    st_inv = herm_inv_sqrt(np.eye(h.q) + bm @ bm.conj().T, "1 + b b^dag")
    return st_inv @ mid @ st_inv


def diagonalizer(b) -> np.ndarray:
    """X = [[1, -B^dag], [B, 1]] diag(S^-1, S~^-1), unitary for any B.

    Unitarity needs no solution property: the unnormalized column blocks are
    orthogonal and their Gram matrix is exactly diag(1+B^dag B, 1+B B^dag).
    """
    bm = _bmat(b)
    q, p = bm.shape
    s_inv = herm_inv_sqrt(np.eye(p) + bm.conj().T @ bm, "1 + B^dag B")
    st_inv = herm_inv_sqrt(np.eye(q) + bm @ bm.conj().T, "1 + B B^dag")
    x = np.zeros((p + q, p + q), dtype=complex)
    x[:p, :p] = s_inv
    x[:p, p:] = -bm.conj().T @ st_inv
    x[p:, :p] = bm @ s_inv
    x[p:, p:] = st_inv
    return x


def triangularize(
    b, h: PartitionedHamiltonian, tol: float | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Similarity L H L^-1 with L = [[S, 0], [-S~ B, S~]].

    For an (approximate) solution b the transform is upper block-triangular:
    the lower-left block is S~ (embedding residual) S^-1, the diagonal blocks
    are similar to h_bloch and to delta - B Omega^dag, and the bounded
    upper-right block is S Omega^dag S~^-1, returned separately.

    Raises NotASolution when residual(b) > tol * ||delta|| (default
    TOL.solution_residual), since the triangular reading is meaningless far
    from the solution manifold.
    """
    bm = _bmat(b)
    _check_dims(bm, h)
    if tol is None:
        tol = TOL.solution_residual
    res = residual(bm, h)
    n_delta = diagnostics(h).norms["delta"]
    if res > tol * n_delta:
        raise NotASolution(
            f"candidate residual {res:.3e} exceeds {tol:g} * ||delta|| = {tol * n_delta:.3e}"
        )

    s, s_t = normalizers(bm)
    p, q = h.p, h.q
    lmat = np.zeros((p + q, p + q), dtype=complex)
    lmat[:p, :p] = s
    lmat[p:, :p] = -s_t @ bm
    lmat[p:, p:] = s_t
    # explicit inverse: [[S^-1, 0], [B S^-1, S~^-1]]
    rmat = np.zeros((p + q, p + q), dtype=complex)
    rmat[:p, :p] = herm_inv_sqrt(np.eye(p) + bm.conj().T @ bm, "1 + b^dag b")
    rmat[p:, :p] = bm @ rmat[:p, :p]
    rmat[p:, p:] = herm_inv_sqrt(np.eye(q) + bm @ bm.conj().T, "1 + b b^dag")

    upper = lmat @ assemble(h) @ rmat
    offdiag = s @ h.coupling.conj().T @ np.linalg.inv(s_t)
    return upper, offdiag


@dataclass(frozen=True)
class EffectiveModel:
    """Everything derived from one (b, H) pair."""

    h_bloch: np.ndarray
    h_alpha: np.ndarray
    h_gamma: np.ndarray
    s_b: np.ndarray
    s_b_tilde: np.ndarray
    x: np.ndarray
    source: WaveOperator
    hamiltonian: PartitionedHamiltonian


def build_model(b: WaveOperator, h: PartitionedHamiltonian) -> EffectiveModel:
    """Assemble the full effective model from a wave operator candidate."""
    s, s_t = normalizers(b)
    return EffectiveModel(
        h_bloch=bloch_hamiltonian(b, h),
        h_alpha=hermitized_hamiltonian(b, h),
        h_gamma=fast_companion(b, h),
        s_b=s,
        s_b_tilde=s_t,
        x=diagonalizer(b),
        source=b if isinstance(b, WaveOperator) else None,
        hamiltonian=h,
    )


def sylvester_decouple(model: EffectiveModel) -> np.ndarray:
    """Solve h_alpha Y - Y h_gamma = S Omega^dag S~^-1.

    Conjugating the triangular form by [[1, Y], [0, 1]] then removes the
    bounded off-diagonal block, completing the decoupling along the similarity
    route. Requires disjoint spectra of h_alpha and h_gamma.
    """
    h = model.hamiltonian
    rhs = model.s_b @ h.coupling.conj().T @ np.linalg.inv(model.s_b_tilde)
    return sylvester_solve(model.h_alpha, model.h_gamma, rhs)


def _check_unitary(x: np.ndarray) -> np.ndarray:
    x = as_cmatrix(x, "x")
    n = x.shape[0]
    if x.shape != (n, n):
        raise DimensionMismatch(f"transformation must be square, got {x.shape}")
    defect = spectral_norm(x.conj().T @ x - np.eye(n))
    if defect > UNITARY_CHECK:
        raise NotUnitary(f"unitarity defect {defect:.3e} exceeds {UNITARY_CHECK:g}")
    return x


def dressed_projector(x, p: int) -> np.ndarray:
    """P_X = X P X^dag with P = diag(1_p, 0): projector onto the dressed slow sector."""
    x = _check_unitary(x)
    n = x.shape[0]
    if not 0 < p <= n:
        raise DimensionMismatch(f"slow dimension must be in 1..{n}, got {p}")
    return x[:, :p] @ x[:, :p].conj().T


def effective_observable(a, x, p: int) -> np.ndarray:
    """A_eff = P X^-1 A X P: the slow block of the dressed observable."""
    a = as_cmatrix(a, "a")
    x = as_cmatrix(x, "x")
    if a.shape != x.shape:
        raise DimensionMismatch(f"observable {a.shape} does not match X {x.shape}")
    dressed = np.linalg.solve(x, a @ x)
    return dressed[:p, :p]


def effective_density(rho, rho0, x, p: int) -> np.ndarray:
    """rho_eff = P X^-1 rho X P / Tr[X P X^-1 rho0].

    The denominator is the dressed slow weight of the reference state rho0
    (the initial condition), so the effective density of rho0 itself has
    trace one.
    """
    rho = as_cmatrix(rho, "rho")
    rho0 = as_cmatrix(rho0, "rho0")
    x = as_cmatrix(x, "x")
    n = x.shape[0]
    if rho.shape != (n, n) or rho0.shape != (n, n):
        raise DimensionMismatch("density matrices must match the transformation size")
    xinv = np.linalg.inv(x)
    weight = np.trace(x[:, :p] @ xinv[:p, :] @ rho0)
    if abs(weight) <= 1e-12:
        raise SlowSectorEmpty(
            f"initial state has dressed slow weight {abs(weight):.3e}"
        )
    return (xinv @ rho @ x)[:p, :p] / weight
