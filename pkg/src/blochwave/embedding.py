"""Reduced Bloch wave operator B and the three routes that compute it.

B is the q x p slow-to-fast map whose graph gamma = B alpha is invariant
under the flow of the partitioned Hamiltonian. It solves the embedding
equation

    Omega + delta B = B omega + B Omega^dag B.

Routes:
  * fixed-point iteration of T(A) = delta^-1 (-Omega + A omega + A Omega^dag A)
  * perturbative expansion B_(1), B_(2), ... (delta^-1 carries the small weight)
  * term-by-term Sylvester expansion b_0, b_1, ...

``residual`` measures how well any candidate satisfies the equation and is
the single accuracy currency used everywhere else.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .config import TOL
from .errors import DimensionMismatch, NotConverged
from .linalg import as_cmatrix, spectral_norm, sylvester_solve
from .partition import PartitionedHamiltonian, assemble, diagnostics

__all__ = [
    "Scheme",
    "WaveOperator",
    "ExpansionSeries",
    "CycleReport",
    "wave_operator",
    "residual",
    "t_map",
    "iterate",
    "fixed_point",
    "perturbative_series",
    "sylvester_series",
    "order_consistency",
    "two_cycle_probe",
    "bloch_equation_defect",
]


class Scheme(str, enum.Enum):
    """How a wave operator candidate was produced."""

    FIXED_POINT = "fixed-point"
    PERTURBATIVE = "perturbative"
    SYLVESTER = "sylvester"
    EXACT = "exact"


@dataclass(frozen=True)
class WaveOperator:
    """A candidate B with its provenance and embedding residual.

    order counts iterations (fixed point) or summed terms (expansions).
    """

    b: np.ndarray
    method: Scheme
    order: int
    residual: float


def _bmat(b) -> np.ndarray:
    """Accept a WaveOperator or a bare array wherever only B itself matters."""
    if isinstance(b, WaveOperator):
        return b.b
    return as_cmatrix(b, "b")


def residual(b, h: PartitionedHamiltonian) -> float:
    """|| Omega + delta b - b omega - b Omega^dag b ||."""
    bm = _bmat(b)
    if bm.shape != (h.q, h.p):
        raise DimensionMismatch(
            f"b must be {h.q}x{h.p} (fast x slow), got {bm.shape}"
        )
    om = h.coupling
    r = om + h.delta @ bm - bm @ h.omega - bm @ om.conj().T @ bm
    return spectral_norm(r)


def wave_operator(b, h: PartitionedHamiltonian, method: Scheme, order: int) -> WaveOperator:
    """Wrap a candidate matrix with its recomputed residual."""
    bm = _bmat(b)
    return WaveOperator(
        b=bm, method=Scheme(method), order=int(order), residual=residual(bm, h)
    )


def t_map(b, h: PartitionedHamiltonian) -> np.ndarray:
    """One application of T(A) = delta^-1 (-Omega + A omega + A Omega^dag A)."""
    bm = _bmat(b)
    if bm.shape != (h.q, h.p):
        raise DimensionMismatch(
            f"b must be {h.q}x{h.p} (fast x slow), got {bm.shape}"
        )
    dinv = h.delta_inv()
    om = h.coupling
    return dinv @ (-om + bm @ h.omega + bm @ om.conj().T @ bm)


def _seed(h: PartitionedHamiltonian) -> np.ndarray:
    # B^(0) = T(0) = -delta^-1 Omega, the lowest-order elimination
    return -h.delta_inv() @ h.coupling


# entries past this can only come from a diverging iteration; one or two
# further maps would overflow float64 inside the residual products
_BLOWUP = 1e100


def iterate(h: PartitionedHamiltonian, k: int) -> WaveOperator:
    """Exactly the k-th iterate B^(k): the seed B^(0) followed by k maps T."""
    if k < 0:
        raise ValueError("iteration index must be >= 0")
    b = _seed(h)
    for j in range(k):
        b = t_map(b, h)
        if not np.abs(b).max() < _BLOWUP:
            raise NotConverged(
                f"iteration diverged after {j + 1} of {k} map applications",
                last_residual=math.inf,
            )
    return wave_operator(b, h, Scheme.FIXED_POINT, k)


def fixed_point(
    h: PartitionedHamiltonian,
    max_iter: int | None = None,
    tol: float | None = None,
) -> WaveOperator:
    """Iterate T to convergence: residual <= tol * ||delta||.

    The convergence condition eps' <= (1-eps)/2 is sufficient, not necessary,
    so a non-convergent verdict only warns; the budget still applies. order
    on the result counts T evaluations including the seed. Raises
    NotConverged (carrying the last residual) when the budget is exhausted.
    """
    if max_iter is None:
        max_iter = TOL.fixed_point_max_iter
    if tol is None:
        tol = TOL.fixed_point
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")

    diag = diagnostics(h)
    if not diag.convergent:
        warnings.warn(
            f"instance outside the guaranteed ball (eps={diag.eps:.3g}, "
            f"eps'={diag.eps_prime:.3g}); iterating anyway",
            RuntimeWarning,
            stacklevel=2,
        )

    goal = tol * diag.norms["delta"]
    b = _seed(h)
    used = 1
    res = residual(b, h)
    while res > goal and used < max_iter:
        b = t_map(b, h)
        used += 1
        # outside the ball the iteration blows up doubly exponentially;
        # catch that before the residual products overflow (nan fails < too)
        if not np.abs(b).max() < _BLOWUP:
            raise NotConverged(
                f"fixed point diverged after {used} iterations",
                last_residual=math.inf,
            )
        res = residual(b, h)
    if res > goal:
        raise NotConverged(
            f"fixed point not converged after {used} iterations "
            f"(residual {res:.3e} > {goal:.3e})",
            last_residual=res,
        )
    return WaveOperator(b=b, method=Scheme.FIXED_POINT, order=used, residual=res)


@dataclass(frozen=True)
class ExpansionSeries:
    """Ordered expansion terms for one of the two series schemes."""

    terms: tuple[np.ndarray, ...]
    scheme: Scheme

    def partial_sum(self, n_terms: int | None = None) -> np.ndarray:
        """Sum of the first n_terms terms (all terms when None)."""
        if n_terms is None:
            n_terms = len(self.terms)
        if not 0 < n_terms <= len(self.terms):
            raise ValueError(
                f"n_terms must be in 1..{len(self.terms)}, got {n_terms}"
            )
        return sum(self.terms[1:n_terms], start=self.terms[0].copy())

    def as_wave_operator(self, h: PartitionedHamiltonian, n_terms: int | None = None) -> WaveOperator:
        n = len(self.terms) if n_terms is None else n_terms
        return wave_operator(self.partial_sum(n), h, self.scheme, n)


def perturbative_series(h: PartitionedHamiltonian, order: int) -> ExpansionSeries:
    """Terms B_(1) .. B_(order) of the expansion in powers of delta^-1.

    B_(1) = -delta^-1 Omega and

        B_(k+1) = delta^-1 [ B_(k) omega + sum_{l=1}^{k-1} B_(k-l) Omega^dag B_(l) ].
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    dinv = h.delta_inv()
    omd = h.coupling.conj().T
    terms = [_seed(h)]
    for k in range(1, order):
        acc = terms[k - 1] @ h.omega
        for l in range(1, k):
            acc = acc + terms[k - l - 1] @ omd @ terms[l - 1]
        terms.append(dinv @ acc)
    return ExpansionSeries(terms=tuple(terms), scheme=Scheme.PERTURBATIVE)


def sylvester_series(h: PartitionedHamiltonian, order: int) -> ExpansionSeries:
    """Terms b_0 .. b_order, each solving a Sylvester equation.

        delta b_0 - b_0 omega = -Omega
        delta b_(k+1) - b_(k+1) omega = sum_{l=0}^{k} b_(k-l) Omega^dag b_(l)

    Requires the spectra of delta and omega to be disjoint.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    omd = h.coupling.conj().T
    terms = [sylvester_solve(h.delta, h.omega, -h.coupling)]
    for k in range(order):
        rhs = np.zeros_like(terms[0])
        for l in range(k + 1):
            rhs = rhs + terms[k - l] @ omd @ terms[l]
        terms.append(sylvester_solve(h.delta, h.omega, rhs))
    return ExpansionSeries(terms=tuple(terms), scheme=Scheme.SYLVESTER)


def order_consistency(h: PartitionedHamiltonian, k: int) -> float:
    """|| B^(k) - sum_{l<=k+1} B_(l) ||.

    The difference is formally of order delta^-(k+2): doubling delta while
    holding omega and Omega fixed should shrink it by at least 2^(k+1).
    """
    bk = iterate(h, k).b
    series = perturbative_series(h, k + 1)
    return spectral_norm(bk - series.partial_sum())


@dataclass(frozen=True)
class CycleReport:
    cycle_detected: bool
    min_step: float


def two_cycle_probe(h: PartitionedHamiltonian, max_iter: int | None = None) -> CycleReport:
    """Look for a 2-cycle of T along the orbit of B^(0).

    A cycle is flagged when consecutive iterates still move
    (||B^(k+1) - B^(k)|| > TOL.cycle_motion) while the two-step map returns
    (||B^(k+2) - B^(k)|| <= TOL.cycle_close). On convergent instances the
    orbit contracts and no cycle exists.
    """
    if max_iter is None:
        max_iter = TOL.fixed_point_max_iter
    b_prev = _seed(h)
    b_cur = t_map(b_prev, h)
    min_step = spectral_norm(b_cur - b_prev)
    detected = False
    for _ in range(max_iter):
        if min_step <= TOL.cycle_close:
            break  # orbit has stopped moving, cannot cycle
        b_next = t_map(b_cur, h)
        step = spectral_norm(b_next - b_cur)
        two_step = spectral_norm(b_next - b_prev)
        min_step = min(min_step, step)
        if two_step <= TOL.cycle_close and step > TOL.cycle_motion:
            detected = True
            break
        b_prev, b_cur = b_cur, b_next
    return CycleReport(cycle_detected=detected, min_step=min_step)


def bloch_equation_defect(b, h: PartitionedHamiltonian) -> float:
    """|| [H, script_B] script_B || for script_B = [[1, 0], [B, 0]].

    Vanishes exactly when B solves the embedding equation; for a candidate
    with residual r it is bounded by (2 + 2||B||) r up to the norm of H.
    """
    bm = _bmat(b)
    p, q = h.p, h.q
    big = np.zeros((p + q, p + q), dtype=complex)
    big[:p, :p] = np.eye(p)
    big[p:, :p] = bm
    ham = assemble(h)
    comm = ham @ big - big @ ham
    return spectral_norm(comm @ big)
