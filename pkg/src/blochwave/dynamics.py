"""Time evolution on a grid and accuracy metrics.

Hamiltonians here are time independent, so propagation goes through the
eigendecomposition (one dense solve, then exact exponentials per grid point)
rather than an ODE integrator; there is no step-size error to disentangle
from the reduction error being measured.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import maximum_filter1d

from .config import TOL
from .embedding import _bmat
from .errors import ConvergenceFailure, DimensionMismatch, GridMismatch
from .linalg import as_cmatrix, herm_defect, mat_exp, spectral_norm

__all__ = [
    "Trajectory",
    "ComparisonReport",
    "propagate_exact",
    "propagate_effective",
    "embed_slow_state",
    "embed_trajectory",
    "norm_leakage",
    "envelope",
    "compare",
]


@dataclass(frozen=True)
class Trajectory:
    """Amplitudes on a time grid plus derived populations and norms.

    amplitudes has shape (n_states, n_times); populations are |amplitude|^2
    and norms their per-time sum. Norms are not necessarily 1: non-hermitian
    generators leak, and embedded slow states carry the reconstructed fast
    weight.
    """

    times: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        a = np.asarray(self.amplitudes, dtype=complex)
        if t.ndim != 1 or a.ndim != 2 or a.shape[1] != t.size:
            raise DimensionMismatch(
                f"amplitudes {a.shape} do not match {t.size} time points"
            )
        if t.size >= 2 and np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly ascending")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "amplitudes", a)

    @property
    def n_states(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @property
    def norms(self) -> np.ndarray:
        return np.sum(self.populations, axis=0)


@dataclass(frozen=True)
class ComparisonReport:
    """Accuracy metrics of an effective trajectory against the exact one."""

    max_population_error: np.ndarray
    norm_leakage: float
    envelope_rms_error: float


def _check_state(v, n: int | None = None, name: str = "state") -> np.ndarray:
    vec = np.asarray(v, dtype=complex).reshape(-1)
    if n is not None and vec.size != n:
        raise DimensionMismatch(f"{name} must have {n} components, got {vec.size}")
    if abs(np.linalg.norm(vec) - 1.0) > 1e-12:
        raise ValueError(f"{name} must be normalized to 1 within 1e-12")
    return vec


def propagate_exact(h, psi0, times) -> Trajectory:
    """psi(t) = exp(-i H t) psi0 for hermitian H; norm conserved to 1e-9."""
    a = as_cmatrix(h, "H")
    t = np.asarray(times, dtype=float)
    psi = _check_state(psi0, a.shape[0], "psi0")
    if herm_defect(a) > TOL.herm_check * (1.0 + spectral_norm(a)):
        raise ValueError("propagate_exact requires a hermitian Hamiltonian")
    w, v = np.linalg.eigh(a)
    coeff = v.conj().T @ psi
    amps = v @ (np.exp(-1j * np.outer(w, t)) * coeff[:, None])
    traj = Trajectory(times=t, amplitudes=amps)
    drift = np.max(np.abs(traj.norms - traj.norms[0]))
    if drift > TOL.norm_conservation:
        raise ConvergenceFailure(
            f"exact propagation lost norm by {drift:.3e}"
        )  # pragma: no cover - eigh keeps unitarity to roundoff
    return traj


def propagate_effective(h_eff, alpha0, times) -> Trajectory:
    """alpha(t) = exp(-i h_eff t) alpha0 for a general square generator.

    Diagonalizable generators go through their eigenbasis; if the eigenbasis
    is too ill-conditioned to trust, each grid point falls back to a dense
    matrix exponential. Norm is not conserved unless h_eff is hermitian.
    """
    a = as_cmatrix(h_eff, "h_eff")
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"h_eff must be square, got {a.shape}")
    t = np.asarray(times, dtype=float)
    alpha = _check_state(alpha0, a.shape[0], "alpha0")

    if herm_defect(a) <= TOL.herm_check * (1.0 + spectral_norm(a)):
        w, v = np.linalg.eigh(a)
        amps = v @ (np.exp(-1j * np.outer(w, t)) * (v.conj().T @ alpha)[:, None])
        return Trajectory(times=t, amplitudes=amps)

    w, v = np.linalg.eig(a)
    recon = spectral_norm((v * w) @ np.linalg.inv(v) - a)
    if np.linalg.cond(v) < 1e12 and recon <= 1e-10 * max(1.0, spectral_norm(a)):
        coeff = np.linalg.solve(v, alpha)
        amps = v @ (np.exp(-1j * np.outer(w, t)) * coeff[:, None])
        return Trajectory(times=t, amplitudes=amps)

    # defective or near-defective generator: exponentiate point by point
    amps = np.empty((a.shape[0], t.size), dtype=complex)
    for i, ti in enumerate(t):
        amps[:, i] = mat_exp(a, -1j * ti) @ alpha
    return Trajectory(times=t, amplitudes=amps)


def embed_slow_state(alpha, b, normalized: bool = False) -> np.ndarray:
    """Lift a slow vector onto the invariant graph: (alpha, B alpha).

    With normalized=True the result is divided by
    sqrt(<alpha, (1 + B^dag B) alpha>), the graph norm that the hermitized
    evolution conserves; otherwise the raw graph point is returned and its
    norm exceeds ||alpha|| by the reconstructed fast weight.
    """
    bm = _bmat(b)
    vec = np.asarray(alpha, dtype=complex).reshape(-1)
    if vec.size != bm.shape[1]:
        raise DimensionMismatch(
            f"alpha must have {bm.shape[1]} components, got {vec.size}"
        )
    full = np.concatenate([vec, bm @ vec])
    if normalized:
        full = full / np.linalg.norm(full)
    return full


def embed_trajectory(traj: Trajectory, b, normalized: bool = False) -> Trajectory:
    """Apply embed_slow_state to every column of a slow trajectory."""
    bm = _bmat(b)
    if traj.n_states != bm.shape[1]:
        raise DimensionMismatch(
            f"trajectory has {traj.n_states} states, b expects {bm.shape[1]}"
        )
    full = np.vstack([traj.amplitudes, bm @ traj.amplitudes])
    if normalized:
        full = full / np.linalg.norm(full, axis=0, keepdims=True)
    return Trajectory(times=traj.times, amplitudes=full)


def norm_leakage(traj: Trajectory) -> float:
    """max over the grid of |1 - sum of populations|."""
    return float(np.max(np.abs(1.0 - traj.norms)))


def envelope(values: np.ndarray, times: np.ndarray, window: float) -> np.ndarray:
    """Moving maximum of a sampled signal over a time window.

    The window is given in time units and converted to an odd number of grid
    steps; it should cover about one fast oscillation period so that the
    envelope tracks the slow dynamics only.
    """
    if window <= 0:
        raise ValueError("envelope window must be positive")
    if times.size < 2:
        return np.asarray(values, dtype=float).copy()
    dt = times[1] - times[0]
    steps = max(1, int(round(window / dt)))
    return maximum_filter1d(np.asarray(values, dtype=float), size=2 * (steps // 2) + 1, mode="nearest")


def compare(
    exact: Trajectory,
    effective: Trajectory,
    states=None,
    envelope_window: float = 2.0 * math.pi,
) -> ComparisonReport:
    """Accuracy metrics of ``effective`` against ``exact`` on a shared grid.

    states lists which basis states enter the per-state error and the
    envelope comparison (default: all states present in both trajectories).
    norm_leakage refers to the effective trajectory alone. envelope_window
    is one fast period, 2 pi / ||delta||, in the time units of the grid; the
    default assumes a unit fast scale.
    """
    if exact.times.shape != effective.times.shape or not np.array_equal(
        exact.times, effective.times
    ):
        raise GridMismatch("trajectories are sampled on different time grids")
    if states is None:
        states = list(range(min(exact.n_states, effective.n_states)))
    states = list(states)
    for s in states:
        if not (0 <= s < exact.n_states and 0 <= s < effective.n_states):
            raise DimensionMismatch(f"state index {s} out of range")

    pop_x = exact.populations
    pop_f = effective.populations
    max_err = np.array(
        [float(np.max(np.abs(pop_x[s] - pop_f[s]))) for s in states]
    )

    sq = 0.0
    for s in states:
        e_x = envelope(pop_x[s], exact.times, envelope_window)
        e_f = envelope(pop_f[s], exact.times, envelope_window)
        sq += float(np.mean((e_x - e_f) ** 2))
    env_rms = math.sqrt(sq / len(states)) if states else 0.0

    return ComparisonReport(
        max_population_error=max_err,
        norm_leakage=norm_leakage(effective),
        envelope_rms_error=env_rms,
    )
