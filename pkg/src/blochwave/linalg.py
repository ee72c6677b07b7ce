"""Dense complex matrix kernels.

Everything downstream reduces to these: spectral norm, hermitian and general
eigendecompositions, positive-definite square roots, matrix exponentials and
a Sylvester solver. Matrices are plain ``numpy.ndarray`` with complex dtype;
"operator norm" always means the spectral norm (largest singular value).
"""

from __future__ import annotations

import numpy as np

from .config import TOL
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NotPositiveDefinite,
    SpectraOverlap,
)

__all__ = [
    "as_cmatrix",
    "spectral_norm",
    "herm_defect",
    "check_hermitian",
    "herm_eig",
    "herm_sqrt",
    "herm_inv_sqrt",
    "mat_exp",
    "sylvester_solve",
]


def as_cmatrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite 2-d complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch(f"{name}: expected a 2-d array, got ndim={a.ndim}")
    # real/imag views work for any memory layout, unlike a flat float view
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ValueError(f"{name}: entries must be finite")
    return a


def spectral_norm(m) -> float:
    """Largest singular value of ``m``."""
    a = as_cmatrix(m)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def herm_defect(m) -> float:
    """Spectral-norm distance to the hermitian part, ||m - m^dag||."""
    a = as_cmatrix(m)
    return spectral_norm(a - a.conj().T)


def check_hermitian(m, name: str = "matrix") -> np.ndarray:
    """Validate hermiticity within TOL.herm_check relative and return the array.

    The bound is ||m - m^dag|| <= tol * (1 + ||m||), so the zero matrix and
    tiny matrices are not held to an absolute scale.
    """
    a = as_cmatrix(m, name)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name}: hermitian matrix must be square, got {a.shape}")
    if herm_defect(a) > TOL.herm_check * (1.0 + spectral_norm(a)):
        raise ValueError(f"{name}: not hermitian within tolerance {TOL.herm_check:g}")
    return a


def herm_eig(m, name: str = "matrix") -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a hermitian matrix.

    Returns (w, V) with w real ascending and m = V diag(w) V^dag.
    """
    a = check_hermitian(m, name)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails
        raise ConvergenceFailure(f"eigensolver failed on {name}: {exc}") from exc
    return w, v


def _herm_power(m, power: float, name: str) -> np.ndarray:
    w, v = herm_eig(m, name)
    if w[0] <= TOL.sqrt_floor:
        raise NotPositiveDefinite(
            f"{name}: eigenvalue {w[0]:.3e} is not positive", eigenvalue=float(w[0])
        )
    r = (v * (w ** power)) @ v.conj().T
    # symmetrize away roundoff so results chain cleanly
    return 0.5 * (r + r.conj().T)


def herm_sqrt(m, name: str = "matrix") -> np.ndarray:
    """Hermitian square root of a positive-definite hermitian matrix."""
    return _herm_power(m, 0.5, name)


def herm_inv_sqrt(m, name: str = "matrix") -> np.ndarray:
    """Hermitian inverse square root of a positive-definite hermitian matrix."""
    return _herm_power(m, -0.5, name)


def mat_exp(m, scale: complex = 1.0) -> np.ndarray:
    """exp(scale * m) for a square matrix.

    Hermitian inputs go through the eigendecomposition, which keeps
    exp(-i t H) unitary to roundoff. General inputs use scaling-and-squaring.
    """
    a = as_cmatrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"mat_exp: matrix must be square, got {a.shape}")
    if herm_defect(a) <= TOL.herm_check * (1.0 + spectral_norm(a)):
        w, v = np.linalg.eigh(a)
        return (v * np.exp(scale * w)) @ v.conj().T
    from scipy.linalg import expm

    return expm(scale * a)


def sylvester_solve(a, c, rhs) -> np.ndarray:
    """Solve a Y - Y c = rhs for Y.

    The solution is unique iff the spectra of ``a`` (q x q) and ``c`` (p x p)
    are disjoint; a minimum pairwise gap relative to max(||a||, ||c||) is
    enforced up front and SpectraOverlap reports the closest pair. The solve
    itself is the Kronecker-vectorized dense system
    (I_p (x) a - c^T (x) I_q) vec(Y) = vec(rhs) in column-major vec.
    """
    a = as_cmatrix(a, "a")
    c = as_cmatrix(c, "c")
    rhs = as_cmatrix(rhs, "rhs")
    q, p = a.shape[0], c.shape[0]
    if a.shape != (q, q) or c.shape != (p, p) or rhs.shape != (q, p):
        raise DimensionMismatch(
            f"sylvester_solve: incompatible shapes a={a.shape} c={c.shape} rhs={rhs.shape}"
        )

    ev_a = np.linalg.eigvals(a)
    ev_c = np.linalg.eigvals(c)
    gaps = np.abs(ev_a[:, None] - ev_c[None, :])
    i, j = np.unravel_index(np.argmin(gaps), gaps.shape)
    scale = max(spectral_norm(a), spectral_norm(c), 1e-300)
    if gaps[i, j] <= TOL.sylvester_gap * scale:
        raise SpectraOverlap(
            "sylvester_solve: spectra overlap, closest eigenvalue pair "
            f"({ev_a[i]:.6g}, {ev_c[j]:.6g}) with gap {gaps[i, j]:.3e}",
            closest_pair=(complex(ev_a[i]), complex(ev_c[j])),
        )

    big = np.kron(np.eye(p), a) - np.kron(c.T, np.eye(q))
    y = np.linalg.solve(big, rhs.flatten(order="F")).reshape((q, p), order="F")

    res = spectral_norm(a @ y - y @ c - rhs)
    ref = spectral_norm(rhs)
    if ref > 0 and res > TOL.sylvester_residual * max(ref, scale * spectral_norm(y)):
        raise ConvergenceFailure(
            f"sylvester_solve: residual {res:.3e} above tolerance"
        )  # pragma: no cover - dense solve on gapped spectra does not get here
    return y
