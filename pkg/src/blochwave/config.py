"""Numerical tolerances used across the package.

A single mutable instance ``TOL`` is consulted at call time, so a test or an
application may tighten/loosen a knob globally. All bounds are relative
unless the name says otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Tolerances:
    # hermiticity check on construction, relative to 1 + spectral norm
    herm_check: float = 1e-12
    # smallest admissible |eigenvalue| of the fast block, relative to its norm
    delta_invertible: float = 1e-12
    # eigenvalue floor for matrix square roots (absolute)
    sqrt_floor: float = 1e-14
    # minimum pairwise spectral gap for Sylvester solves, relative
    sylvester_gap: float = 1e-10
    # accepted Sylvester residual, relative
    sylvester_residual: float = 1e-10
    # fixed-point stopping rule: residual <= fixed_point * ||Delta||
    fixed_point: float = 1e-12
    fixed_point_max_iter: int = 200
    # two-cycle probe: a step this small closes a 2-cycle ...
    cycle_close: float = 1e-12
    # ... only if the single step is still this large
    cycle_motion: float = 1e-8
    # residual (relative to ||Delta||) above which a candidate no longer
    # counts as an approximate solution for the triangular similarity
    solution_residual: float = 1e-6
    # norm-conservation bound for exact propagation (absolute)
    norm_conservation: float = 1e-9


TOL = Tolerances()
