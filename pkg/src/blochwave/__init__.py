"""Effective slow-sector dynamics via the reduced Bloch wave operator.

The package reduces a two-block-partitioned hermitian Hamiltonian

    H = [[omega, Omega^dag],
         [Omega, delta   ]]

to effective dynamics on the slow sector. The central object is the reduced
Bloch wave operator B (slow to fast, gamma = B alpha) solving

    Omega + delta B = B omega + B Omega^dag B,

computed by fixed-point iteration or by two expansion schemes, then turned
into non-hermitian and hermitized effective Hamiltonians, an explicitly
unitary block diagonalizer, dressed projectors/observables/densities, and
time evolutions with accuracy metrics.
"""

__version__ = "0.1.0"

from .config import TOL, Tolerances
from .dynamics import (
    ComparisonReport,
    Trajectory,
    compare,
    embed_slow_state,
    embed_trajectory,
    envelope,
    norm_leakage,
    propagate_exact,
    propagate_effective,
)
from .effective import (
    EffectiveModel,
    bloch_hamiltonian,
    build_model,
    diagonalizer,
    dressed_projector,
    effective_density,
    effective_observable,
    fast_companion,
    hermitized_hamiltonian,
    normalizers,
    sylvester_decouple,
    triangularize,
)
from .embedding import (
    CycleReport,
    ExpansionSeries,
    Scheme,
    WaveOperator,
    bloch_equation_defect,
    fixed_point,
    iterate,
    order_consistency,
    perturbative_series,
    residual,
    sylvester_series,
    t_map,
    two_cycle_probe,
    wave_operator,
)
from .errors import (
    BadTargets,
    BlochwaveError,
    ConvergenceFailure,
    DeltaSingular,
    DeltaZero,
    DimensionMismatch,
    GridMismatch,
    NotASolution,
    NotConverged,
    NotPositiveDefinite,
    NotUnitary,
    SlowSectorEmpty,
    SpectraOverlap,
)
from .linalg import (
    herm_eig,
    herm_inv_sqrt,
    herm_sqrt,
    mat_exp,
    spectral_norm,
    sylvester_solve,
)
from .models import (
    LambdaParams,
    lambda_benchmark,
    lambda_hamiltonian,
    lambda_manifold_coefficients,
    random_separated,
)
from .partition import (
    PartitionedHamiltonian,
    ScaleDiagnostics,
    assemble,
    diagnostics,
    split,
)

__all__ = [
    "TOL",
    "Tolerances",
    "__version__",
    # linalg
    "spectral_norm",
    "herm_eig",
    "herm_sqrt",
    "herm_inv_sqrt",
    "mat_exp",
    "sylvester_solve",
    # partition
    "PartitionedHamiltonian",
    "ScaleDiagnostics",
    "split",
    "assemble",
    "diagnostics",
    # embedding
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
    # effective
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
    # dynamics
    "Trajectory",
    "ComparisonReport",
    "propagate_exact",
    "propagate_effective",
    "embed_slow_state",
    "embed_trajectory",
    "norm_leakage",
    "envelope",
    "compare",
    # models
    "LambdaParams",
    "lambda_benchmark",
    "lambda_hamiltonian",
    "lambda_manifold_coefficients",
    "random_separated",
    # errors
    "BlochwaveError",
    "DimensionMismatch",
    "ConvergenceFailure",
    "NotPositiveDefinite",
    "SpectraOverlap",
    "DeltaSingular",
    "DeltaZero",
    "NotConverged",
    "BadTargets",
    "NotASolution",
    "NotUnitary",
    "SlowSectorEmpty",
    "GridMismatch",
]
