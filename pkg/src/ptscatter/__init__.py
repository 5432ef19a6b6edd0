"""ptscatter: transfer-matrix scattering off 1D real and PT-symmetric potentials.

Compute 2x2 transfer matrices and (T, R_left, R_right) amplitudes by an exact
slab-product backend or an adaptive integrator, check the full catalog of
reciprocity/unitarity identities as numerical residuals, and scan wavenumber
intervals for spectral singularities, one-sided reflectionless points, and
invisible points.
"""
from .catalog import builtin_potential, builtin_potentials, corpus
from .identities import (
    IDENTITY_IDS,
    IdentityEntry,
    IdentityReport,
    PhaseRecord,
    identity_report,
    phases,
)
from .kernels import USING_COMPILED
from .potentials import (
    AnalyticPotential,
    LayerPotential,
    Potential,
    PotentialError,
    SampledPotential,
    SymmetryClass,
    classify_symmetry,
    parse_potential_spec,
)
from .scan import (
    Feature,
    ScanResult,
    SweepResult,
    check_invisibility,
    find_spectral_singularities,
    find_unidirectional_points,
    sweep,
)
from .symmetry import (
    apply_action,
    apply_parity,
    apply_pt,
    apply_time_reversal,
    invariance_residual,
)
from .transfer import (
    AsymptoticCoefficients,
    BackendError,
    ConvergenceError,
    ScatteringData,
    TransferMatrix,
    apply_transfer,
    compute_transfer,
    layer_matrix,
    matrix_from_amplitudes,
    negative_k_matrix,
    scattering_at,
    scattering_data,
    stack_matrices,
    transfer_matrix_ode,
    transfer_matrix_stack,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticPotential",
    "AsymptoticCoefficients",
    "BackendError",
    "ConvergenceError",
    "Feature",
    "IDENTITY_IDS",
    "IdentityEntry",
    "IdentityReport",
    "LayerPotential",
    "PhaseRecord",
    "Potential",
    "PotentialError",
    "SampledPotential",
    "ScanResult",
    "ScatteringData",
    "SweepResult",
    "SymmetryClass",
    "TransferMatrix",
    "USING_COMPILED",
    "apply_action",
    "apply_parity",
    "apply_pt",
    "apply_time_reversal",
    "apply_transfer",
    "builtin_potential",
    "builtin_potentials",
    "check_invisibility",
    "classify_symmetry",
    "compute_transfer",
    "corpus",
    "find_spectral_singularities",
    "find_unidirectional_points",
    "identity_report",
    "invariance_residual",
    "layer_matrix",
    "matrix_from_amplitudes",
    "negative_k_matrix",
    "parse_potential_spec",
    "phases",
    "scattering_at",
    "scattering_data",
    "stack_matrices",
    "sweep",
    "transfer_matrix_ode",
    "transfer_matrix_stack",
    "__version__",
]
