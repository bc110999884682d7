"""Hardy-space calculus for Liouville operators of holomorphic vector fields.

Polynomials truncated at a fixed order stand in for Hardy-space functions;
evaluation and derivative kernels, occupation kernels along trajectories,
operator truncations and their adjoints, spectral constructions, and
weighted-composition norm certificates all act on that shared
representation.  The :mod:`hardyliou.dmd` submodule fits the data-driven
compression from trajectory snapshots.
"""

import os as _os

# HARDYLIOU_THREADS caps BLAS parallelism; must land before numpy loads
_threads = _os.environ.get("HARDYLIOU_THREADS")
if _threads:
    for _var in (
        "OMP_NUM_THREADS",
        "OPENBLAS_NUM_THREADS",
        "MKL_NUM_THREADS",
        "NUMEXPR_NUM_THREADS",
    ):
        _os.environ.setdefault(_var, _threads)
del _os, _threads

from .errors import (
    AliasingError,
    CompositionOutOfDiskError,
    CompositionWarning,
    ConfigError,
    DiskDomainError,
    DiskExitError,
    EigenConvergenceError,
    HardyliouError,
    IllConditionedError,
    InsufficientDataError,
    InvalidIndexError,
    InvalidKernelSpecError,
    LogDomainError,
    LowConfidenceWarning,
    SingularSymbolError,
    SymbolHasZerosError,
    TrajectoryIngestionError,
    TrajectoryMismatchWarning,
)
from .series import (
    DEFAULT_ORDER,
    BoundaryGrid,
    KernelSpec,
    TaylorPolynomial,
    antiderivative,
    compose,
    default_boundary_size,
    derivative,
    derivative_kernel,
    exp_series,
    geometric_tail,
    inner_product,
    kernel,
    kernel_tail,
    monomial,
    multiply,
    norm,
    outer_from_modulus,
    project_h2,
    reciprocal,
    szego_kernel,
    to_boundary,
    unit_circle_points,
)
from .operators import (
    OperatorMatrix,
    SmirnovPair,
    adjoint_apply_boundary,
    adjoint_matrix,
    adjoint_on_derivative_kernel,
    domain_membership_check,
    hermitian_defect,
    liouville_matrix,
    modulus_identity_defect,
    scaled_liouville_matrix,
    smirnov_decompose,
    weighted_liouville_matrix,
)
from .spectral import (
    EigenPair,
    eigendecompose,
    exp_eigenfunction,
    flow_check,
    hk_eigenfunction,
    monic_from_zeros,
    zero_eigenspace,
    zero_free_certificate,
)
from .occupation import (
    OccupationKernel,
    Trajectory,
    adjoint_on_signal,
    endpoint_kernel_difference,
    field_defect,
    integrate_ode,
    liouville_occupation_residual,
    occupation_kernel,
    read_trajectory_csv,
    weighted_occupation_residual,
    write_trajectory_csv,
)
from .weighted import (
    BlaschkeProduct,
    BoundednessResult,
    HsNormResult,
    RadialProfile,
    SelfAdjointDefect,
    blaschke_bound,
    blaschke_ratio_profile,
    boundedness_bound,
    compactness_profile,
    hs_norm,
    monomial_norm_sequence,
    normalized_kernel_action_sq,
    occupation_self_adjoint_relation,
    polar_grid,
    self_adjoint_symbol_relation,
    weighted_adjoint_on_kernel,
)
from . import dmd

__version__ = "0.1.0"

__all__ = [
    "AliasingError",
    "BlaschkeProduct",
    "BoundaryGrid",
    "BoundednessResult",
    "CompositionOutOfDiskError",
    "CompositionWarning",
    "ConfigError",
    "DEFAULT_ORDER",
    "DiskDomainError",
    "DiskExitError",
    "EigenConvergenceError",
    "EigenPair",
    "HardyliouError",
    "HsNormResult",
    "IllConditionedError",
    "InsufficientDataError",
    "InvalidIndexError",
    "InvalidKernelSpecError",
    "KernelSpec",
    "LogDomainError",
    "LowConfidenceWarning",
    "OccupationKernel",
    "OperatorMatrix",
    "RadialProfile",
    "SelfAdjointDefect",
    "SingularSymbolError",
    "SmirnovPair",
    "SymbolHasZerosError",
    "TaylorPolynomial",
    "Trajectory",
    "TrajectoryIngestionError",
    "TrajectoryMismatchWarning",
    "adjoint_apply_boundary",
    "adjoint_matrix",
    "adjoint_on_derivative_kernel",
    "adjoint_on_signal",
    "antiderivative",
    "blaschke_bound",
    "blaschke_ratio_profile",
    "boundedness_bound",
    "compactness_profile",
    "compose",
    "default_boundary_size",
    "derivative",
    "derivative_kernel",
    "dmd",
    "domain_membership_check",
    "eigendecompose",
    "endpoint_kernel_difference",
    "exp_eigenfunction",
    "exp_series",
    "field_defect",
    "flow_check",
    "geometric_tail",
    "hermitian_defect",
    "hk_eigenfunction",
    "hs_norm",
    "inner_product",
    "integrate_ode",
    "kernel",
    "kernel_tail",
    "liouville_matrix",
    "liouville_occupation_residual",
    "modulus_identity_defect",
    "monic_from_zeros",
    "monomial",
    "monomial_norm_sequence",
    "multiply",
    "norm",
    "normalized_kernel_action_sq",
    "occupation_kernel",
    "occupation_self_adjoint_relation",
    "outer_from_modulus",
    "polar_grid",
    "project_h2",
    "read_trajectory_csv",
    "reciprocal",
    "scaled_liouville_matrix",
    "self_adjoint_symbol_relation",
    "smirnov_decompose",
    "szego_kernel",
    "to_boundary",
    "unit_circle_points",
    "weighted_adjoint_on_kernel",
    "weighted_liouville_matrix",
    "weighted_occupation_residual",
    "write_trajectory_csv",
    "zero_eigenspace",
    "zero_free_certificate",
]
