"""Norms of finite Blaschke products and rational functions on the unit disc."""

from ._validation import DomainError, NonConvergenceError
from .disc_core import (
    BlaschkeProduct,
    JetValue,
    blaschke_eval,
    blaschke_jet,
    deviation_ratio,
    partial_product_sum,
    random_blaschke,
    second_derivative_bound,
)
from .norms import (
    NormReport,
    SpaceParams,
    I_integral,
    a1_seminorm,
    bergman_norm,
    besov_seminorm,
    bloch_norm,
    bmoa_upper,
    constants,
    garsia_seminorm,
)
from .quadrature import IntegrationResult, QuadratureSpec, disc_integral, gauss_jacobi_nodes
from .rational_fn import (
    ModelSpaceTag,
    RationalFunction,
    backward_shift,
    boundary_pairing,
    derivative_via_kernel,
    eval_jet,
    kernel4_norm_closed,
    kernel_eval,
    to_model_space,
)
from .verify import CheckReport, SweepResult, run_check

__version__ = "0.1.0"

__all__ = [
    "a1_seminorm",
    "backward_shift",
    "bergman_norm",
    "besov_seminorm",
    "blaschke_eval",
    "blaschke_jet",
    "BlaschkeProduct",
    "bloch_norm",
    "bmoa_upper",
    "boundary_pairing",
    "CheckReport",
    "constants",
    "derivative_via_kernel",
    "deviation_ratio",
    "disc_integral",
    "DomainError",
    "eval_jet",
    "garsia_seminorm",
    "gauss_jacobi_nodes",
    "I_integral",
    "IntegrationResult",
    "JetValue",
    "kernel4_norm_closed",
    "kernel_eval",
    "ModelSpaceTag",
    "NonConvergenceError",
    "NormReport",
    "partial_product_sum",
    "QuadratureSpec",
    "random_blaschke",
    "RationalFunction",
    "run_check",
    "second_derivative_bound",
    "SpaceParams",
    "SweepResult",
    "to_model_space",
]
