"""Tools around Liouville-type regimes for (p,q)-Laplacian gradient reactions.

The library classifies problem instances against the known theorem
hypotheses, constructively selects the Bernstein-type change-of-variable
parameters with an independent grid oracle, verifies the underlying
differential identities on manufactured grid fields, and solves radial
boundary-value reductions to probe the predicted gradient-decay rates.
"""

from .classify import EstimateRate, RegimeDecision, TheoremCondition, classify, estimate_rate
from .exponents import (
    ExponentBundle,
    admissible_floor,
    b_from_t,
    beta1,
    beta2,
    beta2_large_b_limit,
    exponent_bundle,
    gamma_exponent,
    sum_beta2,
    sum_exponent_bundle,
    t_from_b,
    theta_exponent,
)
from .errors import AdmissibilityError, FieldError, UndefinedThresholdError
from .fields import CATALOG, ManufacturedField
from .grid import GridField, from_bytes, grid_field, read_binary, sample_function, to_bytes, write_binary
from .identities import (
    IdentityReport,
    attach_order,
    bochner_check,
    change_of_variable_check,
    default_tolerance,
    refinement_order,
    scaling_check,
)
from .instance import KINDS, ProblemInstance
from .ishii_lions import ILWindow, il_alpha_window, il_gamma_lo, il_parameter_window
from .operators import laplacian, p_laplacian, pq_laplacian
from .radial import (
    BlowupFit,
    RadialProblem,
    RadialSolution,
    default_fit_window,
    estimate_consistency,
    fit_blowup_exponent,
    gradient_vs_distance,
    manufactured_source,
    solve_radial,
    unregularized_residual,
)
from .selection import BSelection, ConditionCheck, select_b_product, small_s_threshold, sum_selection
from .thresholds import (
    ProductThresholds,
    SumThresholds,
    operator_gap,
    product_thresholds,
    sum_thresholds,
)
from .trinomial import (
    TrinomialCoeffs,
    epsilon_sensitivity,
    product_trinomial,
    sum_leading_coefficient,
    verify_negativity,
)
from .weights import AuxWeights, aux_weights

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "AuxWeights",
    "BSelection",
    "BlowupFit",
    "CATALOG",
    "ConditionCheck",
    "EstimateRate",
    "ExponentBundle",
    "FieldError",
    "GridField",
    "ILWindow",
    "IdentityReport",
    "KINDS",
    "ManufacturedField",
    "ProblemInstance",
    "ProductThresholds",
    "RadialProblem",
    "RadialSolution",
    "RegimeDecision",
    "SumThresholds",
    "TheoremCondition",
    "TrinomialCoeffs",
    "UndefinedThresholdError",
    "admissible_floor",
    "attach_order",
    "aux_weights",
    "b_from_t",
    "beta1",
    "beta2",
    "beta2_large_b_limit",
    "bochner_check",
    "change_of_variable_check",
    "classify",
    "default_fit_window",
    "default_tolerance",
    "epsilon_sensitivity",
    "estimate_consistency",
    "estimate_rate",
    "exponent_bundle",
    "fit_blowup_exponent",
    "from_bytes",
    "gamma_exponent",
    "gradient_vs_distance",
    "grid_field",
    "il_alpha_window",
    "il_gamma_lo",
    "il_parameter_window",
    "laplacian",
    "manufactured_source",
    "operator_gap",
    "p_laplacian",
    "pq_laplacian",
    "product_thresholds",
    "product_trinomial",
    "read_binary",
    "refinement_order",
    "sample_function",
    "scaling_check",
    "select_b_product",
    "small_s_threshold",
    "solve_radial",
    "sum_beta2",
    "sum_exponent_bundle",
    "sum_leading_coefficient",
    "sum_selection",
    "sum_thresholds",
    "t_from_b",
    "theta_exponent",
    "to_bytes",
    "unregularized_residual",
    "verify_negativity",
    "write_binary",
]
