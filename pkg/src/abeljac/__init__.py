"""abeljac: spectral solving and verification for Abel integral equations in
Jacobi-weighted Lebesgue spaces.

The package provides the orthonormal Jacobi machinery (bases, quadrature,
endpoint closed forms), Riemann-Liouville fractional operators with symbolic
power-term images, the coupling (Galerkin) matrix of the fractional operator
with an independent quadrature oracle, and an end-to-end Abel-equation solver
with solvability diagnostics and smoothness classification.
"""

from .coupling import (
    CouplingMatrix,
    DecayDiagnostic,
    assemble,
    convergence_weight,
    decay_fit,
    decrease_onset,
    entry,
    oracle_entry,
    row_decay_factor,
    tail_majorant,
)
from .errors import ContractError, DomainError, InputError, StageError
from .fracops import (
    FracOrder,
    PowerTerm,
    apply_fractional_integral,
    evaluate_power_terms,
    frac_jacobi,
    frac_power,
    frac_quadrature,
)
from .jacobi import (
    CoefficientSequence,
    JacobiBasis,
    endpoint_derivative,
    evaluate,
    evaluate_table,
    gauss_jacobi,
    norm_factor,
    project,
    rodrigues_multiplier,
    taylor_coefficients,
    taylor_weight,
)
from .solver import (
    AbelProblem,
    PollardInterval,
    QClassification,
    SolutionReport,
    Tolerances,
    Truncation,
    check_absolute_convergence,
    classify_smoothness,
    decay_exponent,
    load_problem,
    partial_sum_bound,
    pollard_interval,
    problem_from_dict,
    problem_to_dict,
    residual,
    rhs_coefficients,
    rhs_power_terms,
    rhs_samples,
    solve,
    synthesize,
    weighted_coefficient_norm,
)
from .specfun import (
    MASCHERONI,
    GammaRatioAsymptote,
    beta,
    certify_gamma_ratio_asymptote,
    gamma_ratio,
    li_gamma_bounds,
    log_gamma,
    reciprocal_gamma,
)

__version__ = "0.1.0"
