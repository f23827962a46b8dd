"""Jackson's second and third q-Bessel functions and coefficient-based geometric certificates."""
from jacksonq.geomclass import (
    AlphaThreshold,
    ConditionId,
    ConditionReport,
    HypothesisError,
    Property,
    alpha_threshold,
    corollary_flags,
    gamma_combine,
    kappa_closed_bound,
    kappa_direct,
    p0_alpha_bound,
    positivity_condition,
)
from jacksonq.hardy import (
    HardyKind,
    HardyMembership,
    hadamard,
    hadamard_sup_bound,
    hardy_classify,
    macgregor_check,
    theorem6_verdict,
    theorem7_verdict,
)
from jacksonq.kernels import BACKEND
from jacksonq.oracle import (
    DiskGrid,
    Functional,
    crosscheck_sufficient_vs_sampled,
    integral_mean,
    min_re_functional,
)
from jacksonq.qbessel import (
    CoefficientSeries,
    FamilyKind,
    coeff_h,
    eval_jackson,
    eval_series,
    limit_relation_error,
    series_h,
)
from jacksonq.qcore import (
    ConvergenceError,
    Estimate,
    QDomain,
    SumKind,
    Tolerance,
    c_nu,
    classical_bessel_j,
    geom_sum_closed,
    qpochhammer,
    qpochhammer_inf,
)

__version__ = "0.1.0"
