"""Simpson reversals, exact Bayesian comparison of two success rates, and
inverse-Simpson decompositions that neutralize or reverse a comparison."""

from .asymptotics import (
    ComparisonResult,
    Method,
    SubtrialConfidence,
    aggregate_confidence,
    interval_prob_normal,
    prob_a_beats_b_normal,
    rate_diff_moments,
    significance_limit,
    subtrial_confidence,
)
from .bayes import (
    PosteriorMoments,
    binomial_interval_prob,
    credible_mass,
    posterior_diff_moments,
    prob_a_beats_b_exact,
    prob_rate_at_least,
    prob_rate_at_least_half_sum,
    significance_level,
)
from .core import (
    Direction,
    FractionalTable,
    RatePair,
    TrialTable,
    direction,
    make_table,
    merge,
    rates,
)
from .decompose import (
    DecompositionPlan,
    IntegerSplit,
    ReversalSolution,
    cprime_ceiling_exact,
    cprime_ceiling_printed,
    cprime_ceiling_sufficient,
    integerize,
    maximize_reversal,
    necessary_feasible,
    neutralize,
    neutralizing_split,
    solve_reversal,
    special_alpha_beta,
    suggest_lambda_mu,
)
from .errors import AnalysisError, InputError, InverseSimpsonError
from .paradox import (
    SimpsonReport,
    prototype_reversal_predicted,
    prototype_reversal_threshold,
    prototype_tables,
    simpson_check,
)

__version__ = "0.1.0"
