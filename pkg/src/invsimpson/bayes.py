"""Exact Bayesian computations under a uniform prior on each success rate.

With a flat prior the posterior of an arm with S successes in N trials is
Beta(S + 1, N - S + 1). Everything here is non-asymptotic; the normal
approximations live in :mod:`invsimpson.asymptotics`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import TrialTable
from .errors import DomainError, TooLargeError
from .special import log_binomial, logsumexp, regularized_incomplete_beta

EXACT_MAX_TRIALS = 10**5
_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class PosteriorMoments:
    mean_diff: float
    var_diff: float


def _check_counts(successes, trials, allow_empty=False):
    if trials < 0 or successes < 0 or successes > trials:
        raise DomainError(f"need 0 <= successes <= trials, got {successes}/{trials}")
    if trials == 0 and not allow_empty:
        raise DomainError("trials must be at least 1")


def prob_rate_at_least(successes: int, trials: int, threshold: float) -> float:
    """Posterior ``Pr(p >= threshold | S, N)``."""
    _check_counts(successes, trials, allow_empty=True)
    if not 0.0 <= threshold <= 1.0:
        raise DomainError(f"threshold must lie in [0, 1], got {threshold!r}")
    # 1 - I_t(S+1, N-S+1) == I_{1-t}(N-S+1, S+1); the latter keeps small tails accurate
    return regularized_incomplete_beta(1.0 - threshold, trials - successes + 1, successes + 1)


def significance_level(successes: int, trials: int) -> float:
    """``alpha_N(S) = sum_{j=0}^{N-S} C(N+1, j) / 2^(N+1)``.

    This is the posterior probability that the rate is below one half.
    """
    _check_counts(successes, trials, allow_empty=True)
    n1 = trials + 1
    terms = [log_binomial(n1, j) - n1 * _LOG2 for j in range(trials - successes + 1)]
    return min(1.0, math.exp(logsumexp(terms)))


def prob_rate_at_least_half_sum(successes: int, trials: int) -> float:
    """``Pr(p >= 1/2)`` from the finite binomial sum instead of the incomplete beta."""
    _check_counts(successes, trials, allow_empty=True)
    n1 = trials + 1
    # complementary terms j = N-S+1 .. N+1 so small probabilities keep full precision
    terms = [log_binomial(n1, j) - n1 * _LOG2 for j in range(trials - successes + 1, n1 + 1)]
    return min(1.0, math.exp(logsumexp(terms)))


def credible_mass(successes: int, trials: int, epsilon: float) -> float:
    """Posterior mass of ``[S/N - eps/sqrt(N), S/N + eps/sqrt(N)]`` clipped to [0, 1]."""
    _check_counts(successes, trials)
    if not epsilon >= 0:
        raise DomainError(f"epsilon must be non-negative, got {epsilon!r}")
    centre = successes / trials
    half = epsilon / math.sqrt(trials)
    lo = max(0.0, centre - half)
    hi = min(1.0, centre + half)
    a, b = successes + 1, trials - successes + 1
    mass = regularized_incomplete_beta(hi, a, b) - regularized_incomplete_beta(lo, a, b)
    return max(0.0, mass)


def binomial_interval_prob(trials: int, p: float, epsilon: float) -> float:
    """Binomial probability that S lands in ``[floor(Np - sqrt(N) eps), floor(Np + sqrt(N) eps)]``."""
    if trials < 1:
        raise DomainError("trials must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    if not epsilon >= 0:
        raise DomainError(f"epsilon must be non-negative, got {epsilon!r}")
    spread = math.sqrt(trials) * epsilon
    lo = max(0, math.floor(trials * p - spread))
    hi = min(trials, math.floor(trials * p + spread))
    if lo > hi:
        return 0.0
    if p == 0.0:
        return 1.0 if lo == 0 else 0.0
    if p == 1.0:
        return 1.0 if hi == trials else 0.0
    lp, lq = math.log(p), math.log1p(-p)
    terms = [log_binomial(trials, j) + j * lp + (trials - j) * lq for j in range(lo, hi + 1)]
    return min(1.0, math.exp(logsumexp(terms)))


def _superiority_log_weights(table: TrialTable):
    """Log weights w(k), k = 0..N_B+1, of the pooled-success index distribution.

    With S = S_A + S_B, F = F_A + F_B and N = N_A + N_B the exact posterior
    probability of p_A >= p_B is

        sum_{j=0}^{F} C(S+1+j, S_A) C(F-j, F_A) / C(N+2, N_A+1).

    Writing m = S+1+j, the summand C(m, S_A) C(N+1-m, F_A) is a probability
    mass function over m = S_A .. S_A+N_B+1 whose total is the denominator
    (Vandermonde). We index it by k = m - S_A and build log weights from the
    exact term ratio, anchored at the mode so no large logs are subtracted.
    """
    sa, fa = table.successes_a, table.failures_a
    n = table.total_trials
    k = np.arange(table.trials_b + 1, dtype=float)
    # w(k+1)/w(k) = (S_A+k+1)/(k+1) * (N_B+1-k)/(N+1-S_A-k)
    log_ratio = np.log1p(sa / (k + 1.0)) + np.log1p(-fa / (n + 1.0 - sa - k))
    rough = np.concatenate(([0.0], np.cumsum(log_ratio)))
    mode = int(np.argmax(rough))
    logw = np.empty_like(rough)
    logw[mode] = 0.0
    logw[mode + 1:] = np.cumsum(log_ratio[mode:])
    if mode > 0:
        logw[:mode] = -np.cumsum(log_ratio[:mode][::-1])[::-1]
    return logw


def prob_a_beats_b_exact(table: TrialTable, force: bool = False) -> float:
    """Exact posterior ``Pr(p_A >= p_B)`` under independent uniform priors."""
    if table.total_trials > EXACT_MAX_TRIALS and not force:
        raise TooLargeError(
            f"N={table.total_trials} exceeds the exact-mode cap {EXACT_MAX_TRIALS}; "
            "use the normal approximation or force exact evaluation"
        )
    logw = _superiority_log_weights(table)
    weights = np.exp(logw)
    tail_start = table.successes_b + 1
    tail = math.fsum(weights[tail_start:])
    head = math.fsum(weights[:tail_start])
    # sum the smaller side directly so the returned value keeps absolute accuracy
    if tail <= head:
        return tail / (tail + head)
    return 1.0 - head / (tail + head)


def posterior_diff_moments(table: TrialTable) -> PosteriorMoments:
    """Mean and variance of ``p_A - p_B`` under the two posteriors, in exact rationals.

    Uses the per-arm terms ``(S+1)/(N+1)`` and ``(S+1)(N+1-S)/((N+1)^2 (N+2))``.
    These differ from the exact Beta(S+1, N-S+1) moments, whose denominators
    are ``N+2`` and ``(N+2)^2 (N+3)``, by a shift that vanishes for large N.
    """

    def arm(s, n):
        mean = Fraction(s + 1, n + 1)
        var = Fraction((s + 1) * (n + 1 - s), (n + 1) ** 2 * (n + 2))
        return mean, var

    mean_a, var_a = arm(table.successes_a, table.trials_a)
    mean_b, var_b = arm(table.successes_b, table.trials_b)
    return PosteriorMoments(float(mean_a - mean_b), float(var_a + var_b))
