"""Large-sample significance machinery.

All reporting uses one convention: variances weight each arm by its share
of the *total* sample, ``sigma^2 = P_A Q_A / (N_A/N) + P_B Q_B / (N_B/N)``,
and the z-score is ``sqrt(N) * (P_A - P_B) / sigma``. This is algebraically
the same z as ``(P_A - P_B) / sqrt(P_A Q_A / N_A + P_B Q_B / N_B)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .bayes import PosteriorMoments
from .core import TrialTable
from .errors import DegenerateRateError, DomainError, TieError
from .special import std_normal_cdf


class Method(enum.Enum):
    EXACT = "EXACT"
    NORMAL = "NORMAL"


@dataclass(frozen=True)
class ComparisonResult:
    """Probability that A is at least as good as B, with normal-theory statistics.

    ``c_value``, ``sigma`` and ``z`` are ``None`` for an exact result on a
    table where the normal statistics are undefined (a rate of 0 or 1).
    """

    prob_superiority: float
    c_value: Optional[float]
    sigma: Optional[float]
    z: Optional[float]
    method: Method


@dataclass(frozen=True)
class SubtrialConfidence:
    c_prime: float
    sigma_i: float
    part_index: int


def _check_nondegenerate(table: TrialTable):
    for arm, s, n in (("A", table.successes_a, table.trials_a), ("B", table.successes_b, table.trials_b)):
        if s == 0 or s == n:
            raise DegenerateRateError(
                f"arm {arm} has rate {s}/{n}; the normal variance vanishes, use the exact method"
            )


def _sigma(p_a, p_b, share_a, share_b):
    return math.sqrt(p_a * (1.0 - p_a) / share_a + p_b * (1.0 - p_b) / share_b)


def significance_limit(s: float) -> float:
    """Large-sample limit of the one-arm significance level, ``Phi(-2 s)``.

    ``s = (S - N/2) / sqrt(N)`` is the scaled excess of successes over half.
    """
    return std_normal_cdf(-2.0 * s)


def prob_a_beats_b_normal(table: TrialTable) -> ComparisonResult:
    _check_nondegenerate(table)
    sa, na, sb, nb = table.as_tuple()
    diff = sa / na - sb / nb
    z = diff / math.sqrt(sa * (na - sa) / na**3 + sb * (nb - sb) / nb**3)
    n = table.total_trials
    sigma = _sigma(sa / na, sb / nb, na / n, nb / n)
    return ComparisonResult(
        prob_superiority=std_normal_cdf(z),
        c_value=z / math.sqrt(n),
        sigma=sigma,
        z=z,
        method=Method.NORMAL,
    )


def rate_diff_moments(p_a: float, p_b: float, n_a: float, n_b: float) -> PosteriorMoments:
    """Sampling mean and variance of ``S_A/N_A - S_B/N_B`` given the true rates."""
    if n_a < 1 or n_b < 1:
        raise DomainError("arm sizes must be at least 1")
    return PosteriorMoments(p_a - p_b, p_a * (1.0 - p_a) / n_a + p_b * (1.0 - p_b) / n_b)


def interval_prob_normal(p: float, epsilon: float) -> float:
    """Normal approximation to ``Pr(|p - S/N| <= eps / sqrt(N))``."""
    if not 0.0 < p < 1.0:
        raise DegenerateRateError(f"p={p!r} must lie strictly inside (0, 1)")
    if not epsilon >= 0:
        raise DomainError(f"epsilon must be non-negative, got {epsilon!r}")
    x = epsilon / math.sqrt(p * (1.0 - p))
    return std_normal_cdf(x) - std_normal_cdf(-x)


def aggregate_confidence(table: TrialTable) -> ComparisonResult:
    """Signed standardized difference ``C_AB`` (positive when A is ahead)."""
    _check_nondegenerate(table)
    sa, na, sb, nb = table.as_tuple()
    if sa * nb == sb * na:
        raise TieError("the two arms have identical rates")
    n = table.total_trials
    p_a, p_b = sa / na, sb / nb
    sigma = _sigma(p_a, p_b, na / n, nb / n)
    c = (p_a - p_b) / sigma
    z = math.sqrt(n) * c
    return ComparisonResult(std_normal_cdf(z), c, sigma, z, Method.NORMAL)


def subtrial_confidence(sub, n_total: float, part_index: int = 1) -> SubtrialConfidence:
    """Reversal confidence ``C'_i = (P_Bi - P_Ai) / sigma_i`` of one part.

    ``sub`` is a :class:`~invsimpson.core.FractionalTable` or
    :class:`~invsimpson.core.TrialTable`; ``n_total`` is the size of the
    whole (undecomposed) comparison. Positive values mean B leads.
    """
    if n_total < sub.trials_a or n_total < sub.trials_b:
        raise DomainError("n_total must cover the sub-table's trials")
    p_a = sub.successes_a / sub.trials_a
    p_b = sub.successes_b / sub.trials_b
    sigma = _sigma(p_a, p_b, sub.trials_a / n_total, sub.trials_b / n_total)
    if sigma == 0.0:
        raise DegenerateRateError(
            f"part {part_index}: rates ({p_a}, {p_b}) give zero variance"
        )
    return SubtrialConfidence((p_b - p_a) / sigma, sigma, part_index)
