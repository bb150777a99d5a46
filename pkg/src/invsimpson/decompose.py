"""Inverse-Simpson decompositions.

Given one two-arm comparison in which A leads, split each arm into two
parts, the A pool in fractions ``alpha : 1-alpha`` and the B pool in
``beta : 1-beta``, so that either

* both parts show *no* difference (a neutralizing split, rates lambda and
  mu in the two parts), or
* B leads in both parts at a common standardized level ``C'`` (a
  reversing split).

For a reversing split the sub-rates solve a linear system once the part
standard deviations sigma_1, sigma_2 are known, but those deviations are
themselves functions of the sub-rates. The loop is closed by damped
fixed-point iteration on (sigma_1, sigma_2). Whether a split is acceptable
is always decided by recomputing ``C'_i`` from the realized parts; the
analytic ceilings below only bound or seed the search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from .asymptotics import SubtrialConfidence, subtrial_confidence
from .core import FractionalTable, RatePair, TrialTable, rates
from .errors import (
    DegenerateRateError,
    DegenerateSplitError,
    DomainError,
    InfeasibleError,
    NoConvergenceError,
    PlacementError,
    TieError,
)

FIXED_POINT_TOL = 1e-12
FIXED_POINT_MAX_ITER = 200
DAMPING = 0.5
RATE_SLACK = 1e-12
VERIFY_SLACK = 1e-9
BISECT_TOL = 1e-9
LATTICE_SIZE = 101
REFINE_PASSES = 2
REFINE_FACTOR = 10
_MAX_DOUBLINGS = 12
_ESTIMATE_ROUNDS = 4
_SEED_WIDTH = 1e-6


@dataclass(frozen=True)
class DecompositionPlan:
    alpha: float
    beta: float
    c_prime: float
    k1: float
    k2: float
    sigma_1: float
    sigma_2: float
    sigma_alpha: float
    sigma_beta: float
    p_a1: float
    p_a2: float
    p_b1: float
    p_b2: float


@dataclass(frozen=True)
class ReversalSolution:
    plan: DecompositionPlan
    parts: Tuple[FractionalTable, FractionalTable]
    realized_confidences: Tuple[Optional[SubtrialConfidence], Optional[SubtrialConfidence]]
    verified: bool


@dataclass(frozen=True)
class IntegerSplit:
    """Whole-count parts plus their recomputed reversal confidences."""

    parts: Tuple[TrialTable, TrialTable]
    realized_confidences: Tuple[Optional[SubtrialConfidence], Optional[SubtrialConfidence]]
    verified: Optional[bool] = None


def _exact(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _table_rates(table: TrialTable):
    return Fraction(table.successes_a, table.trials_a), Fraction(table.successes_b, table.trials_b)


# -- neutralizing splits -----------------------------------------------------


def neutralizing_split(table: TrialTable, lam, mu) -> Tuple[float, float]:
    """Fractions ``(alpha, beta)`` of each arm assigned to the rate-``lam`` part."""
    alpha, beta = _neutral_fractions(table, _exact(lam), _exact(mu))
    return float(alpha), float(beta)


def _neutral_fractions(table, lam, mu):
    p_a, p_b = _table_rates(table)
    if p_a == p_b:
        raise TieError("the arms already tie; there is nothing to neutralize")
    if not (0 <= lam <= 1 and 0 <= mu <= 1):
        raise PlacementError(f"lambda={lam} and mu={mu} must be rates in [0, 1]")
    lo, hi = min(p_a, p_b), max(p_a, p_b)
    if not (min(lam, mu) < lo and hi < max(lam, mu)):
        raise PlacementError(
            f"lambda={float(lam)} and mu={float(mu)} must strictly bracket the "
            f"interval [{float(lo)}, {float(hi)}] from outside"
        )
    return (mu - p_a) / (mu - lam), (mu - p_b) / (mu - lam)


def neutralize(table: TrialTable, lam, mu) -> Tuple[FractionalTable, FractionalTable]:
    """Split ``table`` so both arms have rate ``lam`` in part 1 and ``mu`` in part 2.

    Decimal floats are read exactly (0.2 means 1/5), so splits that come out
    whole in exact arithmetic come out as whole floats.
    """
    lam, mu = _exact(lam), _exact(mu)
    alpha, beta = _neutral_fractions(table, lam, mu)
    na1 = alpha * table.trials_a
    nb1 = beta * table.trials_b
    na2 = table.trials_a - na1
    nb2 = table.trials_b - nb1
    part1 = FractionalTable(float(lam * na1), float(na1), float(lam * nb1), float(nb1))
    part2 = FractionalTable(float(mu * na2), float(na2), float(mu * nb2), float(nb2))
    return part1, part2


def suggest_lambda_mu(table: TrialTable) -> Tuple[float, float]:
    """Mid-points of ``(0, P_low)`` and ``(P_high, 1)``: an unremarkable-looking split."""
    p_a, p_b = _table_rates(table)
    if p_a == p_b:
        raise TieError("the arms tie; there is nothing to neutralize")
    lo, hi = min(p_a, p_b), max(p_a, p_b)
    if lo == 0 or hi == 1:
        raise PlacementError("no room to place lambda below and mu above the observed rates")
    return float(lo / 2), float((hi + 1) / 2)


# -- reversing splits --------------------------------------------------------


def _sub_rates(k1, k2, alpha, beta, c, s1, s2):
    d = alpha - beta
    s_alpha = alpha * s1 + (1.0 - alpha) * s2
    s_beta = beta * s1 + (1.0 - beta) * s2
    p_a1 = k1 + (1.0 - alpha) * c * s_beta / d
    p_a2 = k2 - alpha * c * s_beta / d
    p_b1 = k1 + (1.0 - beta) * c * s_alpha / d
    p_b2 = k2 - beta * c * s_alpha / d
    return p_a1, p_a2, p_b1, p_b2


def _part_sigmas(sub, weights):
    # variances of clipped iterates; out-of-range rates are rejected after convergence
    pa1, pa2, pb1, pb2 = (np.clip(p, 0.0, 1.0) for p in sub)
    wa1, wb1, wa2, wb2 = weights
    s1 = np.sqrt(pa1 * (1.0 - pa1) / wa1 + pb1 * (1.0 - pb1) / wb1)
    s2 = np.sqrt(pa2 * (1.0 - pa2) / wa2 + pb2 * (1.0 - pb2) / wb2)
    return s1, s2


def _fixed_point(p_a, p_b, gamma, alpha, beta, c):
    """Solve the reversing split for arrays of (alpha, beta, c).

    Returns ``(k1, k2, sigma_1, sigma_2, sub_rates, converged)``; the
    sub-rates are those generated by the returned sigmas.
    """
    alpha, beta, c = np.broadcast_arrays(
        np.asarray(alpha, dtype=float), np.asarray(beta, dtype=float), np.asarray(c, dtype=float)
    )
    d = alpha - beta
    k1 = ((1.0 - beta) * p_a - (1.0 - alpha) * p_b) / d
    k2 = (alpha * p_b - beta * p_a) / d
    weights = (
        alpha * gamma,
        beta * (1.0 - gamma),
        (1.0 - alpha) * gamma,
        (1.0 - beta) * (1.0 - gamma),
    )
    shape = d.shape
    s1 = np.ones(shape)
    s2 = np.ones(shape)
    done = np.zeros(shape, dtype=bool)
    # iterate on the flat set of unsettled elements only
    live = np.arange(d.size)
    flat = [x.ravel() for x in (k1, k2, alpha, beta, c, *weights)]
    fs1, fs2, fdone = s1.ravel(), s2.ravel(), done.ravel()
    prev1 = np.zeros(d.size)
    prev2 = np.zeros(d.size)
    damped = np.zeros(d.size, dtype=bool)
    for _ in range(FIXED_POINT_MAX_ITER):
        lk1, lk2, la, lb, lc, *lw = (x[live] for x in flat)
        cur1, cur2 = fs1[live], fs2[live]
        new1, new2 = _part_sigmas(_sub_rates(lk1, lk2, la, lb, lc, cur1, cur2), lw)
        step1 = new1 - cur1
        step2 = new2 - cur2
        settled = np.maximum(np.abs(step1), np.abs(step2)) < FIXED_POINT_TOL
        fdone[live[settled]] = True
        damped[live] |= (step1 * prev1[live] < 0) | (step2 * prev2[live] < 0)
        factor = np.where(damped[live], DAMPING, 1.0)
        moving = ~settled
        idx = live[moving]
        fs1[idx] = cur1[moving] + factor[moving] * step1[moving]
        fs2[idx] = cur2[moving] + factor[moving] * step2[moving]
        prev1[idx] = step1[moving]
        prev2[idx] = step2[moving]
        live = idx
        if not live.size:
            break
    s1 = fs1.reshape(shape)
    s2 = fs2.reshape(shape)
    done = fdone.reshape(shape)
    sub = _sub_rates(k1, k2, alpha, beta, c, s1, s2)
    return k1, k2, s1, s2, sub, done


def _realized_ok(sub, weights, c, converged):
    """Vector form of the verification done by :func:`solve_reversal`."""
    in_range = converged.copy()
    for p in sub:
        in_range &= (p >= -RATE_SLACK) & (p <= 1.0 + RATE_SLACK)
    pa1, pa2, pb1, pb2 = (np.clip(p, 0.0, 1.0) for p in sub)
    s1, s2 = _part_sigmas((pa1, pa2, pb1, pb2), weights)
    with np.errstate(divide="ignore", invalid="ignore"):
        c1 = (pb1 - pa1) / s1
        c2 = (pb2 - pa2) / s2
    ok = in_range & (pb1 >= pa1) & (pb2 >= pa2)
    ok &= np.nan_to_num(c1, nan=-np.inf) >= c - VERIFY_SLACK
    ok &= np.nan_to_num(c2, nan=-np.inf) >= c - VERIFY_SLACK
    return ok


def _feasible(rp: RatePair, alpha, beta, c):
    _, _, _, _, sub, done = _fixed_point(rp.p_a, rp.p_b, rp.gamma, alpha, beta, c)
    g = rp.gamma
    weights = (alpha * g, beta * (1.0 - g), (1.0 - alpha) * g, (1.0 - beta) * (1.0 - g))
    return _realized_ok(sub, weights, c, done)


def solve_reversal(table: TrialTable, alpha: float, beta: float, c_prime: float) -> ReversalSolution:
    """Split ``table`` so that B leads A in both parts at common level ``c_prime``.

    ``alpha`` and ``beta`` are the shares of arms A and B placed in part 1.
    Raises :class:`InfeasibleError` when the fixed point puts a sub-rate
    outside [0, 1] and :class:`NoConvergenceError` when the iteration does
    not settle.
    """
    if not (0.0 < alpha < 1.0 and 0.0 < beta < 1.0):
        raise DomainError(f"alpha and beta must lie in (0, 1), got {alpha}, {beta}")
    if not c_prime >= 0:
        raise DomainError(f"c_prime must be non-negative, got {c_prime}")
    if alpha == beta:
        raise DegenerateSplitError("alpha == beta leaves the split undetermined")
    rp = rates(table)
    k1, k2, s1, s2, sub, done = _fixed_point(rp.p_a, rp.p_b, rp.gamma, alpha, beta, c_prime)
    if not bool(done):
        raise NoConvergenceError(
            f"sigma iteration did not settle in {FIXED_POINT_MAX_ITER} steps "
            f"(alpha={alpha}, beta={beta}, c'={c_prime})"
        )
    sub = [float(p) for p in sub]
    bad = [p for p in sub if not -RATE_SLACK <= p <= 1.0 + RATE_SLACK]
    if bad:
        raise InfeasibleError(
            f"sub-rates {sub} leave [0, 1] at alpha={alpha}, beta={beta}, c'={c_prime}"
        )
    p_a1, p_a2, p_b1, p_b2 = (min(1.0, max(0.0, p)) for p in sub)
    s1, s2, k1, k2 = float(s1), float(s2), float(k1), float(k2)
    plan = DecompositionPlan(
        alpha=alpha,
        beta=beta,
        c_prime=c_prime,
        k1=k1,
        k2=k2,
        sigma_1=s1,
        sigma_2=s2,
        sigma_alpha=alpha * s1 + (1.0 - alpha) * s2,
        sigma_beta=beta * s1 + (1.0 - beta) * s2,
        p_a1=p_a1,
        p_a2=p_a2,
        p_b1=p_b1,
        p_b2=p_b2,
    )
    parts = _plan_parts(table, plan)
    realized = _realized(parts, table.total_trials)
    verified = all(
        r is not None and r.c_prime >= c_prime - VERIFY_SLACK for r in realized
    ) and p_b1 >= p_a1 and p_b2 >= p_a2
    return ReversalSolution(plan, parts, realized, verified)


def _plan_parts(table, plan):
    na1 = plan.alpha * table.trials_a
    nb1 = plan.beta * table.trials_b
    na2 = table.trials_a - na1
    nb2 = table.trials_b - nb1
    return (
        FractionalTable(plan.p_a1 * na1, na1, plan.p_b1 * nb1, nb1),
        FractionalTable(plan.p_a2 * na2, na2, plan.p_b2 * nb2, nb2),
    )


def _realized(parts, n_total):
    out = []
    for i, part in enumerate(parts, start=1):
        try:
            out.append(subtrial_confidence(part, n_total, part_index=i))
        except DegenerateRateError:
            out.append(None)
    return tuple(out)


# -- feasibility ceilings ----------------------------------------------------


def _necessary_mask(p_a, p_b, alpha, beta):
    qa, qb = 1.0 - p_a, 1.0 - p_b
    abar, bbar = 1.0 - alpha, 1.0 - beta
    upper = (alpha >= beta) & (alpha * p_b >= beta * p_a) & (bbar * qa >= abar * qb)
    lower = (alpha <= beta) & (abar * p_b >= bbar * p_a) & (beta * qa >= alpha * qb)
    return upper | lower


def necessary_feasible(rp: RatePair, alpha: float, beta: float) -> bool:
    """Ratio conditions any reversing split with ``C' >= 0`` must satisfy.

    For ``alpha >= beta``: ``alpha/beta >= P_A/P_B`` and
    ``(1-beta)/(1-alpha) >= (1-P_B)/(1-P_A)``; mirrored for ``alpha <= beta``.
    """
    return bool(_necessary_mask(rp.p_a, rp.p_b, alpha, beta))


def _ceiling_exact(p_a, p_b, alpha, beta, sigma_alpha, sigma_beta):
    qa, qb = 1.0 - p_a, 1.0 - p_b
    abar, bbar = 1.0 - alpha, 1.0 - beta
    upper = alpha >= beta
    # alpha >= beta: part 1 may hit 1 from below, part 2 may hit 0 from above
    near_one = np.where(upper, bbar * qa - abar * qb, abar * p_b - bbar * p_a)
    near_zero = np.where(upper, alpha * p_b - beta * p_a, beta * qa - alpha * qb)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.minimum.reduce([
            near_one / (abar * sigma_beta),
            near_one / (bbar * sigma_alpha),
            near_zero / (alpha * sigma_beta),
            near_zero / (beta * sigma_alpha),
        ])


def cprime_ceiling_exact(rp: RatePair, alpha, beta, sigma_alpha, sigma_beta) -> float:
    """Largest ``C'`` keeping all four sub-rates in [0, 1] for given sigma aggregates.

    Exact only when the sigmas are those of the eventual split; inside the
    search the current fixed-point iterate is plugged in.
    """
    return float(_ceiling_exact(rp.p_a, rp.p_b, alpha, beta, sigma_alpha, sigma_beta))


def cprime_ceiling_sufficient(rp: RatePair, alpha, beta) -> float:
    """A ``C'`` that is feasible whatever the sub-rates turn out to be.

    Uses ``pq <= 1/4`` to bound both part deviations by
    ``1 / (2 sqrt(gamma (1-gamma) min(beta, 1-alpha)))`` (for alpha >= beta)
    and substitutes that bound into :func:`cprime_ceiling_exact`.
    """
    p_a, p_b, qa, qb = rp.p_a, rp.p_b, rp.q_a, rp.q_b
    abar, bbar = 1.0 - alpha, 1.0 - beta
    scale = 2.0 * math.sqrt(rp.gamma * (1.0 - rp.gamma))
    if alpha >= beta:
        return scale * math.sqrt(min(beta, abar)) * min(
            (bbar * qa - abar * qb) / bbar, (alpha * p_b - beta * p_a) / alpha
        )
    return scale * math.sqrt(min(alpha, bbar)) * min(
        (abar * p_b - bbar * p_a) / abar, (beta * qa - alpha * qb) / beta
    )


def _leading_rates(rp: RatePair):
    if rp.p_a == rp.p_b:
        raise TieError("the arms tie; there is no conclusion to reverse")
    if rp.p_a < rp.p_b:
        raise DomainError("arm A must lead in aggregate; swap the arms first")
    if rp.p_b == 0.0 or rp.p_a == 1.0:
        raise DegenerateRateError(
            f"aggregate rates ({rp.p_a}, {rp.p_b}) touch 0 or 1; no reversing split exists"
        )


def special_alpha_beta(rp: RatePair) -> Tuple[float, float]:
    """Closed-form split with ``beta/alpha = (P_B/P_A)^2`` and
    ``(1-alpha)/(1-beta) = ((1-P_A)/(1-P_B))^2``."""
    _leading_rates(rp)
    r2 = (rp.p_a / rp.p_b) ** 2
    t2 = (rp.q_b / rp.q_a) ** 2
    denom = r2 * t2 - 1.0
    return (r2 * t2 - r2) / denom, (t2 - 1.0) / denom


def cprime_ceiling_printed(rp: RatePair) -> float:
    """Closed-form ceiling at the special split, branching on ``P_A + P_B``.

    Reference value only. It does not follow from
    :func:`cprime_ceiling_sufficient` evaluated at :func:`special_alpha_beta`
    (it omits a square root and picks the minimum differently), so it is
    never used to decide feasibility.
    """
    _leading_rates(rp)
    r = rp.p_a / rp.p_b
    t = rp.q_b / rp.q_a
    denom = (r * t) ** 2 - 1.0
    scale = 2.0 * math.sqrt(rp.gamma * (1.0 - rp.gamma))
    diff = rp.p_a - rp.p_b
    if rp.p_a + rp.p_b >= 1.0:
        return scale * (t**2 - 1.0) * diff * (rp.p_b / rp.p_a) / denom
    return scale * (r**2 - 1.0) * diff * (rp.q_a / rp.q_b) / denom


# -- search ------------------------------------------------------------------


def _ceiling_estimate(rp, alpha, beta):
    # iterate c <- ceiling(sigma(c)): where the sub-rates meet the [0, 1] walls
    c = np.zeros(alpha.shape)
    for _ in range(_ESTIMATE_ROUNDS):
        _, _, s1, s2, _, done = _fixed_point(rp.p_a, rp.p_b, rp.gamma, alpha, beta, c)
        est = _ceiling_exact(
            rp.p_a, rp.p_b, alpha, beta,
            alpha * s1 + (1.0 - alpha) * s2,
            beta * s1 + (1.0 - beta) * s2,
        )
        c = np.where(done & np.isfinite(est) & (est > 0), est, c)
    return c


def _probe(rp, alpha, beta, lo, hi, idx, trial):
    """Test ``trial`` at elements ``idx``; feasible raises ``lo``, infeasible lowers ``hi``."""
    good = _feasible(rp, alpha[idx], beta[idx], trial)
    lo[idx[good]] = trial[good]
    hi[idx[~good]] = trial[~good]
    return good


def max_common_cprime(rp: RatePair, alpha, beta):
    """Largest verified common ``C'`` for each (alpha, beta), by bisection.

    Vectorized over array inputs. The bracket is seeded from the point where
    the current sigma iterate drives a sub-rate onto 0 or 1, but every
    bracket end is established by direct verification. Points where even
    ``C' = 0`` fails come back as ``-inf``.
    """
    alpha, beta = np.broadcast_arrays(np.asarray(alpha, dtype=float), np.asarray(beta, dtype=float))
    alpha, beta = alpha.ravel(), beta.ravel()
    ok0 = (alpha != beta) & _necessary_mask(rp.p_a, rp.p_b, alpha, beta)
    idx = np.flatnonzero(ok0)
    if idx.size:
        ok0[idx] = _feasible(rp, alpha[idx], beta[idx], 0.0)
    lo = np.zeros(alpha.shape)
    hi = np.full(alpha.shape, np.inf)
    idx = np.flatnonzero(ok0)
    if idx.size:
        est = _ceiling_estimate(rp, alpha[idx], beta[idx])
        seeded = est > 0
        below = idx[seeded]
        good = _probe(rp, alpha, beta, lo, hi, below, est[seeded] * (1.0 - _SEED_WIDTH))
        above = below[good]
        _probe(rp, alpha, beta, lo, hi, above, est[seeded][good] * (1.0 + _SEED_WIDTH))
    for _ in range(_MAX_DOUBLINGS):
        idx = np.flatnonzero(ok0 & np.isinf(hi))
        if not idx.size:
            break
        _probe(rp, alpha, beta, lo, hi, idx, np.where(lo[idx] > 0, 2.0 * lo[idx], 1.0))
    hi = np.where(np.isinf(hi), lo, hi)
    while True:
        idx = np.flatnonzero(ok0 & (hi - lo > BISECT_TOL))
        if not idx.size:
            break
        mid = 0.5 * (lo[idx] + hi[idx])
        good = _feasible(rp, alpha[idx], beta[idx], mid)
        lo[idx[good]] = mid[good]
        hi[idx[~good]] = mid[~good]
    return np.where(ok0, lo, -np.inf)


def _best_point(rp, alphas, betas):
    a, b = np.meshgrid(alphas, betas, indexing="ij")
    a, b = a.ravel(), b.ravel()
    c = max_common_cprime(rp, a, b)
    # highest C', then smallest alpha, then smallest beta
    order = np.lexsort((b, a, -c))
    i = order[0]
    return float(a[i]), float(b[i]), float(c[i])


def _lattice(centre, step, half_width):
    pts = centre + step * np.arange(-half_width, half_width + 1)
    return pts[(pts > 0.0) & (pts < 1.0)]


def maximize_reversal(table: TrialTable) -> ReversalSolution:
    """Reversing split with the largest common ``C'`` found by lattice search.

    A cell-centred 101 x 101 lattice over (alpha, beta) is searched first,
    then two passes of a ten times finer lattice around the incumbent. The
    inner bisection on ``C'`` uses direct verification as its test.
    """
    rp = rates(table)
    if rp.p_a == rp.p_b:
        raise InfeasibleError("the arms tie; no split can make B lead in both parts")
    _leading_rates(rp)
    step = 1.0 / LATTICE_SIZE
    grid = (np.arange(LATTICE_SIZE) + 0.5) * step
    a, b, c = _best_point(rp, grid, grid)
    for _ in range(REFINE_PASSES):
        if not c > 0:
            break
        # the finer lattice spans one coarse step either side of the incumbent
        step /= REFINE_FACTOR
        a, b, c = _best_point(rp, _lattice(a, step, REFINE_FACTOR), _lattice(b, step, REFINE_FACTOR))
    if not c > 0:
        raise InfeasibleError("no lattice point admits a positive common C'")
    solution = solve_reversal(table, a, b, c)
    if not solution.verified:
        raise NoConvergenceError(f"search optimum at alpha={a}, beta={b}, c'={c} did not re-verify")
    return solution


# -- integer counts ----------------------------------------------------------


def _split_cell(x1, x2):
    total = x1 + x2
    whole = round(total)
    if abs(total - whole) > 1e-6:
        raise DomainError(f"cell values {x1} + {x2} do not sum to a whole count")
    f1, f2 = math.floor(x1), math.floor(x2)
    left = whole - f1 - f2
    r1, r2 = x1 - f1, x2 - f2
    # largest remainder takes the leftover unit; ties go to part 1
    if left >= 1:
        if r1 >= r2:
            f1 += 1
        else:
            f2 += 1
        left -= 1
    f1 += max(left, 0)
    f1 = min(max(f1, 0), whole)
    return f1, whole - f1


def _repair_arm(s1, n1, s2, n2, arm):
    if n1 + n2 < 2:
        raise DomainError(f"arm {arm} has too few trials to occupy both parts")
    if n1 == 0:
        n1, n2 = 1, n2 - 1
    elif n2 == 0:
        n1, n2 = n1 - 1, 1
    if s1 > n1:
        s1, s2 = n1, s2 + (s1 - n1)
    if s2 > n2:
        s1, s2 = s1 + (s2 - n2), n2
    return s1, n1, s2, n2


def integerize(parts, target_c_prime: Optional[float] = None) -> IntegerSplit:
    """Round a fractional split to whole counts, preserving every total exactly.

    Each of the four cells is rounded as a pair (part 1, part 2) by largest
    remainder. The realized ``C'_i`` of the integer parts are recomputed;
    when ``target_c_prime`` is given, ``verified`` reports whether both still
    reach it.
    """
    p1, p2 = parts
    cells = [_split_cell(x1, x2) for x1, x2 in zip(p1.as_tuple(), p2.as_tuple())]
    (sa1, sa2), (na1, na2), (sb1, sb2), (nb1, nb2) = cells
    sa1, na1, sa2, na2 = _repair_arm(sa1, na1, sa2, na2, "A")
    sb1, nb1, sb2, nb2 = _repair_arm(sb1, nb1, sb2, nb2, "B")
    t1 = TrialTable(sa1, na1, sb1, nb1)
    t2 = TrialTable(sa2, na2, sb2, nb2)
    n_total = t1.total_trials + t2.total_trials
    realized = _realized((t1, t2), n_total)
    verified = None
    if target_c_prime is not None:
        verified = all(r is not None and r.c_prime >= target_c_prime - VERIFY_SLACK for r in realized)
    return IntegerSplit((t1, t2), realized, verified)
