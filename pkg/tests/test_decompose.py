import math
import random
import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invsimpson.asymptotics import subtrial_confidence
from invsimpson.core import FractionalTable, RatePair, make_table, merge, rates
from invsimpson.decompose import (
    cprime_ceiling_exact,
    cprime_ceiling_printed,
    cprime_ceiling_sufficient,
    integerize,
    max_common_cprime,
    maximize_reversal,
    necessary_feasible,
    neutralize,
    neutralizing_split,
    solve_reversal,
    special_alpha_beta,
    suggest_lambda_mu,
)
from invsimpson.errors import (
    DegenerateRateError,
    DegenerateSplitError,
    DomainError,
    InfeasibleError,
    NoConvergenceError,
    PlacementError,
    TieError,
)

HOSPITAL = make_table(900, 1000, 800, 1000)
BERKELEY = make_table(41, 100, 29, 100)
HOSPITAL_RATES = RatePair(0.9, 0.8, 1000, 1000)


def _random_tables(seed, count, lo=20, hi=2000):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        na, nb = rng.randint(lo, hi), rng.randint(lo, hi)
        sa, sb = rng.randint(1, na - 1), rng.randint(1, nb - 1)
        if sa * nb == sb * na:
            continue
        if sa * nb < sb * na:
            sa, na, sb, nb = sb, nb, sa, na
        out.append(make_table(sa, na, sb, nb))
    return out


def _check_plan(table, sol):
    p = sol.plan
    rp = rates(table)
    a, b = p.alpha, p.beta
    assert a * p.p_a1 + (1 - a) * p.p_a2 == pytest.approx(rp.p_a, abs=1e-10)
    assert b * p.p_b1 + (1 - b) * p.p_b2 == pytest.approx(rp.p_b, abs=1e-10)
    assert p.p_b1 - p.p_a1 == pytest.approx(p.c_prime * p.sigma_1, abs=1e-10)
    assert p.p_b2 - p.p_a2 == pytest.approx(p.c_prime * p.sigma_2, abs=1e-10)
    assert p.sigma_alpha == pytest.approx(a * p.sigma_1 + (1 - a) * p.sigma_2, abs=1e-12)
    assert p.sigma_beta == pytest.approx(b * p.sigma_1 + (1 - b) * p.sigma_2, abs=1e-12)
    merged = [x + y for x, y in zip(sol.parts[0].as_tuple(), sol.parts[1].as_tuple())]
    assert merged == pytest.approx(list(table.as_tuple()), abs=1e-9)


# -- neutralizing --------------------------------------------------------------


def test_berkeley_neutralization_is_exact():
    assert neutralizing_split(BERKELEY, 0.2, 0.5) == (0.3, 0.7)
    p1, p2 = neutralize(BERKELEY, 0.2, 0.5)
    assert p1.as_tuple() == (6, 30, 14, 70)
    assert p2.as_tuple() == (35, 70, 15, 30)
    assert subtrial_confidence(p1, 200).c_prime == 0.0


def test_hospital_neutralization():
    alpha, beta = neutralizing_split(HOSPITAL, 0.4, 0.95)
    assert alpha == pytest.approx(0.05 / 0.55, abs=1e-15)
    assert beta == pytest.approx(0.15 / 0.55, abs=1e-15)
    p1, p2 = neutralize(HOSPITAL, 0.4, 0.95)
    for part, lam in ((p1, 0.4), (p2, 0.95)):
        assert part.rate_a == pytest.approx(lam, abs=1e-12)
        assert part.rate_b == pytest.approx(lam, abs=1e-12)
    merged = [x + y for x, y in zip(p1.as_tuple(), p2.as_tuple())]
    assert merged == pytest.approx([900, 1000, 800, 1000], abs=1e-9)


@pytest.mark.parametrize("lam, mu", [(0.29, 0.5), (0.2, 0.41), (0.3, 0.5), (0.2, 1.2)])
def test_neutralize_placement(lam, mu):
    with pytest.raises(PlacementError):
        neutralize(BERKELEY, lam, mu)


def test_neutralize_accepts_either_order_and_tie_fails():
    p1, _ = neutralize(BERKELEY, 0.5, 0.2)
    assert p1.rate_a == pytest.approx(0.5)
    with pytest.raises(TieError):
        neutralize(make_table(3, 10, 3, 10), 0.1, 0.9)


def test_suggest_lambda_mu():
    assert suggest_lambda_mu(BERKELEY) == pytest.approx((0.145, 0.705), abs=1e-15)
    assert suggest_lambda_mu(HOSPITAL) == pytest.approx((0.4, 0.95), abs=1e-15)
    with pytest.raises(PlacementError):
        suggest_lambda_mu(make_table(5, 10, 0, 10))


@given(st.integers(1, 98), st.integers(1, 98), st.data())
def test_neutralize_rates_property(sa, sb, data):
    if sa == sb:
        return
    t = make_table(sa, 99, sb, 99)
    lo, hi = sorted((sa / 99, sb / 99))
    lam = data.draw(st.floats(0, lo, exclude_max=True))
    mu = data.draw(st.floats(hi, 1, exclude_min=True))
    p1, p2 = neutralize(t, lam, mu)
    assert p1.rate_a == pytest.approx(lam, abs=1e-12) and p1.rate_b == pytest.approx(lam, abs=1e-12)
    assert p2.rate_a == pytest.approx(mu, abs=1e-12) and p2.rate_b == pytest.approx(mu, abs=1e-12)


# -- reversing at a fixed split ------------------------------------------------


def test_zero_cprime_reduces_to_neutralization():
    sol = solve_reversal(HOSPITAL, 0.9346154, 0.7384615, 0.0)
    p = sol.plan
    assert p.k1 == pytest.approx(0.933333, abs=1e-6)
    assert p.k2 == pytest.approx(0.423529, abs=1e-6)
    assert (p.p_a1, p.p_a2) == (p.p_b1, p.p_b2)
    assert sol.verified
    _check_plan(HOSPITAL, sol)
    n1, n2 = neutralize(HOSPITAL, p.k1, p.k2)
    for x, y in zip(n1.as_tuple() + n2.as_tuple(), sol.parts[0].as_tuple() + sol.parts[1].as_tuple()):
        assert x == pytest.approx(y, abs=1e-6)


def test_solve_at_sufficient_fraction():
    a, b = special_alpha_beta(HOSPITAL_RATES)
    c = 0.9 * cprime_ceiling_sufficient(HOSPITAL_RATES, a, b)
    sol = solve_reversal(HOSPITAL, a, b, c)
    assert sol.verified
    assert min(r.c_prime for r in sol.realized_confidences) >= c - 1e-9
    _check_plan(HOSPITAL, sol)


def test_solve_errors():
    with pytest.raises(DegenerateSplitError):
        solve_reversal(HOSPITAL, 0.5, 0.5, 0.0)
    with pytest.raises(DomainError):
        solve_reversal(HOSPITAL, 1.0, 0.5, 0.0)
    with pytest.raises(DomainError):
        solve_reversal(HOSPITAL, 0.9, 0.6, -0.1)
    with pytest.raises((InfeasibleError, NoConvergenceError)):
        solve_reversal(HOSPITAL, 0.9, 0.6, 5.0)


def test_monotone_feasibility():
    rng = random.Random(23)
    checked = 0
    for t in _random_tables(41, 400, hi=800):
        rp = rates(t)
        a, b = rng.random(), rng.random()
        if a == b or not necessary_feasible(rp, a, b):
            continue
        top = float(max_common_cprime(rp, a, b)[0])
        if not top > 0:
            continue
        for c in np.linspace(0.0, top, 9):
            assert solve_reversal(t, a, b, float(c)).verified
        checked += 1
        if checked == 20:
            break
    assert checked == 20


# -- ceilings ------------------------------------------------------------------


def test_necessary_feasible_examples():
    assert necessary_feasible(HOSPITAL_RATES, 0.9, 0.6)
    assert not necessary_feasible(HOSPITAL_RATES, 0.5, 0.5)
    assert not necessary_feasible(HOSPITAL_RATES, 0.62, 0.6)


def test_exact_ceiling_examples():
    a, b = 0.9346154, 0.7384615
    c = cprime_ceiling_exact(HOSPITAL_RATES, a, b, 3.911, 3.911)
    assert c == pytest.approx(0.012786, abs=2e-6)
    assert cprime_ceiling_exact(HOSPITAL_RATES, a, b, 7.822, 7.822) == pytest.approx(c / 2, rel=1e-12)
    # alpha * P_B == beta * P_A
    assert cprime_ceiling_exact(HOSPITAL_RATES, 0.9, 0.8, 1.0, 1.0) == pytest.approx(0.0, abs=1e-15)


def test_sufficient_ceiling_examples():
    a, b = special_alpha_beta(HOSPITAL_RATES)
    assert cprime_ceiling_sufficient(HOSPITAL_RATES, a, b) == pytest.approx(0.012785, abs=1e-6)
    assert cprime_ceiling_sufficient(HOSPITAL_RATES, 0.9, 0.8) == pytest.approx(0.0, abs=1e-15)
    small = [cprime_ceiling_sufficient(RatePair(0.9, 0.8, 1, n), a, b) for n in (10, 10**3, 10**6)]
    assert small[0] > small[1] > small[2] and small[2] < 1e-3


def test_special_split():
    a, b = special_alpha_beta(HOSPITAL_RATES)
    assert a == pytest.approx(0.934615, abs=5e-7)
    assert b == pytest.approx(0.738462, abs=5e-7)
    for rp in (HOSPITAL_RATES, rates(BERKELEY)):
        a, b = special_alpha_beta(rp)
        assert b / a == pytest.approx((rp.p_b / rp.p_a) ** 2, rel=1e-12)
        assert (1 - a) / (1 - b) == pytest.approx((rp.q_a / rp.q_b) ** 2, rel=1e-12)
        assert necessary_feasible(rp, a, b)
    gaps = [abs(np.subtract(*special_alpha_beta(RatePair(0.5 + e, 0.5, 1, 1)))) for e in (1e-1, 1e-2, 1e-3)]
    assert gaps[0] > gaps[1] > gaps[2]
    with pytest.raises(DegenerateRateError):
        special_alpha_beta(RatePair(1.0, 0.5, 1, 1))


def test_printed_ceiling_reference_values():
    assert cprime_ceiling_printed(HOSPITAL_RATES) == pytest.approx(0.065641, abs=1e-6)
    assert cprime_ceiling_printed(rates(BERKELEY)) == pytest.approx(0.0525710960, abs=1e-10)
    at = cprime_ceiling_printed(RatePair(0.6, 0.4, 10, 10))
    below = cprime_ceiling_printed(RatePair(0.6, 0.4 - 1e-9, 10, 10))
    assert at == pytest.approx(below, abs=1e-8)


def test_printed_exceeds_sufficient_at_special_split():
    a, b = special_alpha_beta(HOSPITAL_RATES)
    assert cprime_ceiling_printed(HOSPITAL_RATES) > 5 * cprime_ceiling_sufficient(HOSPITAL_RATES, a, b)


# -- search --------------------------------------------------------------------


@pytest.fixture(scope="module")
def hospital_best():
    return maximize_reversal(HOSPITAL)


def test_maximize_hospital(hospital_best):
    sol = hospital_best
    assert sol.verified
    assert min(r.c_prime for r in sol.realized_confidences) >= 0.04691
    _check_plan(HOSPITAL, sol)


def test_maximize_beats_special_point(hospital_best):
    a, b = special_alpha_beta(HOSPITAL_RATES)
    at_special = float(max_common_cprime(HOSPITAL_RATES, a, b)[0])
    assert hospital_best.plan.c_prime >= at_special


def test_maximize_is_deterministic(hospital_best):
    assert maximize_reversal(HOSPITAL) == hospital_best


def test_maximize_near_tie_and_tie():
    sol = maximize_reversal(make_table(501, 1000, 500, 1000))
    assert sol.verified and sol.plan.c_prime > 0
    with pytest.raises(InfeasibleError):
        maximize_reversal(make_table(500, 1000, 500, 1000))
    with pytest.raises(DomainError):
        maximize_reversal(make_table(500, 1000, 501, 1000))
    with pytest.raises(DegenerateRateError):
        maximize_reversal(make_table(10, 10, 5, 10))


# -- integer counts ------------------------------------------------------------


def test_integerize_keeps_integral_parts():
    parts = neutralize(BERKELEY, 0.2, 0.5)
    split = integerize(parts)
    assert [t.as_tuple() for t in split.parts] == [(6, 30, 14, 70), (35, 70, 15, 30)]


def test_integerize_half_goes_to_part_one():
    parts = (FractionalTable(5.5, 12, 3, 10), FractionalTable(4.5, 8, 2, 10))
    split = integerize(parts)
    assert split.parts[0].successes_a == 6 and split.parts[1].successes_a == 4
    assert merge(*split.parts).as_tuple() == (10, 20, 5, 20)


def test_integerize_hospital_optimum(hospital_best):
    split = integerize(hospital_best.parts, hospital_best.plan.c_prime)
    assert merge(*split.parts) == HOSPITAL
    assert min(r.c_prime for r in split.realized_confidences) >= 0.04691


@settings(max_examples=60)
@given(st.lists(st.floats(0.01, 0.99), min_size=4, max_size=4), st.integers(10, 500), st.integers(10, 500))
def test_integerize_preserves_totals(shares, na, nb):
    sa, sb = int(shares[0] * na), int(shares[1] * nb)
    fa, fb = shares[2], shares[3]
    pa1 = sa * fa
    pb1 = sb * fb
    na1 = max(pa1, na * fa)
    nb1 = max(pb1, nb * fb)
    if na - na1 < sa - pa1 or nb - nb1 < sb - pb1:
        return
    parts = (
        FractionalTable(pa1, na1, pb1, nb1),
        FractionalTable(sa - pa1, na - na1, sb - pb1, nb - nb1),
    )
    split = integerize(parts)
    assert merge(*split.parts).as_tuple() == (sa, na, sb, nb)
    for orig, rounded in zip(parts, split.parts):
        assert all(abs(x - y) <= 1.0 + 1e-9 for x, y in zip(orig.as_tuple(), rounded.as_tuple()))


def test_sufficiency_on_random_tables():
    for t in _random_tables(97, 25):
        rp = rates(t)
        a, b = special_alpha_beta(rp)
        sol = solve_reversal(t, a, b, 0.9 * cprime_ceiling_sufficient(rp, a, b))
        assert sol.verified
        _check_plan(t, sol)
