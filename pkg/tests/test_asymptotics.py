import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from invsimpson.asymptotics import (
    Method,
    aggregate_confidence,
    interval_prob_normal,
    prob_a_beats_b_normal,
    rate_diff_moments,
    significance_limit,
    subtrial_confidence,
)
from invsimpson.bayes import prob_a_beats_b_exact, significance_level
from invsimpson.core import FractionalTable, make_table
from invsimpson.errors import DegenerateRateError, DomainError, TieError
from invsimpson.special import std_normal_cdf

from conftest import tables


def test_significance_limit():
    assert significance_limit(0.0) == 0.5
    assert significance_limit(0.5) == pytest.approx(0.15865525393145705, abs=1e-15)
    assert abs(significance_level(820, 1600) - significance_limit(0.5)) < 0.02


@given(st.floats(-5, 5))
def test_significance_limit_symmetric(s):
    assert significance_limit(s) + significance_limit(-s) == pytest.approx(1.0, abs=1e-12)


def test_normal_hospital():
    r = prob_a_beats_b_normal(make_table(900, 1000, 800, 1000))
    assert r.method is Method.NORMAL
    assert r.z == pytest.approx(0.1 / math.sqrt(0.00025), rel=1e-12)
    assert r.prob_superiority == pytest.approx(1 - 1.27e-10, abs=1e-12)


def test_normal_symmetric_and_moderate():
    r = prob_a_beats_b_normal(make_table(50, 100, 50, 100))
    assert (r.z, r.prob_superiority) == (0.0, 0.5)
    t = make_table(60, 100, 50, 100)
    r = prob_a_beats_b_normal(t)
    assert r.z == pytest.approx(0.1 / math.sqrt(0.0049), rel=1e-12)
    assert r.prob_superiority == pytest.approx(0.9234, abs=1e-4)
    assert abs(r.prob_superiority - prob_a_beats_b_exact(t)) < 0.02


def test_normal_degenerate():
    with pytest.raises(DegenerateRateError):
        prob_a_beats_b_normal(make_table(10, 10, 3, 10))
    with pytest.raises(DegenerateRateError):
        prob_a_beats_b_normal(make_table(3, 10, 0, 10))


def test_rate_diff_moments():
    m = rate_diff_moments(0.9, 0.8, 1000, 1000)
    assert m.mean_diff == pytest.approx(0.1, abs=1e-15)
    assert m.var_diff == pytest.approx(0.00025, rel=1e-12)
    assert rate_diff_moments(0.3, 0.3, 5, 9).mean_diff == 0.0
    assert rate_diff_moments(1.0, 0.5, 4, 10).var_diff == pytest.approx(0.025, rel=1e-15)
    with pytest.raises(DomainError):
        rate_diff_moments(0.5, 0.5, 0, 1)


def test_interval_prob_normal():
    assert interval_prob_normal(0.3, 0.0) == 0.0
    assert interval_prob_normal(0.5, 1.0) == pytest.approx(0.95449973610364159, abs=1e-12)
    assert interval_prob_normal(0.5, 10.0) >= 1 - 1e-12
    with pytest.raises(DegenerateRateError):
        interval_prob_normal(0.0, 1.0)


def test_aggregate_confidence_values():
    r = aggregate_confidence(make_table(900, 1000, 800, 1000))
    assert r.sigma**2 == pytest.approx(0.5, rel=1e-12)
    assert r.c_value == pytest.approx(0.1 / math.sqrt(0.5), rel=1e-12)
    assert r.z == pytest.approx(6.32455532, rel=1e-8)
    r = aggregate_confidence(make_table(41, 100, 29, 100))
    sigma = math.sqrt(0.41 * 0.59 / 0.5 + 0.29 * 0.71 / 0.5)
    assert r.c_value == pytest.approx(0.12 / sigma, rel=1e-12)
    assert r.c_value == pytest.approx(0.126801445, abs=1e-9)
    assert r.z == pytest.approx(1.793243236, abs=1e-9)
    with pytest.raises(TieError):
        aggregate_confidence(make_table(5, 10, 10, 20))


@given(tables(nondegenerate=True))
def test_aggregate_antisymmetric(t):
    try:
        r = aggregate_confidence(t)
    except TieError:
        return
    s = aggregate_confidence(t.swapped())
    assert s.c_value == -r.c_value
    assert abs(s.z) == abs(r.z)
    assert r.prob_superiority == pytest.approx(std_normal_cdf(r.z), abs=1e-12)


def test_aggregate_matches_normal_z():
    rng = random.Random(3)
    done = 0
    while done < 100:
        na, nb = rng.randint(2, 5000), rng.randint(2, 5000)
        t = make_table(rng.randint(1, na - 1), na, rng.randint(1, nb - 1), nb)
        try:
            r = aggregate_confidence(t)
        except TieError:
            continue
        assert r.z == pytest.approx(prob_a_beats_b_normal(t).z, rel=1e-12, abs=1e-12)
        done += 1


def test_subtrial_confidence_hospital_parts():
    good = subtrial_confidence(FractionalTable(870, 900, 590, 600), 2000)
    assert good.sigma_i**2 == pytest.approx(0.12623, abs=1e-5)
    assert good.c_prime == pytest.approx(0.04691, abs=1e-5)
    assert math.sqrt(2000) * good.c_prime == pytest.approx(2.098, abs=1e-3)
    poor = subtrial_confidence(FractionalTable(30, 100, 210, 400), 2000, part_index=2)
    # .3 * .7 / .05 + .525 * .475 / .2
    assert poor.sigma_i**2 == pytest.approx(5.446875, rel=1e-12)
    # 210/400 - 30/100 = .225
    assert poor.c_prime == pytest.approx(0.225 / math.sqrt(5.446875), rel=1e-12)
    assert poor.c_prime == pytest.approx(0.0964070544, abs=1e-10)
    assert math.sqrt(2000) * poor.c_prime == pytest.approx(4.3114, abs=1e-4)
    assert poor.part_index == 2
    assert poor.c_prime * poor.sigma_i == pytest.approx(210 / 400 - 30 / 100, abs=1e-12)


def test_subtrial_confidence_edges():
    assert subtrial_confidence(FractionalTable(3, 10, 6, 20), 50).c_prime == 0.0
    with pytest.raises(DegenerateRateError):
        subtrial_confidence(FractionalTable(10, 10, 4, 4), 50)
    with pytest.raises(DomainError):
        subtrial_confidence(FractionalTable(1, 10, 1, 4), 5)


def test_limit_convergence_is_monotone():
    worst = []
    for n in (100, 400, 1600):
        half, root = n / 2, math.sqrt(n)
        lo, hi = math.ceil(half - root), math.floor(half + root)
        worst.append(max(
            abs(significance_level(s, n) - significance_limit((s - half) / root))
            for s in range(lo, hi + 1)
        ))
    assert worst[0] > worst[1] > worst[2]
