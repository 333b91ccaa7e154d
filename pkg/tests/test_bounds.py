import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

import oracles
from frozen import C_ZERO, FAILING_WORDS, Q_N2, UNION_BOUND_N2_M5
from triangular_lo.bounds import (
    alpha_for_epsilon,
    bound_report,
    c_zero,
    concentration_delta,
    distinctness_lower,
    failing_word_count,
    property_star_bound,
    quotient_bound,
    quotient_tail_bound,
    relator_pass_probability,
    theta_correction,
    union_bound,
)
from triangular_lo.stats import standard_error, wilson_interval
from triangular_lo.words import count_w3


@pytest.mark.parametrize("n", range(1, 6))
def test_failing_count_matches_enumeration(n):
    for eta in product((False, True), repeat=n):
        assert failing_word_count(n, sum(eta)) == oracles.failing_words(n, eta) == FAILING_WORDS[n]


def test_failing_count_examples():
    assert failing_word_count(2, 2) == 16
    assert failing_word_count(2, 1) == 16
    with pytest.raises(ValueError):
        failing_word_count(2, 3)
    with pytest.raises(ValueError):
        failing_word_count(2, -1)


def test_pass_probability_is_exact():
    assert relator_pass_probability(2) == Q_N2
    assert isinstance(relator_pass_probability(50), Fraction)


def test_union_bound_examples():
    assert union_bound(2, 0) == 1.0
    assert union_bound(2, 5) == pytest.approx(UNION_BOUND_N2_M5, abs=1e-15)
    assert union_bound(50, math.ceil(8 * 0.5 * 50)) < 1e-3
    assert union_bound(1, 1) == 0.0  # q = 0 at n = 1: both words fail every assignment
    with pytest.raises(ValueError):
        union_bound(0, 3)
    with pytest.raises(ValueError):
        union_bound(3, -1)


def test_union_bound_is_monotone_in_m():
    values = [union_bound(30, m) for m in range(0, 400, 10)]
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_c_zero():
    assert c_zero() == pytest.approx(C_ZERO, abs=1e-15)
    assert abs(c_zero() - 0.3012) <= 1e-4
    assert abs(2 * 0.75 ** (8 * c_zero()) - 1) <= 1e-12
    assert 0.125 < c_zero() < 0.5


def test_distinctness():
    assert distinctness_lower(1, 3) == 0.0
    assert distinctness_lower(10, 10) == pytest.approx(1 - 100 / count_w3(10))
    assert theta_correction(1, 3) == math.inf
    assert theta_correction(10, 10) == pytest.approx(1 / distinctness_lower(10, 10) - 1)


def test_concentration_delta():
    p = 0.5 / 100 ** 2
    assert concentration_delta(100, p) == pytest.approx((p * count_w3(100)) ** (-1 / 3))
    assert concentration_delta(5, 0.0) == math.inf


def test_quotient_bounds():
    assert quotient_bound(100, 0.0, 0.5) == (1.0, 1.0)
    n = 100
    alpha = alpha_for_epsilon(0.5)
    assert alpha ** 2 * 1.5 > 1
    star, tail = quotient_bound(n, 1.5 * math.log(n) / n ** 2, alpha)
    assert 0 <= star <= 1 and 0 <= tail <= 1
    assert math.isfinite(star) and math.isfinite(tail)
    ps = np.linspace(0, 0.01, 60)
    for a in (0.2, 0.5, 0.9):
        stars = [property_star_bound(n, p, a) for p in ps]
        tails = [quotient_tail_bound(n, p, a) for p in ps]
        assert all(x >= y for x, y in zip(stars, stars[1:]))
        assert all(x >= y for x, y in zip(tails, tails[1:]))
    for bad in (0.0, 1.0, -0.1):
        with pytest.raises(ValueError):
            quotient_bound(10, 0.1, bad)


def test_alpha_for_epsilon():
    assert alpha_for_epsilon(0.5) == pytest.approx(1 / math.sqrt(1.5) + 1e-6)
    with pytest.raises(ValueError):
        alpha_for_epsilon(0)


def test_bound_report_clamped():
    for n, m in [(2, 5), (1, 3), (20, 1), (150, 960)]:
        d = bound_report(n, m=m, alpha=0.3).as_dict()
        for key in ("union_bound", "distinctness_lower", "property_star_bound", "quotient_bound"):
            assert 0.0 <= d[key] <= 1.0
    r = bound_report(2, m=5)
    assert r.q_exact == Q_N2 and r.as_dict()["q_exact"] == "3/7"
    r = bound_report(100, p=0.5 / 100 ** 2)
    assert r.m == math.ceil((1 - r.delta) * r.p * count_w3(100))
    with pytest.raises(ValueError):
        bound_report(3)


def test_wilson_interval():
    lo, hi = wilson_interval(0, 20)
    assert lo == 0.0 and 0 < hi < 0.2
    lo, hi = wilson_interval(20, 20)
    assert hi == 1.0 and lo > 0.8
    lo, hi = wilson_interval(37, 100)
    # frozen from statsmodels' proportion_confint(37, 100, method="wilson")
    assert lo == pytest.approx(0.281824, abs=1e-6) and hi == pytest.approx(0.467795, abs=1e-6)
    assert standard_error(0.5, 100) == pytest.approx(0.05)
