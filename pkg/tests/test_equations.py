import math

import numpy as np
import pytest

from radii import equations as eq
from radii.model import ClassSpec, DomainError, Family, UnsupportedClass


def brute_sum(k, r, start, tol=1e-16):
    # enough terms that n^k r^(n-1) / (1 - r) is negligible
    total, n = 0.0, start
    while True:
        term = n**k * r ** (n - 1)
        total += term
        if n > 10 and term / (1 - r) < tol:
            return total
        n += 1


def test_sum_n_pow_examples():
    assert eq.sum_n_pow(2, 0.0, 1) == 1.0
    assert eq.sum_n_pow(2, 0.5, 3) == pytest.approx(9.0, abs=1e-12)
    # partial sums to 40 digits with mpmath
    assert eq.sum_n_pow(3, 0.3, 3) == pytest.approx(6.137692628071636818, abs=1e-12)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
@pytest.mark.parametrize("r", [0.0, 0.05, 0.3, 0.6])
@pytest.mark.parametrize("start", [1, 2, 3])
def test_sum_n_pow_matches_partial_sums(k, r, start):
    assert eq.sum_n_pow(k, r, start) == pytest.approx(brute_sum(k, r, start), abs=1e-12)


def test_sum_n_pow_rejects_r_at_one():
    with pytest.raises(DomainError):
        eq.sum_n_pow(1, 1.0)


def test_log_tail_series_and_closed_form_agree():
    for r in [1e-6, 0.01, 0.099, 0.1, 0.101, 0.5, 0.9]:
        assert eq.log_tail(r) == pytest.approx(brute_sum_log(r), rel=1e-13, abs=1e-300)


def brute_sum_log(r):
    return math.fsum(r ** (n - 1) / n for n in range(3, 2000))


def test_log_factor_limits_and_crossover():
    assert eq.one_minus_r_log_over_r(0.0) == -1.0
    assert eq.one_minus_r_log_over_r(1.0) == 0.0
    lo = eq.one_minus_r_log_over_r(np.nextafter(eq.LOG_SERIES_CROSSOVER, 0))
    hi = eq.one_minus_r_log_over_r(eq.LOG_SERIES_CROSSOVER)
    assert lo == pytest.approx(hi, abs=1e-15)


def test_g_starlike_bound_n():
    assert eq.g_starlike_bound_n(0.0, 0.25, 0.7) == pytest.approx(0.75)
    assert eq.g_starlike_bound_n(1.0, 0.3, 0.2) == pytest.approx(-2.0)
    assert abs(eq.g_starlike_bound_n(0.164878, 0.0, 1.0)) < 1e-5
    assert abs(eq.g_starlike_bound_n(0.120385, 0.5, 1.0)) < 1e-5


def test_g_starlike_bound_m():
    assert eq.g_starlike_bound_m(0.0, 0.3, 0.4, 2.0) == pytest.approx(0.7)
    assert eq.g_starlike_bound_m(1.0, 0.3, 0.4, 2.0) == pytest.approx(-2.0)
    r = 1 - math.sqrt(1 / 2)
    assert abs(eq.g_starlike_bound_m(r, 0.0, 0.5, 1.0)) < 1e-12


def test_g_starlike_bound_m_over_n():
    assert eq.g_starlike_bound_m_over_n(0.0, 0.3, 0.4, 2.0) == pytest.approx(1.4)
    assert eq.g_starlike_bound_m_over_n(1.0, 0.3, 0.4, 2.0) == pytest.approx(-4.0)
    assert eq.g_starlike_bound_m_over_n(1 - 1e-12, 0.3, 0.4, 2.0) == pytest.approx(-4.0, abs=1e-9)
    # root from mpmath partial sums of 2(2-a) b r + M sum (n-a) r^(n-1)/n = 1 - a
    assert abs(eq.g_starlike_bound_m_over_n(0.38196601125010515, 0.0, 0.5, 1.0)) < 1e-14


def test_g_convex_bound_n():
    assert eq.g_convex_bound_n(0.0, 0.4, 0.1) == pytest.approx(0.6)
    assert eq.g_convex_bound_n(1.0, 0.4, 0.1) == pytest.approx(-6.0)
    assert abs(eq.g_convex_bound_n(0.0903331, 0.0, 1.0)) < 1e-6
    assert abs(eq.g_convex_bound_n(0.064723, 0.5, 1.0)) < 1e-5
    assert abs(eq.g_convex_bound_n(0.155972, 0.0, 0.0)) < 1e-5


def test_g_convex_bound_m():
    assert eq.g_convex_bound_m(0.0, 0.4, 0.1, 3.0) == pytest.approx(0.6)
    assert eq.g_convex_bound_m(1.0, 0.4, 0.1, 3.0) == pytest.approx(-6.0)


@pytest.mark.parametrize("fn, extra", [
    (eq.g_starlike_bound_n, ()),
    (eq.g_convex_bound_n, ()),
    (eq.g_starlike_bound_m, (1.0,)),
    (eq.g_starlike_bound_m_over_n, (1.0,)),
    (eq.g_convex_bound_m, (1.0,)),
])
def test_range_violations(fn, extra):
    with pytest.raises(DomainError):
        fn(0.1, 1.0, 0.5, *extra)
    with pytest.raises(DomainError):
        fn(0.1, 0.0, 1.5, *extra)
    with pytest.raises(DomainError):
        fn(-0.1, 0.0, 0.5, *extra)


def test_caratheodory_radius():
    assert eq.caratheodory_radius(0.0, 0.0, 1.0) == 0.5
    assert eq.caratheodory_radius(0.0, 0.5, 0.5) == pytest.approx(0.5)
    r = eq.caratheodory_radius(0.5, 1.0, 2.0)
    assert abs(2 * r + 4 * r * r / (1 - r) - 0.5) < 1e-12


def test_margins_at_zero():
    for cls in [
        ClassSpec(Family.BOUND_BY_N, 0.3),
        ClassSpec(Family.BOUND_BY_M, 0.3, 2.0),
        ClassSpec(Family.BOUND_BY_M_OVER_N, 0.3, 2.0),
        ClassSpec(Family.CARATHEODORY, 0.3, 2.0),
    ]:
        assert eq.sufficiency_margin_starlike(cls, 0.2, 0.0) == pytest.approx(0.8)
    assert eq.sufficiency_margin_convex(ClassSpec(Family.BOUND_BY_M, 0.3, 2.0), 0.2, 0.0) == pytest.approx(0.8)


def test_margin_values_from_mpmath_series():
    m = eq.sufficiency_margin_starlike(ClassSpec(Family.BOUND_BY_M, 0.5, 1.0), 0.25, 0.1)
    assert m == pytest.approx(0.54320987654320988, abs=1e-12)
    c = eq.sufficiency_margin_convex(ClassSpec(Family.BOUND_BY_M, 1.0, 2.0), 0.0, 0.05)
    assert c == pytest.approx(0.55066336200612334, abs=1e-12)


def test_margin_roots_at_paper_constants():
    assert abs(eq.sufficiency_margin_convex(ClassSpec(Family.BOUND_BY_N, 1.0), 0.0, 0.0903331)) < 1e-6


def test_convex_margin_m_over_n_unsupported():
    with pytest.raises(UnsupportedClass):
        eq.sufficiency_margin_convex(ClassSpec(Family.BOUND_BY_M_OVER_N, 0.3, 1.0), 0.0, 0.1)
