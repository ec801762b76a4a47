"""Root finding for the lacunary series and the growth-rate report."""

import math

import pytest
from mpmath import mp

from pow2comp.analytic import (
    RealApprox,
    asymptotic_report,
    eval_f,
    eval_f_prime,
    find_c,
    find_rho,
    log_big,
)

# first-run bisection outputs, frozen as regression anchors
RHO_GOLDEN = 0.5661237926845599
C_GOLDEN = 0.3321979006091403


def test_eval_f_signs():
    assert eval_f(0.5) > 0
    assert eval_f(0.7) < 0


def test_eval_f_domain():
    for bad in (0, 1, -0.2, 1.3):
        with pytest.raises(ValueError):
            eval_f(bad)


def test_derivative_negative_on_bracket():
    for x in (0.5, 0.55, 0.6, 0.7):
        assert eval_f_prime(x) < 0


def test_find_rho_brackets_golden():
    rho = find_rho(1e-13)
    assert abs(float(rho.value) - RHO_GOLDEN) <= float(rho.error_bound) + 1e-15
    assert float(rho.error_bound) < 1e-12
    # the root really is a root at working precision
    assert abs(eval_f(rho.value)) < 1e-12


def test_find_rho_tightens_with_tol():
    loose = find_rho(1e-6)
    tight = find_rho(1e-12)
    assert float(tight.error_bound) < float(loose.error_bound)


def test_find_c_golden():
    rho = find_rho(1e-13)
    c = find_c(rho)
    assert abs(float(c.value) - C_GOLDEN) < 1e-10
    assert float(c.error_bound) < 1e-9


def test_real_approx_float():
    r = RealApprox(mp.mpf("0.25"), mp.mpf("1e-10"))
    assert float(r) == 0.25


def test_log_big_matches_math_log():
    for n in (1, 2, 10, 10**15):
        assert math.isclose(log_big(n), math.log(n), rel_tol=1e-12)
    # beyond float range: log(2^5000) = 5000 log 2
    assert math.isclose(log_big(1 << 5000), 5000 * math.log(2), rel_tol=1e-12)


def test_asymptotic_report(exact_2001):
    rho = find_rho(1e-13)
    c = find_c(rho)
    report = asymptotic_report(exact_2001, rho, c, (200, 1000))
    assert report.max_delta < 1e-3
    assert report.n_range == (200, 1000)
    assert len(report.deltas) == 801
    assert report.first_delta == report.deltas[0]


def test_asymptotic_trend_from_start(exact_2001):
    rho = find_rho(1e-13)
    c = find_c(rho)
    # deviation falls steeply away from the small-n regime
    report = asymptotic_report(exact_2001, rho, c, (1, 500))
    assert report.trend_decreasing


def test_asymptotic_range_validation(exact_2001):
    rho = find_rho(1e-13)
    c = find_c(rho)
    with pytest.raises(ValueError):
        asymptotic_report(exact_2001, rho, c, (0, 100))
    with pytest.raises(ValueError):
        asymptotic_report(exact_2001, rho, c, (1, 5000))
