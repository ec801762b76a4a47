"""2-adic limits of v along power towers."""

import pytest

from pow2comp.errors import StabilizationError
from pow2comp.padic import (
    MIN_RUN,
    PolynomialSpec,
    poly_limit_check,
    poly_nullity_check,
    theta,
    theta0_mod32,
)


def test_known_limits():
    assert theta(-1, 3, 12).value.value == 7
    assert theta(1, 3, 12).value.value == 6
    assert theta(-1, 2, 12).value.value == 3
    assert theta(-2, 2, 12).value.value == 2
    assert theta(3, 2, 12).value.value == 2


def test_theta_zero_mod16():
    approx = theta(0, 4, 12)
    assert approx.value.value == 8
    assert approx.k0 == 3


def test_theta0_mod32():
    r = theta0_mod32(16)
    assert r.value == 8
    with pytest.raises(ValueError):
        theta0_mod32(8)


def test_truncate_keeps_prefix():
    approx = theta(0, 5, 16)
    t = approx.truncate(3)
    assert t.n_exp == 3
    assert t.value.value == approx.value.value % 8


def test_theta_skips_nonpositive_terms():
    # 2^k - 6 < 1 for k <= 2; the trace simply starts at k = 3
    approx = theta(-6, 2, 12)
    assert approx.value.value in range(4)


def test_theta_argument_validation():
    with pytest.raises(ValueError):
        theta(0, 0, 12)
    with pytest.raises(ValueError):
        theta(0, 3, MIN_RUN - 1)


def test_stabilization_error_carries_trace():
    # mod 32 needs k >= 8; a window ending at 6 cannot show a run
    with pytest.raises(StabilizationError) as exc:
        theta(0, 5, 6)
    assert len(exc.value.trace) == 7


def test_polynomial_spec():
    p = PolynomialSpec((0, 0, 1))
    assert p.degree == 2
    assert p.eval_pow2(5) == 1024
    assert not p.has_negative_tail()
    assert str(p) == "x^2"
    assert str(PolynomialSpec((3, -1, 2))) == "2*x^2 - x + 3"
    with pytest.raises(ValueError):
        PolynomialSpec((5,))
    with pytest.raises(ValueError):
        PolynomialSpec((0, 1, -2))


def test_poly_limit_square():
    p = PolynomialSpec((0, 0, 1))  # x^2: towers v(4^k)
    report = poly_limit_check(p, 3, (0, 10))
    assert report.stabilized
    assert report.residue is not None
    assert report.trace[-1][1] == report.residue.value


def test_poly_limit_rejects_negative():
    with pytest.raises(ValueError):
        poly_limit_check(PolynomialSpec((0, -1, 1)), 3, (0, 8))


def test_poly_limit_short_window_not_stabilized():
    p = PolynomialSpec((0, 0, 1))
    report = poly_limit_check(p, 5, (0, 2))
    assert not report.stabilized
    assert report.k0 is None


def test_poly_nullity_x2_minus_x():
    p = PolynomialSpec((0, -1, 1))  # x^2 - x: borrow block grows with k
    report = poly_nullity_check(p, 3, (1, 20))
    assert report.passed
    assert report.first_off_support is not None
    assert report.stays_off
    assert all(r == 0 for _, r in report.sampled_residues)


def test_poly_nullity_requires_negative_tail():
    with pytest.raises(ValueError):
        poly_nullity_check(PolynomialSpec((0, 0, 1)), 3, (0, 8))


def test_prefix_coherence_spot():
    for a in (-3, 0, 2):
        fine = theta(a, 4, 16)
        coarse = theta(a, 3, 16)
        assert coarse.value.value == fine.value.value % 8
