import math
from fractions import Fraction

import pytest
from scipy.special import jv

from nsaw.bessel import (
    PowerSeries,
    bessel_eval,
    bessel_limit_check,
    bessel_series,
    dunkl_apply,
    dunkl_eigen_residual,
    lowering_raising_residuals,
    nonsym_bessel,
    printed_pairing_error,
    scaled_jacobi,
    vector_eigen_check,
)
from nsaw.errors import PoleAtNegativeInteger
from nsaw.mutations import mutated

F = Fraction
CASES = [(F(1, 2), F(3)), (F(0), F(1)), (F(-1, 3), F(5, 2))]


def normalised_J(alpha, t):
    # Gamma(alpha+1) (t/2)^-alpha J_alpha(t), from scipy
    if t == 0:
        return 1.0
    return math.gamma(alpha + 1) * (t / 2) ** (-alpha) * jv(alpha, t)


@pytest.mark.parametrize("alpha", [0.5, 0.0, -1 / 3, 2.25])
def test_series_against_scipy(alpha):
    for t in (0.1, 1.0, 2.5, 4.0):
        val, nxt = bessel_eval(F(alpha), t)
        assert abs(val - normalised_J(alpha, t)) < 1e-13
        assert nxt < 1e-15


def test_half_integer_cases():
    # J_{-1/2} normalised is cos, J_{1/2} normalised is sin(t)/t
    for t in (0.3, 1.7, 3.0):
        assert abs(bessel_eval(F(-1, 2), t)[0] - math.cos(t)) < 1e-15
        assert abs(bessel_eval(F(1, 2), t)[0] - math.sin(t) / t) < 1e-15


def test_pole():
    with pytest.raises(PoleAtNegativeInteger):
        bessel_series(F(-2), 1, 10)
    with pytest.raises(PoleAtNegativeInteger):
        nonsym_bessel(F(-1), 1)


def test_power_series_basics():
    s = PowerSeries((F(1), F(2), F(3)), 2)
    assert s.derivative().coeffs[:2] == (F(2), F(6)) and s.derivative().order == 1
    assert s.mul_x().coeff(3) == 3 and s.mul_x().order == 3
    assert s.reflect().coeff(1) == -2
    assert (s - s).is_zero()


@pytest.mark.parametrize("alpha,lam", CASES)
def test_dunkl_eigen(alpha, lam):
    r = dunkl_eigen_residual(alpha, lam, 32)
    assert r.is_zero() and r.order >= 30


@pytest.mark.parametrize("alpha,lam", CASES)
def test_vector_eigen(alpha, lam):
    top, bottom = vector_eigen_check(alpha, lam, 32)
    assert top.is_zero() and bottom.is_zero()


def test_dunkl_on_monomials():
    # D x^k = (k + (alpha + 1/2)(1 - (-1)^k)) x^(k-1)
    alpha = F(1, 3)
    for k in range(1, 6):
        coeffs = [F(0)] * 8
        coeffs[k] = F(1)
        out = dunkl_apply(PowerSeries(tuple(coeffs), 7), alpha)
        expected = k + (alpha + F(1, 2)) * (1 - (-1) ** k)
        assert out.coeff(k - 1) == expected
        assert all(out.coeff(j) == 0 for j in range(out.order + 1) if j != k - 1)


def test_nonsym_value_against_scipy():
    alpha, lam = F(1, 2), F(3)
    E = nonsym_bessel(alpha, lam)
    for x in (0.2, 0.7):
        t = float(lam) * x
        ref = complex(normalised_J(0.5, t), t / 3 * normalised_J(1.5, t))
        assert abs(E.evaluate(x) - ref) < 1e-13


def test_lowering_raising():
    low, high = lowering_raising_residuals(F(2, 7), 30)
    assert low.is_zero() and high.is_zero()


def test_mutation_detected():
    with mutated("bessel-odd-sign"):
        r = dunkl_eigen_residual(F(1, 2), F(3), 20)
        top, bottom = vector_eigen_check(F(1, 2), F(3), 20)
    assert not r.is_zero()
    assert r.even.first_nonzero() <= 1
    assert not (top.is_zero() and bottom.is_zero())


def test_symmetric_limit():
    rep = bessel_limit_check(0.5, 1 / 3, 2.0, 0.6)
    assert rep.final_error < 1e-3
    assert rep.monotone_tail(5)
    assert 0.8 < rep.empirical_order() < 1.2


@pytest.mark.parametrize("target", ["E(-n),+", "E(-n),-", "E(+n),+", "E(+n),-"])
def test_nonsymmetric_limits(target):
    rep = bessel_limit_check(0.5, 1 / 3, 2.0, 0.6, target=target)
    assert rep.final_error < 2e-3
    assert rep.monotone_tail(5)
    assert "pairing" in rep.notes


def test_literal_pairing_fails_for_one_sign():
    errs = printed_pairing_error(0.5, 1 / 3, 2.0, 0.6, 1024)
    assert errs["+"] > 0.1
    assert errs["-"] < 2e-3


def test_fitted_constant_exact_at_zero():
    for n in (8, 64, 1024):
        assert abs(scaled_jacobi(n, 0.5, 1 / 3, 1.0, "fitted") - 1) < 1e-12
    assert abs(scaled_jacobi(1024, 0.5, 1 / 3, 1.0, "printed") - 1) > 1e-4
