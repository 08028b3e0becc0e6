import random
from fractions import Fraction

import mpmath
import pytest

from nsaw.askey_wilson import (
    AWParams,
    aw_L_apply,
    aw_L_eigenvalue,
    aw_norm,
    aw_poly,
    favard_check,
    inner_product_sym,
    random_aw_params,
    recurrence_coeffs,
)
from nsaw.core_poly import qpoch_multi
from nsaw.errors import DivisionNotExact, InvalidParameters
from nsaw.mutations import mutated

F = Fraction
P0 = AWParams(F(1, 2), F(1, 3), F(-1, 4), F(1, 5), F(2, 3))


def mpf(x):
    return mpmath.mpf(x.numerator) / x.denominator


def qhyper_monic(n, p, z):
    """Monic P_n[z] from a term-by-term 4phi3 built on mpmath.qp."""
    q, a, b, c, d = (mpf(v) for v in (p.q, p.a, p.b, p.c, p.d))
    e4 = a * b * c * d
    series = 0
    for k in range(n + 1):
        num = mpmath.qp(q**-n, q, k) * mpmath.qp(e4 * q ** (n - 1), q, k) * mpmath.qp(a * z, q, k) * mpmath.qp(a / z, q, k)
        den = mpmath.qp(a * b, q, k) * mpmath.qp(a * c, q, k) * mpmath.qp(a * d, q, k) * mpmath.qp(q, q, k)
        series += num / den * q**k
    pre = mpmath.qp(a * b, q, n) * mpmath.qp(a * c, q, n) * mpmath.qp(a * d, q, n) / a**n
    return pre * series / mpmath.qp(e4 * q ** (n - 1), q, n)


def test_params_validation():
    with pytest.raises(InvalidParameters):
        AWParams(F(3, 2), 1, 1, 1, 1)
    with pytest.raises(InvalidParameters):
        AWParams(F(1, 2), F(1, 2), F(2), F(1, 3), F(1, 5))  # ab = 1
    with pytest.raises(InvalidParameters):
        AWParams(F(1, 2), 0, F(1, 3), F(1, 5), F(1, 7))


@pytest.mark.parametrize("n", range(0, 6))
def test_poly_matches_mpmath_series(n):
    with mpmath.workdps(40):
        P = aw_poly(n, P0)
        for z in (mpmath.mpf("1.7"), mpmath.mpf("-0.6"), mpmath.mpc("0.3", "0.8")):
            exact = sum(mpf(c) * z**k for k, c in P.coeffs.items())
            assert abs(exact - qhyper_monic(n, P0, z)) < mpmath.mpf(10) ** -30


def test_monic_and_symmetric():
    for n in range(7):
        P = aw_poly(n, P0)
        assert P.degree == n and P.coeff(n) == 1 and P.is_symmetric()


def test_methods_agree_and_are_symmetric_in_parameters():
    for n in range(6):
        P = aw_poly(n, P0)
        assert P == aw_poly(n, P0, "hypergeometric")
        # P_n is symmetric in a, b, c, d although the series is not
        assert P == aw_poly(n, P0.permuted((3, 1, 2, 0)), "hypergeometric")


def test_L_eigen_and_recurrence_coeff_types():
    for n in range(6):
        P = aw_poly(n, P0)
        assert aw_L_apply(P, P0) == P * aw_L_eigenvalue(n, P0)
    B0, C0 = recurrence_coeffs(0, P0)
    assert C0 == 0 and isinstance(B0, Fraction)


def test_L_mutation_breaks_eigen_equation():
    P = aw_poly(2, P0)
    with mutated("L-backward-sign"):
        try:
            broken = aw_L_apply(P, P0) != P * aw_L_eigenvalue(2, P0)
        except DivisionNotExact:
            broken = True
    assert broken


def test_norm_is_product_of_C():
    prod = Fraction(1)
    for n in range(0, 9):
        if n:
            prod *= recurrence_coeffs(n, P0)[1]
        assert aw_norm(n, P0) == prod


def test_norm_against_askey_wilson_integral():
    # |a|, |b|, |c|, |d| < 1: the weight on [0, pi] is positive and
    # <P_m, P_n> / <1, 1> has to reproduce h_n delta_mn.
    p = AWParams(F(1, 3), F(1, 2), F(-1, 3), F(1, 4), F(-1, 5))
    with mpmath.workdps(20):
        q, a, b, c, d = (mpf(v) for v in (p.q, p.a, p.b, p.c, p.d))

        def weight(t):
            e = mpmath.expj(t)
            num = mpmath.qp(e * e, q) * mpmath.qp(1 / (e * e), q)
            den = 1
            for s in (a, b, c, d):
                den *= mpmath.qp(s * e, q) * mpmath.qp(s / e, q)
            return mpmath.re(num / den)

        polys = [aw_poly(n, p) for n in range(3)]

        def val(P, t):
            z = mpmath.expj(t)
            return mpmath.re(sum(mpf(cf) * z**k for k, cf in P.coeffs.items()))

        base = mpmath.quad(weight, [0, mpmath.pi])
        for m in range(3):
            for n in range(m, 3):
                ip = mpmath.quad(lambda t: val(polys[m], t) * val(polys[n], t) * weight(t), [0, mpmath.pi]) / base
                expected = mpf(aw_norm(n, p)) if m == n else 0
                assert abs(ip - expected) < 1e-12
                assert inner_product_sym(polys[m], polys[n], p) == (aw_norm(n, p) if m == n else 0)


def test_norm_closed_form_shape():
    # h_1 written out from the general product formula at n = 1
    q, a, b, c, d = P0.q, P0.a, P0.b, P0.c, P0.d
    e4 = P0.e4
    expected = (
        (1 - q) * (1 - e4 / q) * qpoch_multi((a * b, a * c, a * d, b * c, b * d, c * d), q, 1)
        / ((1 - e4 / q) * (1 - e4)) / ((1 - e4) * (1 - e4 * q))
    )
    assert aw_norm(1, P0) == expected


def test_favard():
    rep = favard_check(P0, 50)
    assert rep.realB and rep.positiveC and rep.passed
    bad = AWParams(F(1, 2), F(3), F(1, 7), F(1, 5), F(1, 3))
    assert not favard_check(bad, 10).passed


def test_random_params_are_valid_and_seeded():
    r1 = [random_aw_params(random.Random(5)) for _ in range(3)]
    r2 = [random_aw_params(random.Random(5)) for _ in range(3)]
    assert r1 == r2
    rng = random.Random(11)
    for _ in range(10):
        p = random_aw_params(rng)
        assert aw_poly(3, p) == aw_poly(3, p, "hypergeometric")
