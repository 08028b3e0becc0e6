from fractions import Fraction

import mpmath
import pytest

from nsaw.errors import IrrationalScaleFactor, InvalidParameters
from nsaw.little_q_jacobi import (
    LQJParams,
    exact_sqrt,
    laurent_limit_rank,
    lqj_E_vec,
    lqj_eigen_residual,
    lqj_gram_report,
    lqj_inner,
    lqj_L_apply,
    lqj_L_eigenvalue,
    lqj_limit_check,
    lqj_norm,
    lqj_poly,
)

F = Fraction
P = LQJParams(F(1, 4), F(1, 3), F(1, 5))


def discrete_inner(f, g, p, terms=400):
    """sum_k (bq;q)_k/(q;q)_k (aq)^k f(q^k) g(q^k), normalised to total mass 1."""
    with mpmath.workdps(40):
        q, a, b = (mpmath.mpf(v.numerator) / v.denominator for v in (p.q, p.a, p.b))
        total = 0
        mass = 0
        for k in range(terms):
            w = mpmath.qp(b * q, q, k) / mpmath.qp(q, q, k) * (a * q) ** k
            x = q**k
            fx = sum(mpmath.mpf(c.numerator) / c.denominator * x**j for j, c in f.coeffs.items())
            gx = sum(mpmath.mpf(c.numerator) / c.denominator * x**j for j, c in g.coeffs.items())
            total += w * fx * gx
            mass += w
        return total / mass


def test_params():
    with pytest.raises(InvalidParameters):
        LQJParams(F(1), F(1, 2), F(1, 2))
    assert P.positive_regime()
    assert exact_sqrt(F(9, 16)) == F(3, 4)
    with pytest.raises(IrrationalScaleFactor):
        exact_sqrt(F(1, 2))


def test_poly_monic_and_eigen():
    for n in range(7):
        Pn = lqj_poly(n, P)
        assert Pn.degree == n and Pn.coeff(n) == 1
        assert lqj_L_apply(Pn, P) == Pn * lqj_L_eigenvalue(n, P)


def test_printed_reading_breaks_eigen_equation():
    for n in (1, 2, 3):
        Pn = lqj_poly(n, P, reading="printed")
        assert lqj_L_apply(Pn, P) != Pn * lqj_L_eigenvalue(n, P)


def test_orthogonality_against_discrete_measure():
    polys = [lqj_poly(n, P) for n in range(4)]
    for m in range(4):
        for n in range(4):
            got = discrete_inner(polys[m], polys[n], P)
            h = lqj_norm(n, P)
            with mpmath.workdps(40):
                ref = mpmath.mpf(h.numerator) / h.denominator if m == n else 0
                assert abs(got - ref) < 1e-30
            assert lqj_inner(polys[m], polys[n], P) == (h if m == n else 0)


def test_vector_eigen_equations():
    for n in range(-5, 6):
        assert lqj_eigen_residual(n, P).is_zero(), n


def test_second_component_vanishes_for_n0():
    assert lqj_E_vec(0, P).g2.is_zero()


def test_gram_diagonal():
    G = lqj_gram_report(3, P)
    assert all(v == 0 for (m, n), v in G.items() if m != n)
    assert all(G[(n, n)] > 0 for n in range(-3, 4))


def test_limit_poly_n1_normwise():
    rep = lqj_limit_check(1, P, steps=20)
    assert rep.final_error < 1e-6
    assert rep.monotone_tail(8)
    assert abs(rep.empirical_order() - 1) < 0.05
    # the pointwise metric is dominated by a zero of P_1 near x = 3/4
    assert rep.notes["final_errors"]["pointwise"] > rep.final_error


def test_limit_vector():
    rep = lqj_limit_check(-2, P, steps=14, kind="vector")
    assert rep.monotone_tail(6)
    assert abs(rep.empirical_order() - 1) < 0.05


def test_limit_rejects_bad_arguments():
    with pytest.raises(ValueError):
        lqj_limit_check(1, P, steps=0)
    with pytest.raises(ValueError):
        lqj_limit_check(1, P, steps=2, metric="sup")


def test_laurent_limits_become_dependent():
    gaps = [r["rank_gap"] for r in laurent_limit_rank(2, P)]
    assert all(b < a / 4 for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-4
