from fractions import Fraction

import pytest

from nsaw.askey_wilson import AWParams, aw_poly
from nsaw.core_poly import LaurentPoly, sym_decompose_ab, sym_recompose_ab
from nsaw.daha import scalar_Y_apply, t1_classify
from nsaw.errors import NotAnEigenvector
from nsaw.nonsym_aw import (
    E_laurent,
    E_vec,
    eigen_residual,
    form_constant,
    form_constant_from_n,
    four_equation_residuals,
    gram_is_diagonal,
    gram_report,
    positivity_check,
    residual_is_zero,
    y_eigenvalue,
)

F = Fraction
P0 = AWParams(F(1, 2), F(1, 3), F(-1, 4), F(1, 5), F(2, 3))
P1 = AWParams(F(1, 3), F(2, 5), F(1, 7), F(-3, 4), F(1, 2))


@pytest.mark.parametrize("p", [P0, P1])
@pytest.mark.parametrize("route", ["scalar", "matrix", "four_equations"])
def test_eigen_routes(p, route):
    for n in range(-4, 5):
        assert residual_is_zero(eigen_residual(n, p, route)), (n, route)


def test_vector_and_laurent_forms_agree():
    for n in range(-5, 6):
        assert sym_recompose_ab(E_vec(n, P0), P0.a, P0.b) == E_laurent(n, P0)
        assert sym_decompose_ab(E_laurent(n, P0), P0.a, P0.b) == E_vec(n, P0)


def _solve_eigvec(n, p):
    # independent of the closed form: solve Y f = lambda f on the span of
    # z^-|n| .. z^|n| with the coefficient of the extreme monomial set to 1
    m = abs(n)
    lam = y_eigenvalue(n, p)
    ks = list(range(-m, m + 1))
    cols = [scalar_Y_apply(LaurentPoly.monomial(k), p) - LaurentPoly.monomial(k) * lam for k in ks]
    lead = -m if n < 0 else m
    unknown = [k for k in ks if k != lead]
    rows = sorted({j for c in cols for j in c.coeffs})
    A = [[cols[ks.index(k)].coeff(j) for k in unknown] + [-cols[ks.index(lead)].coeff(j)] for j in rows]
    # Gauss-Jordan over Fraction
    piv_cols = []
    r = 0
    for c in range(len(unknown)):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        A[r] = [v / A[r][c] for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                A[i] = [vi - A[i][c] * vr for vi, vr in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    assert all(row[-1] == 0 for row in A[r:]), "inconsistent system"
    sol = {lead: F(1)}
    for i, c in enumerate(piv_cols):
        sol[unknown[c]] = A[i][-1]
    return LaurentPoly(sol)


@pytest.mark.parametrize("n", [-3, -2, -1, 1, 2, 3])
def test_closed_form_matches_linear_solve(n):
    E = E_laurent(n, P0)
    lead = -abs(n) if n < 0 else abs(n)
    f = _solve_eigvec(n, P0)
    assert E == f * E.coeff(lead)


def test_eigenvalues_distinct():
    vals = [y_eigenvalue(n, P0) for n in range(-6, 7)]
    assert len(set(vals)) == len(vals)


def test_printed_third_sign_fails():
    for n in (1, 2, 3):
        r = four_equation_residuals(n, P0, third_sign="printed")
        assert not r[2].is_zero()
        assert residual_is_zero(four_equation_residuals(n, P0))


def test_E_n_not_in_T1_eigenspace():
    # E_-n is neither symmetric nor anti-symmetric for n >= 1
    with pytest.raises(NotAnEigenvector):
        t1_classify(E_laurent(-2, P0), P0)
    assert t1_classify(aw_poly(2, P0), P0).symmetric


@pytest.mark.parametrize("p", [P0, P1])
def test_form_constant_independent_of_n(p):
    C = form_constant(p)
    assert all(form_constant_from_n(n, p) == C for n in range(1, 8))


def test_gram_diagonal_and_nonzero():
    G = gram_report(4, P0)
    assert gram_is_diagonal(G)
    assert all(G[(n, n)] != 0 for n in range(-4, 5))


def test_gram_fails_with_wrong_constant():
    from nsaw.askey_wilson import inner_product_sym

    C = form_constant(P0) * 2
    v1, v2 = E_vec(1, P0), E_vec(-1, P0)
    val = inner_product_sym(v1.f1, v2.f1, P0) + C * inner_product_sym(v1.f2, v2.f2, P0.shifted())
    assert val != 0


def test_positivity():
    cert = positivity_check(P0, 40)
    assert cert.applicable and cert.passed
    assert "40" in cert.scope
    not_app = positivity_check(P1, 10)
    assert not not_app.applicable and not not_app.passed
