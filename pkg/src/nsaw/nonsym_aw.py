"""Nonsymmetric Askey-Wilson polynomials E_n, n in Z.

Laurent form: E_-n = P_n - Q_n and E_n = P_n - k_n Q_n, where
Q_n = (ab)^-1 z^-1 (1 - az)(1 - bz) P_{n-1}[z; qa, qb, c, d].
Vector form: the pair (f1, f2) of the decomposition with multiplier
z^-1 (1 - az)(1 - bz).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .askey_wilson import (
    AWParams,
    aw_L_apply,
    aw_L_eigenvalue,
    aw_norm,
    aw_poly,
    favard_check,
    inner_product_sym,
)
from .core_poly import (
    LaurentPoly,
    SymLaurentPoly,
    VecSymPair,
    ab_multiplier,
    sym_decompose_ab,
    sym_recompose_ab,
)
from .daha import matrix_Y_apply, scalar_Y_apply, y12, y21
from .errors import ParameterSingularity


def Q_poly(n: int, p: AWParams) -> LaurentPoly:
    if n < 1:
        raise ValueError("Q_n is defined for n >= 1")
    a, b = p.a, p.b
    return ab_multiplier(a, b) * aw_poly(n - 1, p.shifted()) / (a * b)


def e_coefficient(n: int, p: AWParams):
    """k_n in E_n = P_n - k_n Q_n (n >= 0); zero at n = 0 by convention."""
    if n == 0:
        return Fraction(0)
    q, ab, cd, e4 = p.q, p.a * p.b, p.c * p.d, p.e4
    den = (1 - q**n * ab) * (1 - q ** (n - 1) * e4)
    if den == 0:
        raise ParameterSingularity(f"E_{n}: vanishing denominator")
    return ab * (1 - q**n) * (1 - q ** (n - 1) * cd) / den


def E_laurent(n: int, p: AWParams) -> LaurentPoly:
    m = abs(n)
    P = LaurentPoly._raw(dict(aw_poly(m, p).coeffs))
    if n == 0:
        return P
    if n < 0:
        return P - Q_poly(m, p)
    return P - Q_poly(m, p) * e_coefficient(m, p)


def E_vec(n: int, p: AWParams) -> VecSymPair:
    m = abs(n)
    P = aw_poly(m, p)
    if n == 0:
        return VecSymPair(P, SymLaurentPoly.zero())
    Ps = aw_poly(m - 1, p.shifted())
    ab = p.a * p.b
    if n < 0:
        return VecSymPair(P, Ps * (-1 / ab))
    return VecSymPair(P, Ps * (-e_coefficient(m, p) / ab))


def y_eigenvalue(n: int, p: AWParams):
    """q^n for n < 0 and q^(n-1) abcd for n >= 0."""
    if n < 0:
        return p.q**n
    return p.q ** (n - 1) * p.e4


def four_equation_residuals(n: int, p: AWParams, third_sign: str = "derived") -> list[LaurentPoly]:
    """Residuals of the four component identities equivalent to Y E_{+-n} = lambda E_{+-n}.

    The third identity reads Y21 P_n = +(q^-n - 1)(1 - cd q^(n-1)) / (1 - ab) P'_{n-1},
    which is what the second row of the matrix equation for E_-n forces;
    ``third_sign="printed"`` uses the opposite sign and never vanishes
    for n >= 1.
    """
    if third_sign not in ("derived", "printed"):
        raise ValueError(f"unknown third_sign {third_sign!r}")
    m = abs(n)
    q, ab, cd, e4 = p.q, p.a * p.b, p.c * p.d, p.e4
    P = aw_poly(m, p)
    r1 = aw_L_apply(P, p) - P * aw_L_eigenvalue(m, p)
    if m == 0:
        return [r1, LaurentPoly.zero(), LaurentPoly.zero(), LaurentPoly.zero()]
    ps = p.shifted()
    Ps = aw_poly(m - 1, ps)
    r2 = aw_L_apply(Ps, ps) - Ps * ((q ** (1 - m) - 1) * (1 - e4 * q**m))
    k3 = (q ** (-m) - 1) * (1 - cd * q ** (m - 1)) / (1 - ab)
    r3 = y21(P, p) - Ps * (k3 if third_sign == "derived" else -k3)
    r4 = y12(Ps, p) + P * (ab * (q ** (-m) - ab) * (1 - e4 * q ** (m - 1)) / (1 - ab))
    return [r1, r2, r3, r4]


def eigen_residual(n: int, p: AWParams, route: str = "scalar"):
    """Y E_n - lambda_n E_n via ``scalar``, ``matrix`` or ``four_equations``."""
    lam = y_eigenvalue(n, p)
    if route == "scalar":
        E = E_laurent(n, p)
        return scalar_Y_apply(E, p) - E * lam
    if route == "matrix":
        v = E_vec(n, p)
        return matrix_Y_apply(v, p) - v * lam
    if route == "four_equations":
        return four_equation_residuals(n, p)
    raise ValueError(f"unknown route {route!r}")


def residual_is_zero(r) -> bool:
    if isinstance(r, list):
        return all(x.is_zero() for x in r)
    return r.is_zero()


# --- the bilinear form -------------------------------------------------------

def form_constant(p: AWParams):
    """C = -ab (1-ab)(1-qab)(1-ac)(1-ad)(1-bc)(1-bd) / ((1-abcd)(1-qabcd))."""
    q, a, b, c, d = p.q, p.a, p.b, p.c, p.d
    ab, e4 = a * b, p.e4
    return (
        -ab * (1 - ab) * (1 - q * ab) * (1 - a * c) * (1 - a * d) * (1 - b * c) * (1 - b * d)
        / ((1 - e4) * (1 - q * e4))
    )


def form_constant_from_n(n: int, p: AWParams):
    """The n-dependent expression for C forced by <E_n, E_-n> = 0."""
    q, ab, cd, e4 = p.q, p.a * p.b, p.c * p.d, p.e4
    ratio = aw_norm(n, p) / aw_norm(n - 1, p.shifted())
    return -ab * (1 - q**n * ab) * (1 - q ** (n - 1) * e4) / ((1 - q**n) * (1 - q ** (n - 1) * cd)) * ratio


@dataclass(frozen=True)
class BilinearFormAW:
    params: AWParams
    C: object = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "C", form_constant(self.params))

    def pair(self, g: VecSymPair, h: VecSymPair):
        p = self.params
        return inner_product_sym(g.f1, h.f1, p) + self.C * inner_product_sym(g.f2, h.f2, p.shifted())

    def __call__(self, g: LaurentPoly, h: LaurentPoly):
        p = self.params
        return self.pair(sym_decompose_ab(g, p.a, p.b), sym_decompose_ab(h, p.a, p.b))


def bilinear_form(g: LaurentPoly, h: LaurentPoly, p: AWParams):
    return BilinearFormAW(p)(g, h)


def gram_report(M: int, p: AWParams) -> dict[tuple[int, int], object]:
    """<E_m, E_n> for |m|, |n| <= M, keyed by (m, n)."""
    form = BilinearFormAW(p)
    idx = range(-M, M + 1)
    E = {n: sym_decompose_ab(E_laurent(n, p), p.a, p.b) for n in idx}
    return {(m, n): form.pair(E[m], E[n]) for m in idx for n in idx}


def gram_is_diagonal(G: dict) -> bool:
    return all(v == 0 for (m, n), v in G.items() if m != n)


# --- positivity certificate ---------------------------------------------------

@dataclass
class Inequality:
    name: str
    value: object
    holds: bool


@dataclass
class PositivityCertificate:
    applicable: bool
    N: int
    inequalities: list[Inequality]

    @property
    def passed(self) -> bool:
        return self.applicable and all(i.holds for i in self.inequalities)

    @property
    def scope(self) -> str:
        return f"recurrence positivity verified for n <= {self.N}"


def positivity_check(p: AWParams, N: int = 50) -> PositivityCertificate:
    ab = p.a * p.b
    if not ab < 0:
        return PositivityCertificate(False, N, [Inequality("ab < 0", ab, False)])
    fav = favard_check(p, N)
    try:
        fav_s = favard_check(p.shifted(), N)
        shifted_ok = fav_s.passed
    except (ValueError, ArithmeticError):
        shifted_ok = False
    cd, e4, C = p.c * p.d, p.e4, form_constant(p)
    ineqs = [
        Inequality("ab < 0", ab, True),
        Inequality(f"C_n > 0 for (a,b,c,d), n <= {N}", fav.first_nonpositive, fav.passed),
        Inequality(f"C_n > 0 for (qa,qb,c,d), n <= {N}", None, shifted_ok),
        Inequality("cd < 1", cd, cd < 1),
        Inequality("abcd < 1", e4, e4 < 1),
        Inequality("C > 0", C, C > 0),
    ]
    return PositivityCertificate(True, N, ineqs)


def sym_recompose(v: VecSymPair, p: AWParams) -> LaurentPoly:
    return sym_recompose_ab(v, p.a, p.b)
