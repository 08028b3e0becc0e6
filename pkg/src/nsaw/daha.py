"""The (C1v, C1) double affine Hecke algebra acting on Laurent polynomials.

Every operator with rational-function coefficients is applied by building
the numerator over an explicit common denominator and dividing exactly,
so a wrong coefficient surfaces as :class:`DivisionNotExact` or as a
failed identity rather than as a quiet rounding difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .askey_wilson import AWParams, aw_L_apply
from .core_poly import (
    LaurentPoly,
    SymLaurentPoly,
    VecSymPair,
    Z,
    ZINV,
    exact_divide,
    sym_decompose_ab,
    sym_recompose_ab,
)
from .errors import DivisionNotExact, NotAnEigenvector
from .mutations import active


class HeckeGen(Enum):
    Z = "Z"
    Zinv = "Zinv"
    T1 = "T1"
    T0 = "T0"


def _t1(f: LaurentPoly, p: AWParams) -> LaurentPoly:
    a, b = p.a, p.b
    sign = -1 if active("T1-reflection-sign") else 1
    num = (Z * (a + b) - (1 + a * b)) * f + (1 - Z * a) * (1 - Z * b) * f.reflect() * sign
    return exact_divide(num, 1 - Z * Z)


def _t0(f: LaurentPoly, p: AWParams) -> LaurentPoly:
    q, c, d = p.q, p.c, p.d
    num = Z * (Z * (c * d + q) - (c + d) * q) * f / q - (c - Z) * (d - Z) * f.substitute("q/z", q)
    return exact_divide(num, q - Z * Z)


def hecke_apply(g: HeckeGen | str, f: LaurentPoly, p: AWParams) -> LaurentPoly:
    g = HeckeGen(g)
    if g is HeckeGen.Z:
        return Z * f
    if g is HeckeGen.Zinv:
        return ZINV * f
    if g is HeckeGen.T1:
        return _t1(f, p)
    return _t0(f, p)


# --- relations -------------------------------------------------------------

def _rel_t1(f, p):
    g = _t1(f, p) + f
    return _t1(g, p) + g * (p.a * p.b)


def _rel_t0(f, p):
    g = _t0(f, p) + f
    return _t0(g, p) + g * (p.c * p.d / p.q)


def _rel_t1z(f, p):
    def u(h):
        return _t1(Z * h, p)

    g = u(f) + f * p.b
    return u(g) + g * p.a


def _rel_t0zinv(f, p):
    def v(h):
        return _t0(ZINV * h, p) * p.q

    g = v(f) + f * p.d
    return v(g) + g * p.c


RELATIONS = {
    "(T1+ab)(T1+1)": _rel_t1,
    "(T0+cd/q)(T0+1)": _rel_t0,
    "(T1Z+a)(T1Z+b)": _rel_t1z,
    "(qT0Z^-1+c)(qT0Z^-1+d)": _rel_t0zinv,
}


@dataclass
class RelationResult:
    name: str
    passed: bool
    checked: int
    first_failure: int | None = None
    witness: LaurentPoly | None = None


def daha_relations_check(p: AWParams, maxdeg: int) -> list[RelationResult]:
    """Apply each quadratic relation to z^k, |k| <= maxdeg."""
    out = []
    for name, rel in RELATIONS.items():
        res = RelationResult(name, True, 0)
        for k in _monomial_order(maxdeg):
            res.checked += 1
            try:
                r = rel(LaurentPoly.monomial(k), p)
            except DivisionNotExact as exc:  # a broken operator need not stay polynomial
                res.passed, res.first_failure, res.witness = False, k, f"not a Laurent polynomial: {exc}"
                break
            if not r.is_zero():
                res.passed, res.first_failure, res.witness = False, k, r
                break
        out.append(res)
    return out


def _monomial_order(maxdeg: int):
    # 0, 1, -1, 2, -2, ... so the first failure is the smallest |k|
    yield 0
    for k in range(1, maxdeg + 1):
        yield k
        yield -k


# --- Y = T1 T0 -------------------------------------------------------------

def y_by_composition(f: LaurentPoly, p: AWParams) -> LaurentPoly:
    return _t1(_t0(f, p), p)


def y_by_formula(f: LaurentPoly, p: AWParams) -> LaurentPoly:
    """The four-term q-difference-reflection form of Y."""
    q, a, b, c, d = p.q, p.a, p.b, p.c, p.d
    z2 = Z * Z
    ab_part = (1 - Z * a) * (1 - Z * b)
    fwd = f.substitute("qz", q) - f
    refl = f.reflect() - f
    qrefl = f.substitute("q/z", q) - f
    n1 = ab_part * (1 - Z * c) * (1 - Z * d) * fwd * (q - z2) * q
    n2 = ab_part * (Z * ((c + d) * q) - (c * d + q)) * refl * (q - z2)
    n3 = (c - Z) * (d - Z) * (1 + a * b - Z * (a + b)) * qrefl * (1 - z2 * q) * q
    den = (1 - z2) * (1 - z2 * q) * (q - z2) * q
    return f * (p.e4 / q) + exact_divide(n1 + n2 + n3, den)


def scalar_Y_apply(f: LaurentPoly, p: AWParams, route: str = "composition") -> LaurentPoly:
    if route == "composition":
        return y_by_composition(f, p)
    if route == "formula":
        return y_by_formula(f, p)
    raise ValueError(f"unknown route {route!r}")


def y_route_check(p: AWParams, maxdeg: int) -> list[tuple[int, bool]]:
    """Compare the composition T1 T0 with the explicit formula on z^k."""
    out = []
    for k in _monomial_order(maxdeg):
        f = LaurentPoly.monomial(k)
        out.append((k, y_by_composition(f, p) == y_by_formula(f, p)))
    return out


# --- T1 eigenspaces --------------------------------------------------------

@dataclass
class T1Classification:
    eigenvalue: object
    symmetric: bool
    witness: SymLaurentPoly | None = None


def t1_classify(f: LaurentPoly, p: AWParams) -> T1Classification:
    """Place f in the -ab or the -1 eigenspace of T1.

    For the -1 eigenspace the witness g with f = z^-1 (1 - az)(1 - bz) g
    is returned.
    """
    tf = _t1(f, p)
    ab = p.a * p.b
    if tf == f * (-ab):
        if not f.is_symmetric():
            raise NotAnEigenvector("T1 f = -ab f but f is not symmetric")
        return T1Classification(-ab, True)
    if tf == -f:
        v = sym_decompose_ab(f, p.a, p.b)
        if not v.f1.is_zero():
            raise NotAnEigenvector("T1 f = -f but f has a symmetric component")
        return T1Classification(-1, False, v.f2)
    raise NotAnEigenvector(f"{f} is in neither eigenspace of T1")


# --- 2x2 matrix form of Y ----------------------------------------------------

def y11(g: SymLaurentPoly, p: AWParams) -> LaurentPoly:
    ab = p.a * p.b
    return g * (p.e4 / p.q) - aw_L_apply(g, p) * (ab / (1 - ab))


def y22(h: SymLaurentPoly, p: AWParams) -> LaurentPoly:
    q, ab, e4 = p.q, p.a * p.b, p.e4
    const = 1 - e4 - ab * q + e4 * q
    return (h * const + aw_L_apply(h, p.shifted())) / (q * (1 - ab))


def y21(g: SymLaurentPoly, p: AWParams, variant: str = "corrected") -> LaurentPoly:
    """Lower-left entry.

    The ``"printed"`` variant puts (1 - z^2)(1 - q z^2) under the g[z/q]
    term as well; that does not map symmetric polynomials to symmetric
    ones and fails the conjugation check, so the default uses
    (1 - z^2)(q - z^2) there.
    """
    q, c, d, ab = p.q, p.c, p.d, p.a * p.b
    z2 = Z * Z
    bwd = g.substitute("z/q", q) - g
    fwd = g.substitute("qz", q) - g
    t_bwd = Z * (c - Z) * (d - Z) * bwd
    t_fwd = Z * (1 - Z * c) * (1 - Z * d) * fwd
    if variant == "printed":
        return exact_divide(t_bwd + t_fwd, (1 - z2) * (1 - z2 * q) * (1 - ab))
    if variant != "corrected":
        raise ValueError(f"unknown variant {variant!r}")
    num = t_bwd * (1 - z2 * q) + t_fwd * (q - z2)
    return exact_divide(num, (1 - z2) * (1 - z2 * q) * (q - z2) * (1 - ab))


def y12(h: SymLaurentPoly, p: AWParams) -> LaurentPoly:
    q, a, b, c, d = p.q, p.a, p.b, p.c, p.d
    ab = a * b
    z2 = Z * Z
    lead = 1 if active("Y12-dropped-factor") else ab
    t_mid = (
        (a - Z) * (b - Z) * (1 - Z * a) * (1 - Z * b)
        * ((1 + z2) * (c * d + q) - Z * ((1 + q) * (c + d)))
        * h * lead
    )
    t_bwd = (a - Z) * (b - Z) * (c - Z) * (d - Z) * (a * q - Z) * (b * q - Z) * h.substitute("z/q", q) * ab
    t_fwd = (
        (1 - Z * a) * (1 - Z * b) * (1 - Z * c) * (1 - Z * d) * (1 - Z * (a * q)) * (1 - Z * (b * q))
        * h.substitute("qz", q) * ab
    )
    num = t_mid * (1 - z2) * q - t_bwd * (1 - z2 * q) - t_fwd * (q - z2)
    den = Z * (1 - z2) * (q - z2) * (1 - z2 * q) * (q * (1 - ab))
    return exact_divide(num, den)


@dataclass(frozen=True)
class YMatrix:
    """Y in the basis f <-> (f1, f2), f = f1 + z^-1 (1 - az)(1 - bz) f2."""

    params: AWParams
    y21_variant: str = "corrected"

    def __call__(self, v: VecSymPair) -> VecSymPair:
        p = self.params
        top = y11(v.f1, p) + y12(v.f2, p)
        bottom = y21(v.f1, p, self.y21_variant) + y22(v.f2, p)
        return VecSymPair(top, bottom)


def matrix_Y_apply(v: VecSymPair, p: AWParams, y21_variant: str = "corrected") -> VecSymPair:
    return YMatrix(p, y21_variant)(v)


@dataclass
class DegreeResult:
    k: int
    passed: bool
    error: str | None = None


def decomposition_consistency_check(
    p: AWParams, maxdeg: int, y21_variant: str = "corrected"
) -> list[DegreeResult]:
    """decompose -> matrix Y -> recompose must equal scalar Y on each z^k."""
    out = []
    for k in _monomial_order(maxdeg):
        f = LaurentPoly.monomial(k)
        try:
            v = matrix_Y_apply(sym_decompose_ab(f, p.a, p.b), p, y21_variant)
            r = sym_recompose_ab(v, p.a, p.b) - y_by_composition(f, p)
            out.append(DegreeResult(k, r.is_zero(), None if r.is_zero() else f"residual {r}"))
        except Exception as exc:  # an inexact division is a failed degree
            out.append(DegreeResult(k, False, f"{type(exc).__name__}: {exc}"))
    return out
