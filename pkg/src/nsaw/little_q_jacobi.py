"""Monic little q-Jacobi polynomials and their nonsymmetric vector-valued
counterparts, obtained from the Askey-Wilson case by the rescaling
a -> -q^(1/2) a, b -> q b lam, c -> -q^(1/2), d -> 1/lam, z -> x/lam.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .askey_wilson import AWParams, aw_poly, expand_monic
from .convergence import LimitReport
from .core_poly import OrdinaryPoly, X, exact_divide, qpoch, qpoch_multi, scalar
from .errors import (
    InvalidParameters,
    IrrationalScaleFactor,
    NumericalInstability,
    ParameterSingularity,
)
from .nonsym_aw import E_laurent, E_vec as aw_E_vec


@dataclass(frozen=True)
class LQJParams:
    """(q, a, b). Positivity of the measure needs 0 < a < 1/q and b < 1/q;
    that is recorded by :meth:`positive_regime`, not enforced."""

    q: object
    a: object
    b: object

    def __post_init__(self):
        for name in "qab":
            v = getattr(self, name)
            if isinstance(v, (int, str)) and not isinstance(v, bool):
                object.__setattr__(self, name, scalar(v))
        if not 0 < self.q < 1:
            raise InvalidParameters(f"need 0 < q < 1, got {self.q}")
        if self.a == 0 or self.b == 0:
            raise InvalidParameters("a and b must be nonzero")

    def shifted(self) -> "LQJParams":
        return LQJParams(self.q, self.q * self.a, self.q * self.b)

    def positive_regime(self) -> bool:
        return 0 < self.a < 1 / self.q and 0 < self.b < 1 / self.q

    def as_dict(self) -> dict[str, str]:
        return {k: str(getattr(self, k)) for k in "qab"}


def exact_sqrt(q: Fraction) -> Fraction:
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise IrrationalScaleFactor(f"q = {q} is not the square of a rational")
    return Fraction(rn, rd)


def sqrt_q(q):
    if isinstance(q, Fraction):
        return exact_sqrt(q)
    return mpmath.sqrt(q)


# --- polynomials -----------------------------------------------------------

def lqj_poly(n: int, p: LQJParams, reading: str = "terminating") -> OrdinaryPoly:
    """Monic P_n(x; a, b; q) from the terminating 2phi1.

    The upper parameter of the 2phi1 has to be q^-n for the sum to
    terminate with a monic degree-n polynomial; ``reading="printed"``
    plugs in q^n instead and exists only to show that this breaks the
    eigenvalue equation.
    """
    q, a, b = p.q, p.a, p.b
    top = q ** (-n) if reading == "terminating" else q**n
    den = qpoch(a * b * q ** (n + 1), q, n)
    if den == 0:
        raise ParameterSingularity(f"P_{n}: (abq^(n+1); q)_n = 0")
    pre = (-1) ** n * q ** (n * (n - 1) // 2) * qpoch(a * q, q, n) / den
    coeffs = {}
    term = pre
    for k in range(n + 1):
        if k > 0:
            j = k - 1
            d = (1 - a * q ** (j + 1)) * (1 - q ** (j + 1))
            if d == 0:
                raise ParameterSingularity(f"P_{n}: (aq; q)_{k} = 0")
            term = term * (1 - top * q**j) * (1 - a * b * q ** (n + 1 + j)) * q / d
        coeffs[k] = term
    return OrdinaryPoly(coeffs)


def lqj_L_apply(f: OrdinaryPoly, p: LQJParams) -> OrdinaryPoly:
    """A(x) f(qx) + B(x) f(x/q) - (A + B) f with A = (abqx - a)/x, B = (x - 1)/x."""
    q, a, b = p.q, p.a, p.b
    num = (X * (a * b * q) - a) * (f.scale(q) - f) + (X - 1) * (f.scale(1 / q) - f)
    return OrdinaryPoly.of(exact_divide(num, X))


def lqj_L_eigenvalue(n: int, p: LQJParams):
    return (p.q ** (-n) - 1) * (1 - p.a * p.b * p.q ** (n + 1))


def lqj_norm(n: int, p: LQJParams):
    q, a, b = p.q, p.a, p.b
    num = q ** (n * n) * a**n * qpoch_multi((q, a * q, b * q), q, n)
    den = qpoch(a * b * q * q, q, 2 * n) * qpoch(a * b * q ** (n + 1), q, n)
    if den == 0:
        raise ParameterSingularity(f"h_{n}: vanishing denominator")
    return num / den


class _LQJBasis:
    def __init__(self, params: LQJParams):
        self.params = params
        self.polys: list[OrdinaryPoly] = []
        self.norms: list = []
        self._lock = threading.Lock()

    def ensure(self, N: int) -> "_LQJBasis":
        with self._lock:
            while len(self.polys) <= N:
                n = len(self.polys)
                self.polys.append(lqj_poly(n, self.params))
                self.norms.append(lqj_norm(n, self.params))
        return self


@lru_cache(maxsize=128)
def _basis(p: LQJParams) -> _LQJBasis:
    return _LQJBasis(p)


def lqj_inner(f: OrdinaryPoly, g: OrdinaryPoly, p: LQJParams):
    deg = max(f.degree or 0, g.degree or 0)
    basis = _basis(p).ensure(deg)
    cf = expand_monic(f, basis.polys, lambda h: h.degree)
    cg = expand_monic(g, basis.polys, lambda h: h.degree)
    return sum((x * y * basis.norms[n] for n, (x, y) in enumerate(zip(cf, cg))), Fraction(0))


# --- vector-valued nonsymmetric polynomials ---------------------------------

@dataclass(frozen=True)
class PolyPair:
    g1: OrdinaryPoly
    g2: OrdinaryPoly

    def __sub__(self, other: "PolyPair") -> "PolyPair":
        return PolyPair(self.g1 - other.g1, self.g2 - other.g2)

    def __mul__(self, c) -> "PolyPair":
        return PolyPair(self.g1 * c, self.g2 * c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.g1.is_zero() and self.g2.is_zero()


def second_component_factor(n: int, p: LQJParams):
    """Scalar in front of P_{|n|-1}(x; qa, qb) in the second component."""
    q, a, b = p.q, p.a, p.b
    if n == 0:
        return q * 0
    r = sqrt_q(q)
    if n < 0:
        return 1 / (q * r * a * b)
    den = 1 - q ** (n + 1) * a * b
    if den == 0:
        raise ParameterSingularity(f"E_{n}: 1 - q^(n+1) ab = 0")
    return -(q**n / r) * (1 - q**n) / den


def lqj_E_vec(n: int, p: LQJParams) -> PolyPair:
    m = abs(n)
    P = lqj_poly(m, p)
    if n == 0:
        return PolyPair(P, OrdinaryPoly.zero())
    return PolyPair(P, lqj_poly(m - 1, p.shifted()) * second_component_factor(n, p))


def lqj_Y_eigenvalue(n: int, p: LQJParams):
    return p.q**n if n < 0 else p.q ** (n + 1) * p.a * p.b


def lqj_Y_apply(v: PolyPair, p: LQJParams) -> PolyPair:
    q, a, b = p.q, p.a, p.b
    r = sqrt_q(q)
    g1, g2 = v.g1, v.g2
    y11 = g1 * (q * a * b)
    y12 = g2 * (1 - X * (b * q)) * (a * a * b * q * r) - (1 - X) * g2.scale(1 / q) * (a * b * r)
    y21 = OrdinaryPoly.of(exact_divide(g1 - g1.scale(q), X)) / r
    y22 = g2 * (1 / q - q * (1 - q) * a * b) + lqj_L_apply(g2, p.shifted()) / q
    return PolyPair(y11 + y12, y21 + y22)


def lqj_eigen_residual(n: int, p: LQJParams) -> PolyPair:
    v = lqj_E_vec(n, p)
    return lqj_Y_apply(v, p) - v * lqj_Y_eigenvalue(n, p)


def lqj_form_constant(p: LQJParams):
    q, a, b = p.q, p.a, p.b
    return q * q * a * a * b * (1 - q * a) * (1 - q * b) / ((1 - q * q * a * b) * (1 - q**3 * a * b))


def lqj_bilinear(g: PolyPair, h: PolyPair, p: LQJParams):
    return lqj_inner(g.g1, h.g1, p) + lqj_form_constant(p) * lqj_inner(g.g2, h.g2, p.shifted())


def lqj_gram_report(M: int, p: LQJParams) -> dict[tuple[int, int], object]:
    idx = range(-M, M + 1)
    E = {n: lqj_E_vec(n, p) for n in idx}
    return {(m, n): lqj_bilinear(E[m], E[n], p) for m in idx for n in idx}


# --- the limit from Askey-Wilson ---------------------------------------------

def rescaled_aw_params(p: LQJParams, lam, dps: int = 40) -> AWParams:
    with mpmath.workdps(dps):
        q = mpmath.mpf(p.q.numerator) / p.q.denominator if isinstance(p.q, Fraction) else mpmath.mpf(p.q)
        a = _mp(p.a)
        b = _mp(p.b)
        lam = _mp(lam)
        r = mpmath.sqrt(q)
        return AWParams(q, -r * a, q * b * lam, -r, 1 / lam, m_guard=8)


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _rel_err(approx, exact) -> mpmath.mpf:
    scale = max(abs(exact), mpmath.mpf(10) ** -30)
    return abs(approx - exact) / scale


def _normwise_err(approx: list, exact: list) -> mpmath.mpf:
    """max |approx - exact| over the grid divided by max |exact|."""
    scale = max(max(abs(e) for e in exact), mpmath.mpf(10) ** -30)
    return max(abs(u - v) for u, v in zip(approx, exact)) / scale


DEFAULT_GRID = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def lqj_limit_check(
    n: int,
    p: LQJParams,
    steps: int = 20,
    xs=DEFAULT_GRID,
    kind: str = "poly",
    dps: int = 40,
    metric: str = "normwise",
) -> LimitReport:
    """lam^|n| times the rescaled Askey-Wilson object against the little
    q-Jacobi target, for lam = 2^-k, k = 1..steps.

    ``kind="poly"`` uses P_|n|; ``kind="vector"`` compares both components
    of the vector-valued E_n.

    ``metric="normwise"`` divides the grid sup-norm of the difference by the
    grid sup-norm of the target (per component); ``"pointwise"`` takes the
    largest pointwise relative error, which blows up near a zero of the
    target. Whichever is not selected is kept in ``notes`` for the last step.
    """
    if metric not in ("normwise", "pointwise"):
        raise ValueError(f"unknown metric {metric!r}")
    if steps < 1:
        raise ValueError("steps must be positive")
    m = abs(n)
    with mpmath.workdps(dps):
        if kind == "poly":
            targets = [(lqj_poly(m, p),)]
        elif kind == "vector":
            v = lqj_E_vec(n, p)
            targets = [(v.g1, v.g2)]
        else:
            raise ValueError(f"unknown kind {kind!r}")
        exact = [[_mp(t.eval(x)) for x in xs] for t in targets[0]]
        report = LimitReport(f"aw-to-lqj n={n} kind={kind}", "lambda")
        for k in range(1, steps + 1):
            lam = mpmath.mpf(2) ** -k
            ap = rescaled_aw_params(p, lam, dps)
            if kind == "poly":
                comps = [aw_poly(m, ap)]
            else:
                w = aw_E_vec(n, ap)
                comps = [w.f1, w.f2]
            errs = {"normwise": mpmath.mpf(0), "pointwise": mpmath.mpf(0)}
            for comp, ex in zip(comps, exact):
                approx = [lam**m * comp.eval(_mp(x) / lam) for x in xs]
                errs["normwise"] = max(errs["normwise"], _normwise_err(approx, ex))
                for u, e in zip(approx, ex):
                    errs["pointwise"] = max(errs["pointwise"], _rel_err(u, e))
            report.add(k, lam, errs[metric])
            report.notes = {"metric": metric, "final_errors": {key: float(v) for key, v in errs.items()}}
        last = report.rows[-3:]
        if len(last) == 3 and last[-1].error > 10 * last[0].error and last[0].error > 0:
            raise NumericalInstability(f"error grew from {last[0].error:g} to {last[-1].error:g}")
    return report


def laurent_limit_rank(N: int, p: LQJParams, lam_exponents=(4, 8, 12, 16), dps: int = 40) -> list[dict]:
    """Numerical rank of {lam^|n| E_n[x/lam]} (Laurent form), |n| <= N.

    As lam -> 0 the negative powers of x die out and the 2N+1 limits
    crowd into the (N+1)-dimensional space of polynomials of degree <= N,
    so the trailing singular values of the coefficient matrix go to zero.
    """
    out = []
    with mpmath.workdps(dps):
        for e in lam_exponents:
            lam = mpmath.mpf(2) ** -e
            ap = rescaled_aw_params(p, lam, dps)
            rows = []
            for n in range(-N, N + 1):
                E = E_laurent(n, ap)
                scale = lam ** abs(n)
                # coefficient of x^k in lam^|n| E[x/lam] is c_k lam^(|n|-k)
                rows.append([float(scale * E.coeff(k) * lam ** (-k)) for k in range(-N, N + 1)])
            s = np.linalg.svd(np.array(rows), compute_uv=False)
            out.append({"lambda": float(lam), "singular_values": s.tolist(), "rank_gap": float(s[N + 1] / s[0])})
    return out
