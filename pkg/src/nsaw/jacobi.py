"""Jacobi polynomials as symmetric Laurent polynomials, their nonsymmetric
versions, the differential-reflection operator Y and its 2x2 matrix form,
and the q -> 1 limits from the Askey-Wilson and little q-Jacobi families.

Vector form here always means f = f1 - (z - 1/z) f2 (see
:func:`nsaw.core_poly.jacobi_split`), never the Askey-Wilson convention.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy import integrate

from .askey_wilson import AWParams, aw_poly, expand_monic
from .convergence import LimitReport
from .core_poly import (
    LaurentPoly,
    OrdinaryPoly,
    SymLaurentPoly,
    VecSymPair,
    Z,
    ZINV,
    exact_divide,
    jacobi_join,
    jacobi_split,
    poch,
    scalar,
)
from .errors import (
    InvalidParameters,
    NumericalInstability,
    ParameterSingularity,
    QuadratureNonConvergence,
)
from .little_q_jacobi import LQJParams, lqj_E_vec, lqj_poly
from .mutations import active
from .nonsym_aw import E_laurent as aw_E_laurent


@dataclass(frozen=True)
class JacobiParams:
    """(alpha, beta). Orthogonality and positivity need alpha, beta > -1;
    the algebraic formulas only need the denominator guards."""

    alpha: object
    beta: object

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if isinstance(v, (int, str)) and not isinstance(v, bool):
                object.__setattr__(self, name, scalar(v))

    @property
    def s(self):
        """alpha + beta + 1, the constant that shows up everywhere."""
        return self.alpha + self.beta + 1

    def shifted(self) -> "JacobiParams":
        return JacobiParams(self.alpha + 1, self.beta + 1)

    def positive_regime(self) -> bool:
        return self.alpha > -1 and self.beta > -1

    def as_dict(self) -> dict[str, str]:
        return {"alpha": str(self.alpha), "beta": str(self.beta)}


# (2 - z - 1/z) / 4
W_QUARTER = LaurentPoly({0: Fraction(1, 2), 1: Fraction(-1, 4), -1: Fraction(-1, 4)})


def _hyp_terms(n: int, p: JacobiParams) -> list:
    """Coefficients of the terminating 2F1(-n, n+s; alpha+1; w) in w."""
    a1 = p.alpha + 1
    out = []
    term = Fraction(1)
    for k in range(n + 1):
        if k > 0:
            j = k - 1
            d = (a1 + j) * k
            if d == 0:
                raise ParameterSingularity(f"P_{n}: (alpha+1)_{k} = 0")
            term = term * (j - n) * (n + p.s + j) / d
        out.append(term)
    return out


def _prefactor(n: int, p: JacobiParams):
    den = poch(n + p.s, n)
    if den == 0:
        raise ParameterSingularity(f"P_{n}: (n + alpha + beta + 1)_n = 0")
    return poch(p.alpha + 1, n) / den


def jac_poly(n: int, p: JacobiParams) -> SymLaurentPoly:
    """Monic (in z) Jacobi polynomial P_n[z; alpha, beta]."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    pre = _prefactor(n, p) * 4**n
    out = LaurentPoly.zero()
    for c in reversed(_hyp_terms(n, p)):
        out = out * W_QUARTER + c
    return SymLaurentPoly.of(out * pre)


def jac_shift_poly(n: int, p: JacobiParams) -> OrdinaryPoly:
    """Monic Jacobi polynomial with orthogonality interval [0, 1]."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    pre = _prefactor(n, p) * (-1) ** n
    return OrdinaryPoly({k: c * pre for k, c in enumerate(_hyp_terms(n, p))})


def interval_relation_check(n: int, p: JacobiParams) -> bool:
    """P_n[z] == (-4)^n P~_n((2 - z - 1/z)/4), exactly."""
    rhs = jac_shift_poly(n, p).compose(W_QUARTER) * (-4) ** n
    return jac_poly(n, p) == rhs


def jac_classical_factor(n: int, p: JacobiParams):
    """P_n[z] = factor * P_n^(alpha,beta)((z + 1/z)/2) with classical P_n^(alpha,beta)."""
    return Fraction(4) ** n * math.factorial(n) / poch(n + p.s, n)


# --- nonsymmetric polynomials -------------------------------------------------

def _second_factor(n: int, p: JacobiParams):
    if n <= 0:
        return Fraction(1)
    den = n + p.s
    if den == 0:
        raise ParameterSingularity(f"E_{n}: n + alpha + beta + 1 = 0")
    return -Fraction(n) / den if isinstance(den, Fraction) else -n / den


def jac_E_vec(n: int, p: JacobiParams) -> VecSymPair:
    m = abs(n)
    P = jac_poly(m, p)
    if m == 0:
        return VecSymPair(P, SymLaurentPoly.zero())
    return VecSymPair(P, jac_poly(m - 1, p.shifted()) * _second_factor(n, p))


def jac_E_laurent(n: int, p: JacobiParams) -> LaurentPoly:
    return jacobi_join(jac_E_vec(n, p))


def jac_Y_eigenvalue(n: int, p: JacobiParams):
    return -n if n < 0 else -(n + p.s)


def jac_Y_apply(f: LaurentPoly, p: JacobiParams) -> LaurentPoly:
    """-z f' + (s + (alpha - beta) z)(f - f~)/(1 - z^2) - s f, s = alpha + beta + 1."""
    sign = -1 if active("jacobi-reflection-sign") else 1
    refl = exact_divide((f - f.reflect()) * (p.s + Z * (p.alpha - p.beta)), 1 - Z * Z)
    return -f.euler() + refl * sign - f * p.s


def jac_Y_matrix_apply(v: VecSymPair, p: JacobiParams) -> VecSymPair:
    f1, f2 = v.f1, v.f2
    s, d = p.s, p.alpha - p.beta
    upper_right = (Z * Z - 1) * f2.derivative() + (Z + ZINV) * f2 * (s + 1) + f2 * (2 * d)
    # (1 - z^-2)^-1 d/dz = z^2/(z^2 - 1) d/dz
    lower_left = exact_divide(Z * Z * f1.derivative(), Z * Z - 1)
    return VecSymPair(f1 * (-s) + upper_right, lower_left)


def matrix_consistency_check(p: JacobiParams, maxdeg: int) -> list[tuple[int, bool, LaurentPoly]]:
    """Split -> matrix Y -> join equals scalar Y on z^k, |k| <= maxdeg.

    Each entry is (k, ok, residual).
    """
    out = []
    for k in [0] + [j for i in range(1, maxdeg + 1) for j in (i, -i)]:
        f = LaurentPoly.monomial(k)
        r = jacobi_join(jac_Y_matrix_apply(jacobi_split(f), p)) - jac_Y_apply(f, p)
        out.append((k, r.is_zero(), r))
    return out


def jac_eigen_residual(n: int, p: JacobiParams, route: str = "scalar"):
    lam = jac_Y_eigenvalue(n, p)
    if route == "scalar":
        E = jac_E_laurent(n, p)
        return jac_Y_apply(E, p) - E * lam
    if route == "matrix":
        v = jac_E_vec(n, p)
        return jac_Y_matrix_apply(v, p) - v * lam
    raise ValueError(f"unknown route {route!r}")


def _multiple_of(f: LaurentPoly, g: LaurentPoly):
    """c with f == c g, or None."""
    if g.is_zero():
        return Fraction(0) if f.is_zero() else None
    c = f.coeff(g.degree) / g.coeff(g.degree)
    return c if f == g * c else None


def shift_operator_table(N: int, p: JacobiParams) -> list[dict]:
    """The off-diagonal entries of the matrix Y on Jacobi polynomials.

    Lower-left sends P_n[alpha, beta] to a multiple of P_{n-1}[alpha+1, beta+1]
    and upper-right sends P_{n-1}[alpha+1, beta+1] to a multiple of
    P_n[alpha, beta]; the multiples are computed, not assumed.
    """
    rows = []
    zero = SymLaurentPoly.zero()
    for n in range(1, N + 1):
        P, Ps = jac_poly(n, p), jac_poly(n - 1, p.shifted())
        down = jac_Y_matrix_apply(VecSymPair(P, zero), p).f2
        up = jac_Y_matrix_apply(VecSymPair(zero, Ps), p).f1
        rows.append({"n": n, "lowering": _multiple_of(down, Ps), "raising": _multiple_of(up, P)})
    return rows


# --- bilinear form -----------------------------------------------------------

def jac_norm(n: int, p: JacobiParams):
    a, b = p.alpha, p.beta
    num = Fraction(16) ** n * poch(a + 1, n) * poch(b + 1, n) * math.factorial(n)
    den = poch(a + b + 2, 2 * n) * poch(n + p.s, n)
    if den == 0:
        raise ParameterSingularity(f"h_{n}: vanishing denominator")
    return num / den


class _JacBasis:
    def __init__(self, params: JacobiParams):
        self.params = params
        self.polys: list[SymLaurentPoly] = []
        self.norms: list = []
        self._lock = threading.Lock()

    def ensure(self, N: int) -> "_JacBasis":
        with self._lock:
            while len(self.polys) <= N:
                n = len(self.polys)
                self.polys.append(jac_poly(n, self.params))
                self.norms.append(jac_norm(n, self.params))
        return self


@lru_cache(maxsize=128)
def _basis(p: JacobiParams) -> _JacBasis:
    return _JacBasis(p)


def jac_inner(f: SymLaurentPoly, g: SymLaurentPoly, p: JacobiParams):
    deg = max(f.degree or 0, g.degree or 0)
    basis = _basis(p).ensure(deg)
    cf = expand_monic(f, basis.polys, lambda h: h.degree)
    cg = expand_monic(g, basis.polys, lambda h: h.degree)
    return sum((x * y * basis.norms[n] for n, (x, y) in enumerate(zip(cf, cg))), Fraction(0))


def jac_form_constant(p: JacobiParams):
    a, b = p.alpha, p.beta
    return 16 * (a + 1) * (b + 1) / ((a + b + 2) * (a + b + 3))


def jac_bilinear_pair(g: VecSymPair, h: VecSymPair, p: JacobiParams):
    return jac_inner(g.f1, h.f1, p) + jac_form_constant(p) * jac_inner(g.f2, h.f2, p.shifted())


def jac_bilinear(g: LaurentPoly, h: LaurentPoly, p: JacobiParams):
    return jac_bilinear_pair(jacobi_split(g), jacobi_split(h), p)


def jac_gram_report(M: int, p: JacobiParams) -> dict[tuple[int, int], object]:
    idx = range(-M, M + 1)
    E = {n: jac_E_vec(n, p) for n in idx}
    return {(m, n): jac_bilinear_pair(E[m], E[n], p) for m in idx for n in idx}


# --- integral forms (float) -----------------------------------------------------

def _lbeta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def circle_constant(p: JacobiParams, which: str = "fitted") -> float:
    """Normalising constant in front of the integral over the unit circle.

    ``"printed"`` is 2^-(2a+2b+4) Gamma(a+b+2)/(Gamma(a+1)Gamma(b+1)); with it
    <1, 1> comes out as 1/2. ``"fitted"`` is twice that, which makes the
    circle form agree with the exact bilinear form.
    """
    a, b = float(p.alpha), float(p.beta)
    base = math.exp(-_lbeta(a + 1, b + 1))
    if which == "printed":
        return 2.0 ** -(2 * a + 2 * b + 4) * base
    if which == "fitted":
        return 2.0 ** -(2 * a + 2 * b + 3) * base
    raise ValueError(f"unknown constant {which!r}")


def circle_weight(theta, p: JacobiParams):
    a, b = float(p.alpha), float(p.beta)
    e = np.exp(1j * theta)
    return np.abs(1 - e) ** (2 * a + 1) * np.abs(1 + e) ** (2 * b + 1)


def circle_integral(g: LaurentPoly, h: LaurentPoly, p: JacobiParams, quad_points: int) -> complex:
    """Trapezoid rule for the integral of g(e^it) conj(h(e^it)) w(t) over [-pi, pi]."""
    if quad_points < 2:
        raise ValueError("quad_points must be at least 2")
    theta = -np.pi + 2 * np.pi * np.arange(quad_points) / quad_points
    e = np.exp(1j * theta)
    vals = np.asarray(g.evaluate(e)) * np.conj(np.asarray(h.evaluate(e))) * circle_weight(theta, p)
    return complex(np.sum(vals) * (2 * np.pi / quad_points))


def unfold_point(x: float, sign: int = 1) -> complex:
    """-(x + i sign sqrt(1 - x^2))^2, the unit-circle point paired with x in [-1, 1]."""
    return -((x + 1j * sign * math.sqrt(1 - x * x)) ** 2)


def interval_integral(g: LaurentPoly, h: LaurentPoly, p: JacobiParams, sign: int = 1) -> complex:
    """Normalised integral over [-1, 1] with weight |x|^(2a+1) (1 - x^2)^b."""
    a, b = float(p.alpha), float(p.beta)

    def G(x):
        z = unfold_point(x, sign)
        return complex(g.evaluate(z)) * complex(h.evaluate(z)).conjugate()

    def part(fn):
        # fold [-1, 0] onto [0, 1]; weight u^(2a+1) (1 - u)^b handled by quad
        val, _ = integrate.quad(
            lambda u: fn(G(u) + G(-u)) * (1 + u) ** b,
            0, 1, weight="alg", wvar=(2 * a + 1, b), limit=200, epsabs=1e-14, epsrel=1e-13,
        )
        return val

    norm = math.exp(-_lbeta(a + 1, b + 1))
    return norm * complex(part(lambda c: c.real), part(lambda c: c.imag))


@dataclass
class CircleResult:
    m: int
    n: int
    quad_points: int
    value: complex
    exact: object
    residual: float
    constant: str


def circle_orthogonality(
    m: int, n: int, p: JacobiParams, quad_points: int = 2048, constant: str = "fitted"
) -> CircleResult:
    """Compare the circle integral of E_m conj(E_n) with the exact bilinear form.

    The residual is |integral - exact| relative to sqrt(<E_m,E_m><E_n,E_n>).
    Doubling the number of nodes has to shrink the residual unless it is
    already at rounding level, otherwise QuadratureNonConvergence.
    """
    if not p.positive_regime():
        raise InvalidParameters("the integral forms need alpha, beta > -1")
    Em, En = jac_E_laurent(m, p), jac_E_laurent(n, p)
    exact = jac_bilinear(Em, En, p)
    scale = math.sqrt(float(jac_bilinear(Em, Em, p)) * float(jac_bilinear(En, En, p)))
    C = circle_constant(p, constant)

    def resid(N):
        val = C * circle_integral(Em, En, p, N)
        return val, abs(val - float(exact)) / scale

    val, r = resid(quad_points)
    _, r_half = resid(max(quad_points // 2, 2))
    if r > 1e-12 and r >= r_half:
        raise QuadratureNonConvergence(
            f"residual {r:.3g} at {quad_points} nodes did not improve on {r_half:.3g}"
        )
    return CircleResult(m, n, quad_points, val, exact, r, constant)


def fitted_circle_constant(p: JacobiParams, quad_points: int = 4096) -> float:
    """The constant making the circle form match the [-1, 1] form on <1, 1>."""
    one = LaurentPoly.one()
    return interval_integral(one, one, p).real / circle_integral(one, one, p, quad_points).real


def unfold_consistency(v: VecSymPair, xs, sign: int = 1) -> float:
    """max |f(-(x +- i sqrt(1-x^2))^2) - (f1(1-2x^2) +- 4ix sqrt(1-x^2) f2(1-2x^2))|."""
    from .core_poly import to_x

    f = jacobi_join(v)
    g1, g2 = to_x(v.f1), to_x(v.f2)
    worst = 0.0
    for x in xs:
        x = float(x)
        y = 1 - 2 * x * x
        lhs = complex(f.evaluate(unfold_point(x, sign)))
        rhs = complex(g1.evaluate(y)) + sign * 4j * x * math.sqrt(1 - x * x) * complex(g2.evaluate(y))
        worst = max(worst, abs(lhs - rhs))
    return worst


# --- q -> 1 limits -------------------------------------------------------------

DEFAULT_Z = (2, "unit")
DEFAULT_X = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpmathify(x)


def _z_points(zs):
    out = []
    for z in zs:
        if z == "unit":
            out.append(mpmath.expj(mpmath.mpf(7) / 10))
        else:
            out.append(_mp(z))
    return out


def continuous_q_jacobi_params(p: JacobiParams, q, m_guard: int = 8) -> AWParams:
    a, b = _mp(p.alpha), _mp(p.beta)
    r = mpmath.sqrt(q)
    return AWParams(q, q ** (a + 0.5), -(q ** (b + 0.5)), r, -r, m_guard=m_guard)


def _lqj_limit_target(n: int, p: JacobiParams) -> tuple[OrdinaryPoly, OrdinaryPoly]:
    m = abs(n)
    P = jac_shift_poly(m, p)
    if m == 0:
        return P, OrdinaryPoly.zero()
    return P, jac_shift_poly(m - 1, p.shifted()) * _second_factor(n, p)


def jac_limit_checks(
    kind: str,
    n: int,
    p: JacobiParams,
    steps: int = 16,
    points=None,
    target: str = "poly",
    dps: int = 50,
) -> LimitReport:
    """q = 1 - 2^-k, k = 1..steps, against the exact Jacobi objects.

    ``from_aw`` evaluates the continuous q-Jacobi case of the Askey-Wilson
    P_|n| (``target="poly"``) or E_n (``target="E"``) at the z ``points``
    (a number or ``"unit"``, a fixed point on the unit circle).
    ``from_lqj`` evaluates little q-Jacobi P_|n|(x; q^alpha, q^beta) or the
    vector E_n at x ``points`` against the [0, 1] Jacobi polynomials.
    Errors are sup-norm over the points relative to the sup-norm of the target.
    """
    if kind not in ("from_aw", "from_lqj"):
        raise ValueError(f"unknown kind {kind!r}")
    if target not in ("poly", "E"):
        raise ValueError(f"unknown target {target!r}")
    if steps < 1:
        raise ValueError("steps must be positive")
    m = abs(n)
    report = LimitReport(f"{kind} n={n} target={target}", "1-q")
    with mpmath.workdps(dps):
        if kind == "from_aw":
            zs = _z_points(points or DEFAULT_Z)
            exact_obj = [jac_poly(m, p) if target == "poly" else jac_E_laurent(n, p)]
        else:
            zs = [_mp(x) for x in (points or DEFAULT_X)]
            exact_obj = list(_lqj_limit_target(n, p)) if target == "E" else [jac_shift_poly(m, p)]
        exact = [[obj.eval(z) for z in zs] for obj in exact_obj]
        for k in range(1, steps + 1):
            eps = mpmath.mpf(2) ** -k
            q = 1 - eps
            if kind == "from_aw":
                ap = continuous_q_jacobi_params(p, q)
                comps = [aw_poly(m, ap) if target == "poly" else aw_E_laurent(n, ap)]
            else:
                lp = LQJParams(q, q ** _mp(p.alpha), q ** _mp(p.beta))
                if target == "poly":
                    comps = [lqj_poly(m, lp)]
                else:
                    v = lqj_E_vec(n, lp)
                    comps = [v.g1, v.g2]
            err = mpmath.mpf(0)
            for comp, ex in zip(comps, exact):
                scale = max(max(abs(e) for e in ex), mpmath.mpf(10) ** -30)
                diff = max(abs(comp.eval(z) - e) for z, e in zip(zs, ex))
                err = max(err, diff / scale)
            report.add(k, eps, err)
    tail = report.rows[-3:]
    if len(tail) == 3 and tail[0].error > 0 and tail[-1].error > 10 * tail[0].error:
        raise NumericalInstability(f"error grew from {tail[0].error:g} to {tail[-1].error:g}")
    return report
