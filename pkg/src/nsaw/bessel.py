"""Normalized and nonsymmetric Bessel functions as exact truncated power
series, the rank-one Dunkl operator, and the n -> infinity limit from
Jacobi polynomials.

The imaginary unit is never a data type here: E_alpha(lam x) is kept as
the pair (even, odd) of real series with value even + i odd.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from scipy import special

from .convergence import LimitReport
from .core_poly import scalar
from .errors import NumericalInstability, PoleAtNegativeInteger
from .mutations import active

DEFAULT_ORDER = 40


@dataclass(frozen=True)
class PowerSeries:
    """sum c_k x^k for k <= order; coefficients beyond order are unknown."""

    coeffs: tuple
    order: int

    def __post_init__(self):
        c = tuple(self.coeffs)[: self.order + 1]
        c = c + (Fraction(0),) * (self.order + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        K = min(self.order, other.order)
        return PowerSeries(tuple(self.coeff(k) + other.coeff(k) for k in range(K + 1)), K)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __mul__(self, c) -> "PowerSeries":
        return PowerSeries(tuple(v * c for v in self.coeffs), self.order)

    __rmul__ = __mul__

    def derivative(self) -> "PowerSeries":
        return PowerSeries(tuple(k * self.coeffs[k] for k in range(1, self.order + 1)), self.order - 1)

    def mul_x(self) -> "PowerSeries":
        return PowerSeries((Fraction(0),) + self.coeffs, self.order + 1)

    def div_x(self) -> "PowerSeries":
        if self.coeffs[0] != 0:
            raise ZeroDivisionError("series has a nonzero constant term")
        return PowerSeries(self.coeffs[1:], self.order - 1)

    def reflect(self) -> "PowerSeries":
        """f(-x)."""
        return PowerSeries(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)), self.order)

    def truncate(self, K: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, min(K, self.order))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def first_nonzero(self) -> int | None:
        return next((k for k, c in enumerate(self.coeffs) if c != 0), None)

    def eval_exact(self, x):
        x = Fraction(x)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def evaluate(self, x: float) -> float:
        """Sum in exact arithmetic at the binary value of x, round once."""
        return float(self.eval_exact(Fraction(x)))


def _check_poles(alpha, K: int):
    for j in range(K):
        if alpha + 1 + j == 0:
            raise PoleAtNegativeInteger(f"(alpha+1)_k vanishes for alpha = {alpha}")


def _bessel_coeff(alpha, lam, k: int):
    c = Fraction(1) if isinstance(lam, (Fraction, int)) else lam * 0 + 1
    for j in range(k):
        c = c * (-lam * lam / 4) / ((alpha + 1 + j) * (j + 1))
    return c


def bessel_series(alpha, lam, K: int = DEFAULT_ORDER) -> PowerSeries:
    """J_alpha(lam x) = sum_k (-lam^2/4)^k x^(2k) / ((alpha+1)_k k!), up to x^K."""
    alpha, lam = _exact(alpha), _exact(lam)
    _check_poles(alpha, K // 2 + 1)
    coeffs = [Fraction(0)] * (K + 1)
    c = Fraction(1)
    for k in range(K // 2 + 1):
        if k > 0:
            c = c * (-lam * lam / 4) / ((alpha + k) * k)
        coeffs[2 * k] = c
    return PowerSeries(tuple(coeffs), K)


def _exact(v):
    if isinstance(v, float):
        return Fraction(v)
    return scalar(v) if isinstance(v, (int, str)) else v


def bessel_eval(alpha, t: float, K: int | None = None) -> tuple[float, float]:
    """(J_alpha(t), |first omitted term|) using the exact series at lam = 1.

    With K = None the order starts at DEFAULT_ORDER and doubles until the
    first omitted term is below rounding level; past the peak of the terms
    they decrease monotonically, so that term bounds the tail up to a
    factor close to 1.
    """
    alpha = _exact(alpha)
    if K is not None:
        return _bessel_eval_fixed(alpha, t, K)
    K = DEFAULT_ORDER
    while True:
        value, nxt = _bessel_eval_fixed(alpha, t, K)
        peak_passed = (t / 2) ** 2 < (K // 2 + 1) * abs(float(alpha) + K // 2 + 1)
        if peak_passed and nxt <= 1e-17 * max(1.0, abs(value)):
            return value, nxt
        if K > 4096:
            raise NumericalInstability(f"series for J_{alpha}({t}) did not settle by order {K}")
        K *= 2


def _bessel_eval_fixed(alpha, t: float, K: int) -> tuple[float, float]:
    K2 = K - K % 2
    value = bessel_series(alpha, 1, K2).evaluate(t)
    nxt = abs(float(_bessel_coeff(alpha, Fraction(1), K2 // 2 + 1)) * t ** (K2 + 2))
    return value, nxt


@dataclass(frozen=True)
class NonsymBesselPair:
    """E_alpha(lam x) = even(x) + i odd(x)."""

    even: PowerSeries
    odd: PowerSeries

    @property
    def order(self) -> int:
        return min(self.even.order, self.odd.order)

    def evaluate(self, x: float) -> complex:
        return complex(self.even.evaluate(x), self.odd.evaluate(x))

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.odd.is_zero()


def nonsym_bessel(alpha, lam, K: int = DEFAULT_ORDER) -> NonsymBesselPair:
    """even = J_alpha(lam x), odd = lam x/(2(alpha+1)) J_(alpha+1)(lam x)."""
    alpha, lam = _exact(alpha), _exact(lam)
    if alpha == -1:
        raise PoleAtNegativeInteger("alpha = -1")
    even = bessel_series(alpha, lam, K)
    odd = bessel_series(alpha + 1, lam, K - 1).mul_x() * (lam / (2 * (alpha + 1)))
    if active("bessel-odd-sign"):
        odd = -odd
    return NonsymBesselPair(even, odd)


def dunkl_apply(f: PowerSeries, alpha) -> PowerSeries:
    """f' + (alpha + 1/2) (f(x) - f(-x)) / x."""
    return f.derivative() + (f - f.reflect()).div_x() * (alpha + Fraction(1, 2))


def dunkl_eigen_residual(alpha, lam, K: int = DEFAULT_ORDER) -> NonsymBesselPair:
    """Y E - i lam E on the pair, valid through order K-1.

    Y has real coefficients, so it acts on real and imaginary parts
    separately; multiplying by i lam sends (re, im) to (-lam im, lam re).
    """
    alpha, lam = _exact(alpha), _exact(lam)
    E = nonsym_bessel(alpha, lam, K)
    re = dunkl_apply(E.even, alpha) + E.odd * lam
    im = dunkl_apply(E.odd, alpha) - E.even * lam
    return NonsymBesselPair(re, im)


def vector_eigen_check(alpha, lam, K: int = DEFAULT_ORDER) -> tuple[PowerSeries, PowerSeries]:
    """Residuals of the matrix equation for (J_alpha(lam x), i S(x)) with
    S = lam/(2(alpha+1)) J_(alpha+1)(lam x).

    With the factor i moved out, the two rows read
    x S' + 2(alpha+1) S - lam J = 0 and J'/x + lam S = 0.
    """
    alpha, lam = _exact(alpha), _exact(lam)
    J = bessel_series(alpha, lam, K)
    S = bessel_series(alpha + 1, lam, K) * (lam / (2 * (alpha + 1)))
    if active("bessel-odd-sign"):
        S = -S
    top = S.derivative().mul_x() + S * (2 * (alpha + 1)) - J * lam
    bottom = J.derivative().div_x() + S * lam
    return top, bottom


def lowering_raising_residuals(alpha, K: int = DEFAULT_ORDER) -> tuple[PowerSeries, PowerSeries]:
    """The two first-order relations between J_alpha and J_(alpha+1):
    J_alpha' + x/(2(alpha+1)) J_(alpha+1) = 0 and
    x J_(alpha+1)' + 2(alpha+1)(J_(alpha+1) - J_alpha) = 0."""
    alpha = _exact(alpha)
    J0, J1 = bessel_series(alpha, 1, K), bessel_series(alpha + 1, 1, K)
    low = J0.derivative() + J1.mul_x() * (1 / (2 * (alpha + 1)))
    high = J1.derivative().mul_x() + (J1 - J0) * (2 * (alpha + 1))
    return low, high


# --- limit from Jacobi polynomials (float) ------------------------------------

def _log_monic_factor(n: int, a: float, b: float) -> float:
    """log of 4^n n!/(n+a+b+1)_n, monic-in-z over classical normalization."""
    s = a + b + 1
    return 2 * n * math.log(2) + math.lgamma(n + 1) - (math.lgamma(2 * n + s) - math.lgamma(n + s))


def _log_printed_constant(n: int, a: float, b: float) -> float:
    return (a + b) * math.log(2) + math.lgamma(a + 1) - 0.5 * math.log(math.pi) - (a + 0.5) * math.log(n)


def _log_at_one(n: int, a: float) -> float:
    """log of the classical P_n^(a,b)(1) = (a+1)_n / n!."""
    return math.lgamma(a + 1 + n) - math.lgamma(a + 1) - math.lgamma(n + 1)


def log_normaliser(n: int, a: float, b: float, constant: str = "printed") -> float:
    """log c_n, the factor multiplying the monic-in-z Jacobi objects.

    ``"printed"`` is 2^(a+b) Gamma(a+1)/(sqrt(pi) n^(a+1/2)); ``"fitted"`` is
    1/P_n(1), which makes x = 0 exact for every n.
    """
    if constant == "printed":
        return _log_printed_constant(n, a, b)
    if constant == "fitted":
        return -(_log_monic_factor(n, a, b) + _log_at_one(n, a))
    raise ValueError(f"unknown constant {constant!r}")


def _scaled_monic(n: int, a: float, b: float, y: float, log_c: float) -> float:
    """c * P_n(y; a, b) in the monic-in-z normalization, without overflow."""
    return float(special.eval_jacobi(n, a, b, y)) * math.exp(_log_monic_factor(n, a, b) + log_c)


def scaled_jacobi(n: int, a: float, b: float, y: float, constant: str = "printed") -> float:
    """c_n P_n(y; a, b), the left-hand side of the symmetric Bessel limit."""
    if n == 0:
        return 1.0
    return _scaled_monic(n, a, b, y, log_normaliser(n, a, b, constant))


def nonsym_jacobi_unfolded(n: int, a: float, b: float, t: float, branch: int, constant: str = "printed") -> complex:
    """c_|n| E_n at -(u + i branch sqrt(1 - u^2))^2, u = t/(2|n|).

    Uses f[-(u +- i sqrt(1-u^2))^2] = f1(1-2u^2) +- 4iu sqrt(1-u^2) f2(1-2u^2);
    building the degree-|n| Laurent polynomial and evaluating it on the unit
    circle would lose every digit for large n.
    """
    m = abs(n)
    if m == 0:
        return complex(1.0)
    u = t / (2 * m)
    y = 1 - 2 * u * u
    log_c = log_normaliser(m, a, b, constant)
    f1 = _scaled_monic(m, a, b, y, log_c)
    f2 = _scaled_monic(m - 1, a + 1, b + 1, y, log_c)
    factor = 1.0 if n < 0 else -m / (m + a + b + 1)
    return complex(f1, branch * 4 * u * math.sqrt(1 - u * u) * factor * f2)


def bessel_targets(alpha: float, t: float, K: int | None = None) -> tuple[float, float]:
    """(J_alpha(t), t/(2(alpha+1)) J_(alpha+1)(t)): E_alpha(+-t) = first +- i second."""
    j0, _ = bessel_eval(alpha, t, K)
    j1, _ = bessel_eval(alpha + 1, t, K)
    return j0, t / (2 * (alpha + 1)) * j1


DEFAULT_N_LIST = tuple(2**k for k in range(3, 11))


def bessel_limit_check(
    alpha,
    beta,
    lam,
    x: float,
    n_list=DEFAULT_N_LIST,
    target: str = "symmetric",
    constant: str = "printed",
) -> LimitReport:
    """Relative error of the normalised Jacobi objects against Bessel values.

    ``target`` is ``"symmetric"`` (P_n against J_alpha) or
    ``"E(-n),+"``, ``"E(-n),-"``, ``"E(+n),+"``, ``"E(+n),-"``: the index sign
    and the branch of the square root. E_(-n) on branch s tends to
    E_alpha(s lam x) while E_(+n) on branch s tends to E_alpha(-s lam x);
    ``notes["pairing"]`` records which Bessel value each target is compared with.
    """
    a, b = float(alpha), float(beta)
    if not (a > -1 and b > -1):
        raise ValueError("need alpha, beta > -1")
    t = float(lam) * float(x)
    j0, j1 = bessel_targets(alpha, t)
    report = LimitReport(f"jacobi-to-bessel {target} constant={constant}", "1/n")
    if target == "symmetric":
        ref = complex(j0)
    else:
        idx, br = target[2], target[-1]
        sign_idx = -1 if idx == "-" else 1
        branch = 1 if br == "+" else -1
        lim_sign = -sign_idx * branch
        ref = complex(j0, lim_sign * j1)
        report.notes["pairing"] = f"E_alpha({'+' if lim_sign > 0 else '-'}lam x)"
    scale = max(abs(ref), 1e-300)
    for n in n_list:
        if target == "symmetric":
            val = complex(scaled_jacobi(n, a, b, 1 - t * t / (2 * n * n), constant))
        else:
            val = nonsym_jacobi_unfolded(sign_idx * n, a, b, t, branch, constant)
        if not (math.isfinite(val.real) and math.isfinite(val.imag)):
            raise NumericalInstability(f"non-finite Jacobi value at n = {n}")
        report.add(n, 1 / n, abs(val - ref) / scale)
    return report


def printed_pairing_error(alpha, beta, lam, x: float, n: int, constant: str = "printed") -> dict:
    """Errors of E_(+-n) on branch +- against E_alpha(+-lam x), as the
    pairing of index sign, branch and argument sign would be read literally."""
    a, b = float(alpha), float(beta)
    t = float(lam) * float(x)
    j0, j1 = bessel_targets(alpha, t)
    out = {}
    for s in (1, -1):
        val = nonsym_jacobi_unfolded(s * n, a, b, t, s, constant)
        ref = complex(j0, s * j1)
        out["+" if s > 0 else "-"] = abs(val - ref) / abs(ref)
    return out
