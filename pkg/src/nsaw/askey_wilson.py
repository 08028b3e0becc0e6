"""Monic symmetric Askey-Wilson polynomials, the operator L and Favard norms.

Inner products are computed algebraically: expand in the monic basis and
weight by the norms h_n = C_1 ... C_n. The orthogonality measure itself
is never constructed.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .core_poly import (
    _unit,
    LaurentPoly,
    SymLaurentPoly,
    Z,
    exact_divide,
    qpoch,
    qpoch_multi,
    scalar,
)
from .errors import InsufficientBasisDepth, InvalidParameters, ParameterSingularity
from .mutations import active

DEFAULT_M_GUARD = 64


def _num(x):
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return scalar(x)
    return x


@dataclass(frozen=True)
class AWParams:
    """Validated (q, a, b, c, d).

    ``abcd != q^-m`` can only be tested for finitely many m; the check
    runs for m = 0 .. m_guard.
    """

    q: object
    a: object
    b: object
    c: object
    d: object
    m_guard: int = field(default=DEFAULT_M_GUARD, compare=False)

    def __post_init__(self):
        for name in "qabcd":
            object.__setattr__(self, name, _num(getattr(self, name)))
        q, a, b, c, d = self.q, self.a, self.b, self.c, self.d
        if not 0 < q < 1:
            raise InvalidParameters(f"need 0 < q < 1, got q = {q}")
        if 0 in (a, b, c, d):
            raise InvalidParameters("a, b, c, d must be nonzero")
        e4 = a * b * c * d
        for m in range(self.m_guard + 1):
            if e4 * q**m == 1:
                raise InvalidParameters(f"abcd = q^-{m}")
        if a * a == 1 or b * b == 1 or a * b == 1:
            raise InvalidParameters("{a, b} meets {1/a, 1/b}")

    @property
    def e1(self):
        return self.a + self.b + self.c + self.d

    @property
    def e2(self):
        a, b, c, d = self.a, self.b, self.c, self.d
        return a * b + a * c + b * c + a * d + b * d + c * d

    @property
    def e3(self):
        a, b, c, d = self.a, self.b, self.c, self.d
        return a * b * c + a * b * d + a * c * d + b * c * d

    @property
    def e4(self):
        return self.a * self.b * self.c * self.d

    @property
    def abcd(self):
        return (self.a, self.b, self.c, self.d)

    def shifted(self) -> "AWParams":
        """(qa, qb, c, d)."""
        return AWParams(self.q, self.q * self.a, self.q * self.b, self.c, self.d, self.m_guard)

    def permuted(self, order) -> "AWParams":
        vals = self.abcd
        return AWParams(self.q, *(vals[i] for i in order), m_guard=self.m_guard)

    def as_dict(self) -> dict[str, str]:
        return {k: str(getattr(self, k)) for k in "qabcd"}


def try_params(q, a, b, c, d) -> AWParams | None:
    try:
        return AWParams(q, a, b, c, d)
    except InvalidParameters:
        return None


# --- recurrence ---------------------------------------------------------

def recurrence_coeffs(n: int, p: AWParams):
    """(B_n, C_n) of  (z + 1/z) P_n = P_{n+1} + B_n P_n + C_n P_{n-1}."""
    q, e1, e3, e4 = p.q, p.e1, p.e3, p.e4
    den_b = (1 - q ** (2 * n - 2) * e4) * (1 - q ** (2 * n) * e4)
    if den_b == 0:
        raise ParameterSingularity(f"B_{n}: vanishing denominator")
    num_b = (
        (1 - q**n - q ** (n + 1)) * e3
        + q * e1
        + q ** (2 * n - 1) * e3 * e4
        - q ** (n - 1) * (1 + q - q ** (n + 1)) * e1 * e4
    )
    B = q ** (n - 1) * num_b / den_b
    if n == 0:
        return B, B * 0
    a, b, c, d = p.abcd
    m = q ** (n - 1)
    pairs = (1 - m * a * b) * (1 - m * a * c) * (1 - m * a * d) * (1 - m * b * c) * (1 - m * b * d) * (1 - m * c * d)
    den_c = (1 - q ** (2 * n - 3) * e4) * (1 - q ** (2 * n - 2) * e4) ** 2 * (1 - q ** (2 * n - 1) * e4)
    if den_c == 0:
        raise ParameterSingularity(f"C_{n}: vanishing denominator")
    C = pairs * (1 - q**n) * (1 - q ** (n - 2) * e4) / den_c
    return B, C


@lru_cache(maxsize=None)
def _recurrence_poly(p: AWParams, n: int) -> SymLaurentPoly:
    if n == 0:
        # typed one, so mpf parameters give mpf coefficients throughout
        return SymLaurentPoly._raw({0: _unit(p.q)})
    B, C = recurrence_coeffs(n - 1, p)
    w = SymLaurentPoly({1: 1, -1: 1})
    out = (w - B) * _recurrence_poly(p, n - 1)
    if n >= 2:
        out = out - _recurrence_poly(p, n - 2) * C
    return out


def _hypergeometric_poly(n: int, p: AWParams) -> SymLaurentPoly:
    q, a, b, c, d = p.q, p.a, p.b, p.c, p.d
    e4 = p.e4
    denominators = qpoch_multi((a * b, a * c, a * d), q, n)
    pre_den = a**n * qpoch(q ** (n - 1) * e4, q, n)
    if denominators == 0 or pre_den == 0:
        raise ParameterSingularity(f"hypergeometric P_{n}: vanishing denominator")
    w = SymLaurentPoly({1: 1, -1: 1})
    total = SymLaurentPoly.zero()
    factor = SymLaurentPoly.one()  # (az, a/z; q)_k
    coef = Fraction(1) if isinstance(q, Fraction) else q * 0 + 1
    for k in range(n + 1):
        if k > 0:
            j = k - 1
            coef = coef * (1 - q ** (j - n)) * (1 - q ** (n - 1 + j) * e4) * q
            coef = coef / ((1 - a * b * q**j) * (1 - a * c * q**j) * (1 - a * d * q**j) * (1 - q ** (j + 1)))
            factor = factor * (1 + a * a * q ** (2 * j) - w * (a * q**j))
        total = total + factor * coef
    return total * (denominators / pre_den)


def aw_poly(n: int, p: AWParams, method: str = "recurrence") -> SymLaurentPoly:
    """Monic Askey-Wilson polynomial P_n[z; a, b, c, d | q].

    ``method`` is ``"recurrence"`` (three-term recurrence) or
    ``"hypergeometric"`` (terminating 4phi3 sum).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if method == "recurrence":
        return _recurrence_poly(p, n)
    if method == "hypergeometric":
        return _hypergeometric_poly(n, p)
    raise ValueError(f"unknown method {method!r}")


# --- the q-difference operator L ---------------------------------------

def aw_L_apply(f: LaurentPoly, p: AWParams) -> LaurentPoly:
    """(Lf)[z] = A[z] f[qz] + A[1/z] f[z/q] - (A[z] + A[1/z]) f[z].

    Assembled over (1 - z^2)(1 - q z^2)(q - z^2) and divided exactly.
    """
    q, a, b, c, d = p.q, p.a, p.b, p.c, p.d
    num = (1 - Z * a) * (1 - Z * b) * (1 - Z * c) * (1 - Z * d)
    # z^4 N(1/z) = (z - a)(z - b)(z - c)(z - d)
    num_r = (Z - a) * (Z - b) * (Z - c) * (Z - d)
    fwd = f.substitute("qz", q) - f
    bwd = f.substitute("z/q", q) - f
    sign = -1 if active("L-backward-sign") else 1
    z2 = Z * Z
    total = num * fwd * (q - z2) + num_r * bwd * (1 - z2 * q) * sign
    out = exact_divide(total, (1 - z2) * (1 - z2 * q) * (q - z2))
    return SymLaurentPoly.of(out) if f.is_symmetric() and out.is_symmetric() else out


def aw_L_eigenvalue(n: int, p: AWParams):
    return (p.q ** (-n) - 1) * (1 - p.e4 * p.q ** (n - 1))


# --- norms and Favard ----------------------------------------------------

def aw_norm(n: int, p: AWParams):
    """Closed form h_n = (q, ab, ac, ad, bc, bd, cd; q)_n / ((abcd; q)_2n (q^(n-1) abcd; q)_n)."""
    q, a, b, c, d = p.q, p.a, p.b, p.c, p.d
    e4 = p.e4
    num = qpoch_multi((q, a * b, a * c, a * d, b * c, b * d, c * d), q, n)
    den = qpoch(e4, q, 2 * n) * qpoch(q ** (n - 1) * e4, q, n)
    if den == 0:
        raise ParameterSingularity(f"h_{n}: vanishing denominator")
    return num / den


@dataclass
class FavardReport:
    N: int
    realB: bool
    positiveC: bool
    sufficient_condition: bool
    first_nonpositive: int | None = None

    @property
    def passed(self) -> bool:
        return self.realB and self.positiveC


def _is_real(x) -> bool:
    return getattr(x, "imag", 0) == 0


def favard_check(p: AWParams, N: int = 50) -> FavardReport:
    realB = all(_is_real(recurrence_coeffs(n, p)[0]) for n in range(N + 1))
    first_bad = None
    for n in range(1, N + 1):
        C = recurrence_coeffs(n, p)[1]
        if not _is_real(C) or C <= 0:
            first_bad = n
            break
    params = p.abcd
    sufficient = all(_is_real(x) for x in params) and all(
        abs(x * y) < 1 for x, y in combinations(params, 2)
    )
    return FavardReport(N, realB, first_bad is None, sufficient, first_bad)


# --- monic basis, expansion, inner product --------------------------------

class OrthoBasis:
    """Cached P_0 .. P_N with their norms, grown on demand."""

    def __init__(self, params: AWParams, N: int = 0):
        self.params = params
        self.polys: list[SymLaurentPoly] = [SymLaurentPoly.one()]
        self.norms: list = [Fraction(1)]
        self._lock = threading.Lock()
        self.ensure(N)

    @property
    def depth(self) -> int:
        return len(self.polys) - 1

    def ensure(self, N: int) -> "OrthoBasis":
        with self._lock:
            while self.depth < N:
                n = self.depth + 1
                self.polys.append(aw_poly(n, self.params))
                self.norms.append(self.norms[-1] * recurrence_coeffs(n, self.params)[1])
        return self


@lru_cache(maxsize=256)
def orthobasis(p: AWParams) -> OrthoBasis:
    return OrthoBasis(p)


def expand_monic(f: LaurentPoly, polys, leading_degree) -> list:
    """Coefficients of f in a monic triangular basis.

    ``leading_degree(f)`` gives the degree whose coefficient is 1 in each
    basis element (the top z-power for Laurent bases, the x-power for
    ordinary ones).
    """
    rest = f
    if rest.is_zero():
        return []
    m = leading_degree(rest)
    if m >= len(polys):
        raise InsufficientBasisDepth(f"need degree {m}, basis has {len(polys) - 1}")
    out = [Fraction(0)] * (m + 1)
    while not rest.is_zero():
        k = leading_degree(rest)
        if k < 0:
            raise ValueError(f"not in the span of the basis: {rest}")
        c = rest.coeff(k)
        out[k] = c
        rest = rest - polys[k] * c
    return out


def basis_expand(f: SymLaurentPoly, basis: OrthoBasis) -> list:
    if not f.is_symmetric():
        raise ValueError("basis_expand needs a symmetric Laurent polynomial")
    return expand_monic(f, basis.polys, lambda g: g.degree)


def inner_product_sym(f: SymLaurentPoly, g: SymLaurentPoly, p: AWParams):
    """<f, g> = sum c_n(f) c_n(g) h_n."""
    deg = max(f.degree or 0, g.degree or 0)
    basis = orthobasis(p).ensure(deg)
    cf = basis_expand(f, basis)
    cg = basis_expand(g, basis)
    return sum((x * y * basis.norms[n] for n, (x, y) in enumerate(zip(cf, cg))), Fraction(0))


# --- parameter sampling ---------------------------------------------------

Q_CHOICES = tuple(
    sorted({Fraction(n, d) for d in range(2, 6) for n in range(1, d)})
)


def random_rational(rng: random.Random, bound=Fraction(3, 4), max_den: int = 7) -> Fraction:
    """Small-denominator rational in (-bound, bound), never zero."""
    while True:
        den = rng.randint(1, max_den)
        num = rng.randint(-den, den)
        x = Fraction(num, den)
        if x != 0 and abs(x) < bound:
            return x


def random_aw_params(rng: random.Random, *, need_shifted: bool = True, max_n: int = 10) -> AWParams:
    """Draw parameters valid for (a, b, c, d) and, optionally, (qa, qb, c, d)
    with nonsingular recurrence coefficients up to ``max_n``."""
    while True:
        q = rng.choice(Q_CHOICES)
        p = try_params(q, *(random_rational(rng) for _ in range(4)))
        if p is None:
            continue
        sets = [p, p.shifted()] if need_shifted else [p]
        try:
            for s in sets:
                for n in range(max_n + 1):
                    recurrence_coeffs(n, s)
        except (InvalidParameters, ParameterSingularity):
            continue
        return p
