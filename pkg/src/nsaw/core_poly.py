"""Exact Laurent-polynomial algebra over the rationals.

Coefficients are :class:`fractions.Fraction` in every exact computation.
The containers are duck-typed, so the limit sweeps reuse them with
``mpmath.mpf`` coefficients; only :func:`exact_divide` insists on an
exact field (it needs a remainder that is exactly zero).

All polynomial objects are immutable.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .errors import (
    DegenerateParameters,
    DivisionNotExact,
    NotSymmetric,
    ZeroPoint,
)

ExactScalar = Fraction
Scalar = Union[Fraction, int]

SUBSTITUTION_RULES = ("qz", "z/q", "1/z", "q/z", "1/(qz)")


def scalar(x) -> Fraction:
    """Parse ``x`` into an exact rational.

    Strings must be integer or integer-slash-integer; floats are refused
    because they would silently round.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        num, _, den = s.partition("/")
        try:
            n = int(num)
            d = int(den) if den else 1
        except ValueError:
            raise ValueError(f"not an exact rational: {x!r}") from None
        if d == 0:
            raise ZeroDivisionError(f"zero denominator in {x!r}")
        return Fraction(n, d)
    raise TypeError(f"cannot make an exact scalar from {type(x).__name__}")


def _is_number(x) -> bool:
    return isinstance(x, numbers.Number) or type(x).__module__.startswith("mpmath")


def _unit(x):
    # typed 1 so that empty products stay exact (or stay mpf)
    return Fraction(1) if isinstance(x, (int, Fraction)) else x * 0 + 1


def poch(x, n: int):
    """Rising factorial (x)_n."""
    out = _unit(x)
    for j in range(n):
        out = out * (x + j)
    return out


def qpoch(x, q, n: int):
    """q-Pochhammer symbol (x; q)_n = prod_{j<n} (1 - x q^j)."""
    out = _unit(x)
    for j in range(n):
        out = out * (1 - x * q**j)
    return out


def qpoch_multi(xs, q, n: int):
    out = _unit(q)
    for x in xs:
        out = out * qpoch(x, q, n)
    return out


class LaurentPoly:
    """Sparse Laurent polynomial ``sum c_k z^k``.

    Zero coefficients are never stored, so equality is plain dict
    equality.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Scalar] | Iterable | None = None):
        items = coeffs.items() if isinstance(coeffs, Mapping) else (coeffs or ())
        c: dict[int, object] = {}
        for k, v in items:
            if isinstance(v, int) and not isinstance(v, bool):
                v = Fraction(v)
            v = c.get(int(k), 0) + v
            if v != 0:
                c[int(k)] = v
            else:
                c.pop(int(k), None)
        self._c = c
        self._validate()

    def _validate(self) -> None:
        pass

    @classmethod
    def _raw(cls, c: dict):
        obj = object.__new__(cls)
        obj._c = c
        return obj

    # --- constructors -------------------------------------------------
    @classmethod
    def monomial(cls, k: int, c: Scalar = 1):
        return cls({k: c})

    @classmethod
    def constant(cls, c: Scalar):
        return cls({0: c})

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls._raw({0: Fraction(1)})

    # --- inspection ---------------------------------------------------
    @property
    def coeffs(self) -> Mapping[int, object]:
        return MappingProxyType(self._c)

    def coeff(self, k: int):
        return self._c.get(k, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def degree(self) -> int | None:
        return max(self._c) if self._c else None

    @property
    def valuation(self) -> int | None:
        return min(self._c) if self._c else None

    def is_symmetric(self) -> bool:
        return all(self._c.get(-k, 0) == v for k, v in self._c.items())

    def items(self):
        return sorted(self._c.items())

    # --- arithmetic ---------------------------------------------------
    def _result_cls(self, other):
        if type(other) is type(self):
            return type(self)
        return LaurentPoly

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if _is_number(other):
            if isinstance(other, int):
                other = Fraction(other)
            return type(self)._raw({0: other} if other != 0 else {})
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for k, v in o._c.items():
            s = c.get(k, 0) + v
            if s != 0:
                c[k] = s
            else:
                c.pop(k, None)
        return self._result_cls(o)._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_number(other) and not isinstance(other, LaurentPoly):
            if other == 0:
                return type(self)._raw({})
            return type(self)._raw({k: v * other for k, v in self._c.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        c: dict[int, object] = {}
        for i, u in self._c.items():
            for j, v in o._c.items():
                c[i + j] = c.get(i + j, 0) + u * v
        return self._result_cls(o)._raw({k: v for k, v in c.items() if v != 0})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_number(other) and not isinstance(other, LaurentPoly):
            if isinstance(other, int):
                other = Fraction(other)
            return type(self)._raw({k: v / other for k, v in self._c.items()})
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) == 1:
                ((k, v),) = self._c.items()
                return LaurentPoly._raw({k * n: v**n})
            raise ValueError("negative power of a non-monomial")
        out = type(self).one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if _is_number(other):
            return self._c == ({0: other} if other != 0 else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    # --- substitutions ------------------------------------------------
    def substitute(self, rule: str, q=None) -> "LaurentPoly":
        """Apply one of the substitutions z->qz, z->z/q, z->1/z, z->q/z,
        z->1/(qz)."""
        if rule == "1/z":
            return LaurentPoly._raw({-k: v for k, v in self._c.items()})
        if rule not in SUBSTITUTION_RULES:
            raise ValueError(f"unknown substitution {rule!r}")
        if q == 0:
            raise ZeroDivisionError("q must be nonzero")
        if rule == "qz":
            return LaurentPoly._raw({k: v * q**k for k, v in self._c.items()})
        if rule == "z/q":
            return LaurentPoly._raw({k: v / q**k for k, v in self._c.items()})
        if rule == "q/z":
            return LaurentPoly._raw({-k: v * q**k for k, v in self._c.items()})
        return LaurentPoly._raw({-k: v / q**k for k, v in self._c.items()})

    def reflect(self):
        """f[1/z]."""
        return self.substitute("1/z")

    def shift(self, m: int) -> "LaurentPoly":
        """z^m * f."""
        return LaurentPoly._raw({k + m: v for k, v in self._c.items()})

    def derivative(self) -> "LaurentPoly":
        c = {k - 1: k * v for k, v in self._c.items() if k != 0}
        return LaurentPoly._raw(c)

    def euler(self) -> "LaurentPoly":
        """z * d/dz."""
        return LaurentPoly._raw({k: k * v for k, v in self._c.items() if k != 0})

    # --- evaluation ---------------------------------------------------
    def eval(self, z0):
        if z0 == 0:
            if self.valuation is not None and self.valuation < 0:
                raise ZeroPoint("negative powers at z = 0")
            return self.coeff(0)
        total = Fraction(0) if isinstance(z0, (Fraction, int)) else 0
        for k, v in self._c.items():
            total += v * z0**k
        return total

    def evaluate(self, z):
        """Floating evaluation; ``z`` may be a numpy array."""
        total = 0
        for k, v in self._c.items():
            total = total + (float(v) if isinstance(v, Fraction) else v) * z**k
        return total

    # --- display ------------------------------------------------------
    def __repr__(self):
        return f"{type(self).__name__}({dict(self.items())!r})"

    def __str__(self):
        return format_poly(self, "z")

    def to_dict(self) -> dict[str, str]:
        return {str(k): str(v) for k, v in self.items()}


class SymLaurentPoly(LaurentPoly):
    """Laurent polynomial with c_k == c_{-k}."""

    __slots__ = ()

    def _validate(self):
        if not self.is_symmetric():
            raise NotSymmetric(f"not symmetric under z -> 1/z: {LaurentPoly._raw(self._c)}")

    @classmethod
    def of(cls, f: LaurentPoly) -> "SymLaurentPoly":
        if isinstance(f, SymLaurentPoly):
            return f
        out = cls._raw(dict(f._c))
        out._validate()
        return out

    def reflect(self):
        return self


class OrdinaryPoly(LaurentPoly):
    """Polynomial in x with nonnegative degrees only."""

    __slots__ = ()

    def _validate(self):
        if self._c and min(self._c) < 0:
            raise ValueError("OrdinaryPoly cannot carry negative powers")

    @classmethod
    def of(cls, f: LaurentPoly) -> "OrdinaryPoly":
        if isinstance(f, OrdinaryPoly):
            return f
        out = cls._raw(dict(f._c))
        out._validate()
        return out

    @classmethod
    def x(cls):
        return cls._raw({1: Fraction(1)})

    def scale(self, q) -> "OrdinaryPoly":
        """f(qx)."""
        return OrdinaryPoly._raw({k: v * q**k for k, v in self._c.items()})

    def derivative(self):
        return OrdinaryPoly._raw({k - 1: k * v for k, v in self._c.items() if k != 0})

    def compose(self, g: LaurentPoly) -> LaurentPoly:
        """f(g) by Horner's rule; ``g`` may be any Laurent polynomial."""
        if not self._c:
            return LaurentPoly.zero()
        out = LaurentPoly.zero()
        for k in range(self.degree, -1, -1):
            out = out * g + self.coeff(k)
        return out

    def __str__(self):
        return format_poly(self, "x")


def format_poly(f: LaurentPoly, var: str) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for k, v in sorted(f.coeffs.items(), reverse=True):
        if k == 0:
            mono = str(v)
        else:
            power = var if k == 1 else f"{var}^{k}"
            mono = power if v == 1 else f"-{power}" if v == -1 else f"{v}*{power}"
        parts.append(mono)
    return " + ".join(parts).replace("+ -", "- ")


Z = LaurentPoly.monomial(1)
ZINV = LaurentPoly.monomial(-1)
X = OrdinaryPoly.x()


# --- module-level operations ------------------------------------------

def eval_poly(f: LaurentPoly, z0):
    return f.eval(z0)


def substitute(f: LaurentPoly, rule: str, q=None) -> LaurentPoly:
    return f.substitute(rule, q)


def exact_divide(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Return g with g * den == num, or raise DivisionNotExact."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero()
    nv, dv = num.valuation, den.valuation
    n = [num.coeff(k) for k in range(nv, num.degree + 1)]
    d = [den.coeff(k) for k in range(dv, den.degree + 1)]
    if len(n) < len(d):
        raise DivisionNotExact(f"({num}) / ({den})")
    lead = d[-1]
    quot = [Fraction(0)] * (len(n) - len(d) + 1)
    for i in range(len(quot) - 1, -1, -1):
        t = n[i + len(d) - 1] / lead
        quot[i] = t
        if t != 0:
            for j, dj in enumerate(d):
                n[i + j] -= t * dj
    if any(r != 0 for r in n[: len(d) - 1]):
        raise DivisionNotExact(f"({num}) / ({den})")
    shift = nv - dv
    return LaurentPoly({shift + i: t for i, t in enumerate(quot)})


def sym_part(f: LaurentPoly) -> SymLaurentPoly:
    return SymLaurentPoly.of((f + f.reflect()) / 2)


def _pair_sym(m: int, c) -> dict:
    return {0: c} if m == 0 else {m: c, -m: c}


@dataclass(frozen=True)
class VecSymPair:
    """Pair (f1, f2) of symmetric Laurent polynomials.

    Which multiplier glues the pair back into one Laurent polynomial is
    decided by the caller: ``z^-1 (1 - a z)(1 - b z)`` in the q-case,
    ``-(z - 1/z)`` in the Jacobi case.
    """

    f1: SymLaurentPoly
    f2: SymLaurentPoly

    def __post_init__(self):
        object.__setattr__(self, "f1", _as_sym(self.f1))
        object.__setattr__(self, "f2", _as_sym(self.f2))

    def __add__(self, other: "VecSymPair") -> "VecSymPair":
        return VecSymPair(self.f1 + other.f1, self.f2 + other.f2)

    def __sub__(self, other: "VecSymPair") -> "VecSymPair":
        return VecSymPair(self.f1 - other.f1, self.f2 - other.f2)

    def __mul__(self, c) -> "VecSymPair":
        return VecSymPair(self.f1 * c, self.f2 * c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.f1.is_zero() and self.f2.is_zero()

    def __iter__(self):
        yield self.f1
        yield self.f2


def _as_sym(f) -> SymLaurentPoly:
    if isinstance(f, SymLaurentPoly):
        return f
    if isinstance(f, LaurentPoly):
        return SymLaurentPoly.of(f)
    return SymLaurentPoly.constant(f) if f != 0 else SymLaurentPoly.zero()


def ab_multiplier(a, b) -> LaurentPoly:
    """z^-1 (1 - a z)(1 - b z)."""
    return LaurentPoly({-1: 1, 0: -(a + b), 1: a * b})


def sym_decompose_ab(f: LaurentPoly, a, b) -> VecSymPair:
    """Split f = f1 + z^-1 (1 - a z)(1 - b z) f2 with f1, f2 symmetric.

    The multiplier is triangular in the filtration by max |degree|, so
    the pair (z^m, z^-m) of f fixes the top terms of f1 and f2; peel
    them off from the outside in.
    """
    ab = a * b
    if ab == 1:
        raise DegenerateParameters("ab = 1")
    rest = dict(f.coeffs)
    f1: dict[int, object] = {}
    f2: dict[int, object] = {}
    mult = {-1: 1, 0: -(a + b), 1: ab}
    while rest:
        m = max(abs(k) for k in rest)
        if m == 0:
            f1[0] = f1.get(0, 0) + rest.pop(0)
            break
        top, bottom = rest.get(m, 0), rest.get(-m, 0)
        t = (top - bottom) / (ab - 1)
        s = bottom - t
        sub: dict[int, object] = {}
        if s != 0:
            f1.update(_pair_sym(m, s))
            for k, v in _pair_sym(m, s).items():
                sub[k] = sub.get(k, 0) + v
        if t != 0:
            f2.update(_pair_sym(m - 1, t))
            for k, v in _pair_sym(m - 1, t).items():
                for j, w in mult.items():
                    sub[k + j] = sub.get(k + j, 0) + v * w
        for k, v in sub.items():
            r = rest.get(k, 0) - v
            if r != 0:
                rest[k] = r
            else:
                rest.pop(k, None)
    return VecSymPair(SymLaurentPoly(f1), SymLaurentPoly(f2))


def sym_recompose_ab(v: VecSymPair, a, b) -> LaurentPoly:
    return LaurentPoly._raw(dict(v.f1.coeffs)) + ab_multiplier(a, b) * v.f2


JACOBI_MULTIPLIER = LaurentPoly({1: -1, -1: 1})  # -(z - 1/z)


def jacobi_split(f: LaurentPoly) -> VecSymPair:
    """Split f = f1 - (z - 1/z) f2 with f1, f2 symmetric."""
    fr = f.reflect()
    f1 = (f + fr) / 2
    anti = (f - fr) / 2
    f2 = exact_divide(anti, JACOBI_MULTIPLIER)
    return VecSymPair(f1, f2)


def jacobi_join(v: VecSymPair) -> LaurentPoly:
    return LaurentPoly._raw(dict(v.f1.coeffs)) + JACOBI_MULTIPLIER * v.f2


def to_x(f: LaurentPoly) -> OrdinaryPoly:
    """The polynomial p with p((z + 1/z)/2) == f[z]."""
    if not f.is_symmetric():
        raise NotSymmetric(str(f))
    rest = LaurentPoly._raw(dict(f.coeffs))
    out: dict[int, object] = {}
    w = LaurentPoly({1: 1, -1: 1})
    while not rest.is_zero():
        m = rest.degree
        c = rest.coeff(m)
        out[m] = c * 2**m
        rest = rest - (w**m) * c
    return OrdinaryPoly(out)


def from_x(p: OrdinaryPoly) -> SymLaurentPoly:
    half_w = LaurentPoly({1: Fraction(1, 2), -1: Fraction(1, 2)})
    return SymLaurentPoly.of(OrdinaryPoly.of(p).compose(half_w))


def x_form(f, direction: str = "to_x"):
    if direction == "to_x":
        return to_x(f)
    if direction == "from_x":
        return from_x(f)
    raise ValueError(f"direction must be to_x or from_x, not {direction!r}")
