"""Exact scalars, dense univariate polynomials and rational functions.

Every coefficient is a :class:`fractions.Fraction`.  Floats are refused at the
boundary so that no construction path ever touches binary floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import ZeroDenominator

Scalar = Fraction
ScalarLike = Union[int, str, Rational]

#: Degree of the zero polynomial.  Using ``-inf`` keeps ``deg(p*q) = deg p + deg q``
#: true for the zero polynomial too, and can never be confused with a real degree.
NEG_INF = -math.inf


def to_scalar(value: ScalarLike) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Strings such as ``"-92/3"``, ``"0.5"`` or ``"1e-30"`` are parsed exactly.
    Floats are rejected: they have already lost the exact value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def is_integer(q: Fraction) -> bool:
    return q.denominator == 1


def format_scalar(q: Fraction) -> str:
    """``p/q`` form, or plain ``p`` for integers."""
    q = to_scalar(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _trim(coeffs: Iterable[Fraction]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True, init=False)
class Polynomial:
    """Dense polynomial, ``coeffs[i]`` is the coefficient of ``x**i``.

    Trailing zeros are always trimmed, so the zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        object.__setattr__(self, "coeffs", _trim(to_scalar(c) for c in coeffs))

    # constructors -----------------------------------------------------------------

    @classmethod
    def constant(cls, c: ScalarLike) -> "Polynomial":
        return cls((c,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, power: int, c: ScalarLike = 1) -> "Polynomial":
        return cls([0] * power + [c])

    @classmethod
    def linear(cls, slope: ScalarLike, intercept: ScalarLike) -> "Polynomial":
        """``slope*x + intercept``."""
        return cls((intercept, slope))

    @classmethod
    def from_roots(cls, roots: Iterable[ScalarLike], lead: ScalarLike = 1) -> "Polynomial":
        p = cls.constant(lead)
        for r in roots:
            p = p * cls((-to_scalar(r), 1))
        return p

    # basic properties -------------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    # arithmetic ---------------------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Polynomial(out)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: ScalarLike) -> "Polynomial":
        c = to_scalar(c)
        return Polynomial(c * a for a in self.coeffs)

    def __truediv__(self, c) -> "Polynomial":
        c = to_scalar(c)
        if c == 0:
            raise ZeroDenominator("division of a polynomial by zero")
        return self.scale(1 / c)

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDenominator("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.lead
        for i in range(dq, -1, -1):
            q = rem[i + len(other.coeffs) - 1] / lead
            quot[i] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[i + j] -= q * c
        return Polynomial(quot), Polynomial(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.lead)

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    # evaluation and substitution ------------------------------------------------------

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``, and works for any ring element."""
        if not isinstance(x, (Fraction, int)):
            acc = 0
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift_arg(self, t: ScalarLike) -> "Polynomial":
        """Return ``q`` with ``q(x) = p(x - t)``."""
        t = to_scalar(t)
        if t == 0 or len(self.coeffs) <= 1:
            return self
        # Taylor shift by repeated synthetic division
        c = list(self.coeffs)
        d = len(c) - 1
        mt = -t
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                c[j] += mt * c[j + 1]
        return Polynomial(c)

    def compose(self, other: "Polynomial") -> "Polynomial":
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    # misc --------------------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial([{', '.join(format_scalar(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = format_scalar(abs(c))
            sign = "-" if c < 0 else "+"
            if i == 0:
                term = mag
            else:
                mono = "x" if i == 1 else f"x^{i}"
                term = mono if abs(c) == 1 else f"{mag}*{mono}"
            parts.append((sign, term))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text


def poly_arith(p: Polynomial, q, op: str) -> Polynomial:
    """Dispatch helper: ``op`` in ``add``, ``sub``, ``mul`` or ``scale`` (``q`` a scalar)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown operation {op!r}")


def poly_shift_arg(p: Polynomial, t: ScalarLike) -> Polynomial:
    return p.shift_arg(t)


def poly_eval(p: Polynomial, x: ScalarLike) -> Fraction:
    return p(to_scalar(x))


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm (``gcd(0, 0) = 0``)."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def cauchy_bound(p: Polynomial) -> Fraction:
    """Every complex root ``z`` of ``p`` satisfies ``|z| < cauchy_bound(p)``."""
    if p.degree < 1:
        return Fraction(0)
    lead = abs(p.lead)
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lead


def _ceil_root(t: Fraction, k: int) -> int:
    """Smallest integer ``m >= 0`` with ``m**k >= t``."""
    if t <= 0:
        return 0
    hi = 1
    while Fraction(hi) ** k < t:
        hi *= 2
    lo = hi // 2  # lo**k < t <= hi**k
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if Fraction(mid) ** k >= t:
            hi = mid
        else:
            lo = mid
    return hi


def positive_root_bound(p: Polynomial) -> Fraction:
    """Integer ``X`` with no real root of ``p`` in ``[X, inf)``.

    Uses the bound ``2 max (-a_i/a_n)^(1/(n-i))`` over coefficients whose sign
    differs from the leading one; much tighter than the Cauchy bound when the
    coefficients are large.
    """
    if p.degree < 1:
        return Fraction(0)
    n = p.degree
    sign = 1 if p.lead > 0 else -1
    best = 0
    for i, c in enumerate(p.coeffs[:-1]):
        if c * sign < 0:
            best = max(best, _ceil_root(-c * sign / abs(p.lead), n - i))
    return Fraction(2 * best + 1)


@dataclass(frozen=True)
class RationalFunction:
    """``num/den`` in lowest terms with monic denominator."""

    num: Polynomial
    den: Polynomial

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDenominator(f"pole at x = {x}")
        return self.num(x) / d

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return ratfn_normalize(self.num * other.num, self.den * other.den)

    def shift_arg(self, t: ScalarLike) -> "RationalFunction":
        return RationalFunction(self.num.shift_arg(t), self.den.shift_arg(t))

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"


def ratfn_normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Cancel the common factor of ``num`` and ``den`` and make ``den`` monic."""
    if den.is_zero():
        raise ZeroDenominator("rational function with zero denominator")
    if num.is_zero():
        return RationalFunction(Polynomial(), Polynomial.constant(1))
    g = poly_gcd(num, den)
    if g.degree > 0:
        num = num // g
        den = den // g
    lead = den.lead
    return RationalFunction(num / lead, den / lead)


def product(polys: Sequence[Polynomial]) -> Polynomial:
    acc = Polynomial.constant(1)
    for p in polys:
        acc = acc * p
    return acc
