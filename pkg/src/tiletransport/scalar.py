"""Exact arithmetic in the golden field Q(phi).

Every element is stored as a pair of rationals ``(a, b)`` meaning
``a + b*phi`` with ``phi**2 == phi + 1``.  Ordering is decided exactly from
the defining quadratic, so no floating point enters a comparison.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

PHI_FLOAT = (1 + math.sqrt(5)) / 2

_SCALAR_RE = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)?\s*(?:(?P<sign>[+-])\s*(?P<b>\d+(?:/\d+)?)?\s*(?:φ|phi))?\s*$"
)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class Scalar:
    """An element ``a + b*phi`` of Q(phi)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _frac(a)
        self.b = _frac(b)

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls(x, 0)

    @classmethod
    def phi(cls) -> "Scalar":
        return cls(0, 1)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar(other)
            except TypeError:
                return NotImplemented
        return Scalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar(other)
            except TypeError:
                return NotImplemented
        return Scalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                f = _frac(other)
            except TypeError:
                return NotImplemented
            return Scalar(self.a * f, self.b * f)
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return Scalar(a * c + bd, a * d + b * c + bd)

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        """Galois conjugate, sending phi to 1 - phi."""
        return Scalar(self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        a, b = self.a, self.b
        return a * a + a * b - b * b

    def inverse(self) -> "Scalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(phi)")
        c = self.conjugate()
        return Scalar(c.a / n, c.b / n)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                f = _frac(other)
            except TypeError:
                return NotImplemented
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return Scalar(self.a / f, self.b / f)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Scalar(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order ------------------------------------------------------------
    def sign(self) -> int:
        if self.b == 0:
            a = self.a
            return (a > 0) - (a < 0)
        # a + b*phi = u + w*sqrt(5) with u = a + b/2, w = b/2
        u = self.a + self.b / 2
        w = self.b / 2
        su = (u > 0) - (u < 0)
        sw = (w > 0) - (w < 0)
        if su == sw or sw == 0:
            return su
        if su == 0:
            return sw
        # opposite signs: compare u**2 with 5 w**2
        d = u * u - 5 * w * w
        return su if d > 0 else sw

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.a == other.a and self.b == other.b
        try:
            f = _frac(other)
        except TypeError:
            return NotImplemented
        return self.b == 0 and self.a == f

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def _cmp(self, other) -> int:
        if self.b == 0 and isinstance(other, (int, Fraction)):
            d = self.a - other
            return (d > 0) - (d < 0)
        return (self - Scalar.coerce(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- conversion -------------------------------------------------------
    def __float__(self):
        return float(self.a) + float(self.b) * PHI_FLOAT

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def is_integer_multiple_of_phi(self) -> bool:
        return self.a == 0 and self.b.denominator == 1

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "-" if self.b < 0 else "+"
        return f"{self.a}{sign}{abs(self.b)}φ"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse ``"p/q+r/sφ"``-style strings (also plain rationals, ``"phi"``)."""
        m = _SCALAR_RE.match(text)
        if not m or (m.group("a") is None and m.group("sign") is None):
            raise ValueError(f"not an exact Q(phi) literal: {text!r}")
        a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
        b = Fraction(0)
        if m.group("sign"):
            b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
            if m.group("sign") == "-":
                b = -b
        return cls(a, b)


PHI = Scalar.phi()
ZERO = Scalar(0)
ONE = Scalar(1)


def fib(n: int) -> int:
    """Fibonacci numbers with ``fib(0) == 0`` and ``fib(1) == 1``."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a
