"""Exact arithmetic in Q(sqrt d) for a nonsquare natural d.

A :class:`Surd` is (a + b*sqrt(d)) / c with integers a, b and c > 0. Every
comparison reduces to the sign of an integer expression a + b*sqrt(d), which
is decided by comparing a^2 with b^2 d. Nothing here touches floating point
except :meth:`Surd.approx`, which is for display only.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

__all__ = ["Surd", "sign_surd", "floor_surd", "is_square", "parse_surd", "continued_fraction"]

Rational = Union[int, Fraction]


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def sign_surd(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d), d nonsquare."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    # opposite signs: compare magnitudes a^2 and b^2 d (never equal, d nonsquare)
    if a * a > b * b * d:
        return 1 if a > 0 else -1
    return 1 if b > 0 else -1


def floor_surd(a: int, b: int, d: int, c: int = 1) -> int:
    """floor((a + b*sqrt(d)) / c) for c > 0."""
    if b == 0:
        return a // c
    r = math.isqrt(b * b * d)  # floor(|b| sqrt d), strict since d nonsquare
    fb = r if b > 0 else -r - 1
    # a + b sqrt d lies strictly inside (a + fb, a + fb + 1)
    return (a + fb) // c


@total_ordering
class Surd:
    """The number (a + b*sqrt(d)) / c, kept in lowest terms."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int = 0, d: int = 2, c: int = 1):
        if c == 0:
            raise ZeroDivisionError("zero denominator")
        if b and is_square(d):
            raise ValueError(f"d = {d} is a perfect square")
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(a, b), c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def rational(cls, q: Rational, d: int = 2) -> Surd:
        q = Fraction(q)
        return cls(q.numerator, 0, d, q.denominator)

    @classmethod
    def sqrt(cls, d: int) -> Surd:
        return cls(0, 1, d, 1)

    # -- coercion --
    def _coerce(self, other) -> Surd:
        if isinstance(other, Surd):
            if other.b and self.b and other.d != self.d:
                raise ValueError(f"cannot mix sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return Surd.rational(other, self.d)
        raise TypeError(f"cannot combine Surd with {type(other).__name__}")

    def _field(self, other: Surd) -> int:
        return self.d if self.b else other.d

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational_value(self) -> Fraction:
        if self.b:
            raise ValueError("irrational surd")
        return Fraction(self.a, self.c)

    # -- arithmetic --
    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return Surd(self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c, d, self.c * o.c)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d, self.c)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return Surd(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d, self.c * o.c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if o.a == 0 and o.b == 0:
            raise ZeroDivisionError("division by zero surd")
        d = self._field(o)
        # multiply by the conjugate: 1/(a + b r) = (a - b r) / (a^2 - b^2 d)
        norm = o.a * o.a - o.b * o.b * d
        num = Surd(o.c * o.a, -o.c * o.b, d, norm)
        return self * num

    # -- order --
    def sign(self) -> int:
        return sign_surd(self.a, self.b, self.d)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self - o).sign() == 0

    def __lt__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __floor__(self) -> int:
        return floor_surd(self.a, self.b, self.d, self.c)

    def floor(self) -> int:
        return floor_surd(self.a, self.b, self.d, self.c)

    def round_half_down(self) -> int:
        """The integer m with self - m in [-1/2, 1/2)."""
        return floor_surd(2 * self.a + self.c, 2 * self.b, self.d, 2 * self.c)

    def centered_mod1(self) -> Surd:
        """Representative of self mod 1 in [-1/2, 1/2)."""
        return self - self.round_half_down()

    def approx(self) -> float:
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    def __str__(self):
        if self.b == 0:
            return str(self.a) if self.c == 1 else f"{self.a}/{self.c}"
        return f"({self.a}+{self.b}*sqrt({self.d}))/{self.c}"

    def __repr__(self):
        return f"Surd({self})"


_SURD_RE = re.compile(r"^\((-?\d+)\+(-?\d+)\*sqrt\((\d+)\)\)/(\d+)$")


def parse_surd(text: str) -> Surd:
    """Inverse of ``str(Surd)``; also accepts 'sqrtD', 'sqrt(D)' and rationals."""
    s = text.replace(" ", "")
    m = _SURD_RE.match(s)
    if m:
        a, b, d, c = (int(g) for g in m.groups())
        return Surd(a, b, d, c)
    m = re.match(r"^(-?)sqrt\(?(\d+)\)?$", s)
    if m:
        return Surd(0, -1 if m.group(1) else 1, int(m.group(2)), 1)
    m = re.match(r"^\((-?\d+)([+-])sqrt\(?(\d+)\)?\)/(\d+)$", s)
    if m:
        return Surd(int(m.group(1)), 1 if m.group(2) == "+" else -1, int(m.group(3)), int(m.group(4)))
    return Surd.rational(Fraction(s))


def continued_fraction(x: Surd, terms: int) -> list[int]:
    """First ``terms`` partial quotients of x, computed exactly."""
    out = []
    for _ in range(terms):
        q = x.floor()
        out.append(q)
        frac = x - q
        if frac.sign() == 0:
            break
        x = Surd(1, 0, x.d) / frac
    return out
