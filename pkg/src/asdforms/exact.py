"""Exact arithmetic in Q and Q(i), with p-adic and Gaussian-prime valuations.

Rationals are plain :class:`fractions.Fraction` values. Valuations return an
``int``, or ``math.inf`` for zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

from sympy import isprime

INF = math.inf

Valuation = Union[int, float]


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            if value.real != int(value.real) or value.imag != int(value.imag):
                raise TypeError("only integral complex literals are exact")
            return cls(int(value.real), int(value.imag))
        if isinstance(value, (int, Rational)):
            return cls(value, 0)
        raise TypeError(f"cannot coerce {type(value).__name__} to GaussianRational")

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        # Most coefficients in this package are real; skip the zero products.
        if not b:
            if not d:
                return GaussianRational._raw(a * c, b)
            return GaussianRational._raw(a * c, a * d)
        if not d:
            return GaussianRational._raw(a * c, b * c)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero in Q(i)")
        if not other.im:
            return GaussianRational._raw(self.re / other.re, self.im / other.re)
        n = other.norm()
        return self * GaussianRational._raw(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return GaussianRational(1) / self**-exponent
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def is_gaussian_integer(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


I = GaussianRational(0, 1)


def ord_p(x, p: int) -> Valuation:
    """Exponent of the prime ``p`` in the rational ``x`` (``inf`` for zero)."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    x = Fraction(x)
    if not x:
        return INF
    return _int_ord(x.numerator, p) - _int_ord(x.denominator, p)


def _int_ord(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PlaceAboveP:
    """A prime of Z[i] over the odd rational prime ``p``.

    ``generator`` is ``(a, b)`` for ``a + b*i``. For split primes the
    representative satisfies ``a > |b| > 0``; for inert primes it is ``(p, 0)``.
    """

    p: int
    kind: str
    generator: tuple[int, int]

    @property
    def label(self) -> str:
        a, b = self.generator
        if b == 0:
            return str(a)
        mag = "" if abs(b) == 1 else str(abs(b))
        return f"{a}{'+' if b > 0 else '-'}{mag}i"

    def conjugate(self) -> "PlaceAboveP":
        a, b = self.generator
        return PlaceAboveP(self.p, self.kind, (a, -b))


@lru_cache(maxsize=None)
def places_above(p: int) -> tuple[PlaceAboveP, ...]:
    """Places of Q(i) dividing the odd prime ``p``, split ones ordered ``a+bi`` then ``a-bi``."""
    if p == 2:
        raise ValueError("p = 2 ramifies in Z[i] and is not supported")
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if p % 4 == 3:
        return (PlaceAboveP(p, "inert", (p, 0)),)
    for b in range(1, math.isqrt(p) + 1):
        a = math.isqrt(p - b * b)
        if a * a + b * b == p and a > b:
            return (PlaceAboveP(p, "split", (a, b)), PlaceAboveP(p, "split", (a, -b)))
    raise AssertionError(f"no two-square decomposition found for {p}")  # pragma: no cover


def gaussian_valuation(z, place: PlaceAboveP) -> Valuation:
    """Valuation of ``z`` at ``place``, normalised so that the generator has value 1.

    At an inert place this makes ``v(p) = 1``.
    """
    z = GaussianRational.coerce(z)
    if not z:
        return INF
    p = place.p
    if place.kind == "inert":
        return min(_frac_ord(z.re, p), _frac_ord(z.im, p))
    den = math.lcm(z.re.denominator, z.im.denominator)
    a = z.re.numerator * (den // z.re.denominator)
    b = z.im.numerator * (den // z.im.denominator)
    g1, g2 = place.generator
    v = 0
    # (a+bi)/(g1+g2 i) = (a+bi)(g1-g2 i)/p
    while True:
        re = a * g1 + b * g2
        im = b * g1 - a * g2
        if re % p or im % p:
            break
        a, b = re // p, im // p
        v += 1
    return v - _int_ord(den, p)


def _frac_ord(x: Fraction, p: int) -> Valuation:
    if not x:
        return INF
    return _int_ord(x.numerator, p) - _int_ord(x.denominator, p)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime ``p`` via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def integer_nth_root(n: int, k: int) -> int | None:
    """Exact ``k``-th root of a non-negative integer, or ``None``."""
    if n < 0:
        return None
    if n < 2:
        return n
    r = int(round(n ** (1.0 / k))) if n.bit_length() < 1000 else _newton_root(n, k)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**k == n:
            return c
    c = _newton_root(n, k)
    return c if c**k == n else None


def _newton_root(n: int, k: int) -> int:
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def rational_nth_root(x: Fraction, k: int) -> Fraction | None:
    """Positive real ``k``-th root of a positive rational when it is rational."""
    x = Fraction(x)
    if x <= 0:
        return None
    num = integer_nth_root(x.numerator, k)
    den = integer_nth_root(x.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)
