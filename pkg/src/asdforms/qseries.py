"""Truncated Puiseux series in q^(1/N) with coefficients in Q(i).

A series with ramification ``N`` and truncation ``T`` stores the coefficients
of ``q^(n/N)`` for ``offset <= n <= T``; everything from ``q^((T+1)/N)`` on is
unknown. Modular forms have ``offset = 0``; only quotients (the Hauptmodul)
carry a negative offset.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Iterable, Mapping

from .exact import GaussianRational, rational_nth_root

log = logging.getLogger(__name__)

_ZERO = GaussianRational(0)


class BranchError(ValueError):
    """The leading coefficient has no exact root in Q(i) on the chosen branch."""


class PuiseuxSeries:
    __slots__ = ("ramification", "truncation", "offset", "_coeffs")

    def __init__(
        self,
        coeffs: Mapping[int, object] | Iterable[tuple[int, object]] = (),
        ramification: int = 1,
        truncation: int = 0,
        offset: int = 0,
    ):
        if ramification < 1:
            raise ValueError("ramification must be a positive integer")
        if offset > 0:
            raise ValueError("offset must be <= 0")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        stored: dict[int, GaussianRational] = {}
        for n, c in items:
            n = int(n)
            if n < offset:
                raise ValueError(f"index {n} lies below the offset {offset}")
            if n > truncation:
                continue
            c = GaussianRational.coerce(c)
            if c:
                stored[n] = c
        self.ramification = ramification
        self.truncation = truncation
        self.offset = offset
        self._coeffs = dict(sorted(stored.items()))

    @classmethod
    def _make(cls, coeffs: dict[int, GaussianRational], ramification, truncation, offset):
        # Trusted constructor: keys sorted, values nonzero, within bounds.
        obj = object.__new__(cls)
        obj.ramification = ramification
        obj.truncation = truncation
        obj.offset = offset
        obj._coeffs = coeffs
        return obj

    @classmethod
    def monomial(cls, n: int, ramification: int, truncation: int, coeff=1) -> "PuiseuxSeries":
        return cls({n: coeff}, ramification, truncation, offset=min(0, n))

    @classmethod
    def one(cls, ramification: int, truncation: int) -> "PuiseuxSeries":
        return cls.monomial(0, ramification, truncation)

    # -- access ----------------------------------------------------------------

    def __getitem__(self, n: int) -> GaussianRational:
        if n > self.truncation:
            raise IndexError(f"coefficient {n} lies beyond truncation {self.truncation}")
        return self._coeffs.get(n, _ZERO)

    def items(self):
        """Nonzero ``(index, coefficient)`` pairs in increasing index order."""
        return self._coeffs.items()

    def exponent(self, n: int) -> Fraction:
        return Fraction(n, self.ramification)

    def valuation(self) -> int | None:
        """Index of the lowest nonzero known coefficient, ``None`` if all vanish."""
        return next(iter(self._coeffs), None)

    def _val_bound(self) -> int:
        v = self.valuation()
        return self.truncation + 1 if v is None else v

    def is_zero(self) -> bool:
        return not self._coeffs

    def __repr__(self):
        head = ", ".join(f"{n}: {c}" for n, c in list(self._coeffs.items())[:4])
        return (
            f"PuiseuxSeries(N={self.ramification}, T={self.truncation}, "
            f"offset={self.offset}, {{{head}{', ...' if len(self._coeffs) > 4 else ''}}})"
        )

    def __str__(self):
        terms = []
        for n, c in self._coeffs.items():
            e = self.exponent(n)
            terms.append(f"({c})*q^({e})")
        tail = f"O(q^({self.exponent(self.truncation + 1)}))"
        return " + ".join(terms + [tail])

    # -- structure -------------------------------------------------------------

    def rescale(self, d: int) -> "PuiseuxSeries":
        """Same series written in q^(1/(N*d)); index n becomes n*d."""
        if d < 1:
            raise ValueError("rescaling factor must be positive")
        if d == 1:
            return self
        coeffs = {n * d: c for n, c in self._coeffs.items()}
        return PuiseuxSeries._make(
            coeffs, self.ramification * d, (self.truncation + 1) * d - 1, self.offset * d
        )

    def with_ramification(self, ramification: int) -> "PuiseuxSeries":
        if ramification % self.ramification:
            raise ValueError(f"cannot write q^(1/{self.ramification}) series in q^(1/{ramification})")
        return self.rescale(ramification // self.ramification)

    def truncate(self, truncation: int) -> "PuiseuxSeries":
        if truncation > self.truncation:
            raise ValueError("cannot raise the truncation of a series")
        coeffs = {n: c for n, c in self._coeffs.items() if n <= truncation}
        return PuiseuxSeries._make(coeffs, self.ramification, truncation, self.offset)

    def shift(self, k: int) -> "PuiseuxSeries":
        """Multiply by q^(k/N) exactly."""
        coeffs = {n + k: c for n, c in self._coeffs.items()}
        return PuiseuxSeries._make(
            coeffs, self.ramification, self.truncation + k, min(0, self.offset + k)
        )

    def conjugate(self) -> "PuiseuxSeries":
        coeffs = {n: c.conjugate() for n, c in self._coeffs.items()}
        return PuiseuxSeries._make(coeffs, self.ramification, self.truncation, self.offset)

    def map_coefficients(self, fn) -> "PuiseuxSeries":
        return PuiseuxSeries(
            {n: fn(c) for n, c in self._coeffs.items()},
            self.ramification,
            self.truncation,
            self.offset,
        )

    def scale(self, c) -> "PuiseuxSeries":
        c = GaussianRational.coerce(c)
        if not c:
            return PuiseuxSeries._make({}, self.ramification, self.truncation, self.offset)
        coeffs = {n: v * c for n, v in self._coeffs.items()}
        return PuiseuxSeries._make(coeffs, self.ramification, self.truncation, self.offset)

    def matches(self, other: "PuiseuxSeries") -> bool:
        """Coefficient-wise equality up to the smaller truncation."""
        a, b = _common(self, other)
        t = min(a.truncation, b.truncation)
        lo = min(a.offset, b.offset)
        return all(a[n] == b[n] for n in range(lo, t + 1))

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = PuiseuxSeries.one(self.ramification, self.truncation).scale(other)
        a, b = _common(self, other)
        t = min(a.truncation, b.truncation)
        out = {n: c for n, c in a._coeffs.items() if n <= t}
        for n, c in b._coeffs.items():
            if n > t:
                break
            s = out.get(n, _ZERO) + c
            if s:
                out[n] = s
            else:
                out.pop(n, None)
        return PuiseuxSeries._make(
            dict(sorted(out.items())), a.ramification, t, min(a.offset, b.offset)
        )

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return self + (-GaussianRational.coerce(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PuiseuxSeries):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = _common(self, other)
        va, vb = a._val_bound(), b._val_bound()
        t = min(a.truncation, b.truncation, a.truncation + vb, b.truncation + va)
        out: dict[int, GaussianRational] = {}
        b_items = list(b._coeffs.items())
        for i, x in a._coeffs.items():
            for j, y in b_items:
                k = i + j
                if k > t:
                    break
                prev = out.get(k)
                out[k] = x * y if prev is None else prev + x * y
        coeffs = {k: c for k, c in sorted(out.items()) if c}
        return PuiseuxSeries._make(coeffs, a.ramification, t, min(0, a.offset + b.offset))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PuiseuxSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = PuiseuxSeries.one(self.ramification, self.truncation)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "PuiseuxSeries":
        lead = self.valuation()
        if lead is None:
            raise ZeroDivisionError("series is zero to its known precision")
        c = self._coeffs[lead]
        unit, g = self._unit_part(lead, c)
        inv = _invert_unit(unit)
        known = self.truncation - lead
        coeffs = {g * k - lead: v / c for k, v in enumerate(inv) if v and g * k <= known}
        return PuiseuxSeries._make(coeffs, self.ramification, known - lead, min(0, -lead))

    def __truediv__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return self.scale(GaussianRational(1) / GaussianRational.coerce(other))
        return self * other.inverse()

    def nth_root(self, n: int) -> "PuiseuxSeries":
        """The ``n``-th root whose leading coefficient is the positive real root.

        When the leading exponent is not divisible by ``n`` the ramification is
        extended by the least factor that makes it so.
        """
        if n < 1:
            raise ValueError("root order must be positive")
        lead = self.valuation()
        if lead is None:
            raise ZeroDivisionError("series is zero to its known precision")
        c = self._coeffs[lead]
        if not c.is_real():
            raise BranchError(f"leading coefficient {c} is not a positive rational")
        root_c = rational_nth_root(c.re, n)
        if root_c is None:
            raise BranchError(f"leading coefficient {c} is not an exact {n}-th power")
        unit, g = self._unit_part(lead, c)
        root = _root_unit(unit, n)
        known = self.truncation - lead
        d = n // math.gcd(lead, n)
        if d > 1:
            log.info("nth_root: ramification extended by %d to %d", d, self.ramification * d)
        new_lead = lead * d // n
        rc = GaussianRational(root_c)
        coeffs = {
            new_lead + g * k * d: v * rc for k, v in enumerate(root) if v and g * k <= known
        }
        truncation = d * (known + 1) - 1 + new_lead
        return PuiseuxSeries._make(coeffs, self.ramification * d, truncation, min(0, new_lead))

    def _unit_part(self, lead: int, c: GaussianRational):
        """Coefficients of self / (c q^(lead/N)) compressed by their index gcd."""
        known = self.truncation - lead
        raw = {n - lead: v for n, v in self._coeffs.items() if n - lead <= known}
        g = 0
        for k in raw:
            g = math.gcd(g, k)
        g = g or known + 1 or 1
        size = known // g + 1
        unit = [_ZERO] * size
        inv_c = GaussianRational(1) / c
        for k, v in raw.items():
            unit[k // g] = v * inv_c
        return unit, g

    # -- serialization ---------------------------------------------------------

    def to_rows(self) -> list[tuple[int, int, int, int, int]]:
        """``(n, re_num, re_den, im_num, im_den)`` for each nonzero coefficient."""
        return [
            (n, c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator)
            for n, c in self._coeffs.items()
        ]

    @classmethod
    def from_rows(cls, rows, ramification: int, truncation: int, offset: int = 0):
        coeffs = {
            int(n): GaussianRational(Fraction(int(rn), int(rd)), Fraction(int(im), int(idn)))
            for n, rn, rd, im, idn in rows
        }
        return cls(coeffs, ramification, truncation, offset)


def _common(a: PuiseuxSeries, b: PuiseuxSeries) -> tuple[PuiseuxSeries, PuiseuxSeries]:
    if a.ramification == b.ramification:
        return a, b
    n = math.lcm(a.ramification, b.ramification)
    return a.with_ramification(n), b.with_ramification(n)


def _invert_unit(u: list[GaussianRational]) -> list[GaussianRational]:
    # u[0] == 1
    w = [GaussianRational(1)]
    for k in range(1, len(u)):
        acc = _ZERO
        for j in range(1, k + 1):
            if u[j]:
                acc = acc + u[j] * w[k - j]
        w.append(-acc)
    return w


def _root_unit(u: list[GaussianRational], n: int) -> list[GaussianRational]:
    # r = u^(1/n) with r[0] = 1, from n*u*r' = u'*r:
    # r_k = sum_{j=1..k} (j(n+1) - kn) u_j r_{k-j} / (kn)
    r = [GaussianRational(1)]
    for k in range(1, len(u)):
        acc = _ZERO
        for j in range(1, k + 1):
            if u[j]:
                acc = acc + u[j] * r[k - j] * (j * (n + 1) - k * n)
        r.append(acc / (k * n))
    return r
