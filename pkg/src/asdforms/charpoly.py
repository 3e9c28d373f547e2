"""Characteristic polynomials of Frobenius from point counts, their factorisation
over Q(i), and Hecke eigenform coefficient sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from sympy import factorint, isprime

from .exact import GaussianRational, I
from .modforms import CHI_MINUS3, CHI_MINUS4, QuadraticCharacter
from .surface import G1515, G2, WeierstrassFamily, frobenius_trace


class IntegrityError(RuntimeError):
    """Computed data contradicts an identity it must satisfy."""


class FactorizationError(ValueError):
    """H_p does not split over Z[i] in the expected shape."""


class SignPendingError(RuntimeError):
    """b_p is known only up to sign; congruence data is needed to decide."""

    def __init__(self, p: int, candidates):
        self.p = p
        self.candidates = tuple(candidates)
        super().__init__(f"sign of b_{p} unresolved among {', '.join(map(str, self.candidates))}")


@dataclass(frozen=True)
class FrobeniusData:
    p: int
    tr_p: int
    tr_p2: int
    c1: int
    c2: int
    beta: GaussianRational | None = None
    sign_resolved: bool = False

    @property
    def hp(self) -> tuple[int, int, int, int, int]:
        """Coefficients of T^4, T^3, ..., T^0."""
        p2 = self.p * self.p
        return (1, -self.c1, self.c2, -p2 * self.c1, p2 * p2)

    @property
    def delta(self) -> int:
        return CHI_MINUS3(self.p) * self.p**2

    @property
    def hp_prime(self) -> tuple[GaussianRational, GaussianRational, GaussianRational] | None:
        if self.beta is None:
            return None
        return (GaussianRational(1), -self.beta, GaussianRational(self.delta))

    def is_weil(self) -> bool:
        """All roots of H_p have absolute value p.

        With u = T + p^2/T, H_p = T^2 Q(u) for Q(u) = u^2 - c1 u + (c2 - 2p^2),
        so the condition is that Q has both roots real in [-2p, 2p].
        """
        p = self.p
        q0 = self.c2 - 2 * p * p
        disc = self.c1 * self.c1 - 4 * q0

        def Q(u):
            return u * u - self.c1 * u + q0

        return disc >= 0 and abs(self.c1) <= 4 * p and Q(2 * p) >= 0 and Q(-2 * p) >= 0


def build_frobenius_data(p: int, family: WeierstrassFamily = G1515, cache=None) -> FrobeniusData:
    if p in (2, 3) or not isprime(p):
        raise ValueError(f"p = {p} is not an admissible prime")
    tr_p = frobenius_trace(family, p, cache)
    tr_p2 = frobenius_trace(family, p * p, cache)
    return frobenius_data_from_traces(p, tr_p, tr_p2)


def frobenius_data_from_traces(p: int, tr_p: int, tr_p2: int) -> FrobeniusData:
    twice_c2 = tr_p * tr_p - tr_p2
    if twice_c2 % 2:
        raise IntegrityError(f"Tr_p^2 - Tr_p2 = {twice_c2} is odd at p = {p}")
    data = FrobeniusData(p, tr_p, tr_p2, tr_p, twice_c2 // 2)
    if not data.is_weil():
        raise IntegrityError(f"H_{p} has a root off the circle |T| = {p}")
    return data


def factor_over_qi(data: FrobeniusData) -> tuple[GaussianRational, ...]:
    """Traces beta of the factors T^2 - beta T + delta with delta = chi_{-3}(p) p^2.

    Expanding H'_p conj(H'_p) gives 2 Re(beta) = c1, delta c1 = p^2 c1 and
    |beta|^2 = c2 - 2 delta.
    """
    p, c1, c2, delta = data.p, data.c1, data.c2, data.delta
    if c1 % 2 or delta * c1 != p * p * c1:
        raise FactorizationError(f"H_{p} admits no factor with constant term {delta}")
    re = c1 // 2
    im2 = c2 - 2 * delta - re * re
    im = math.isqrt(im2) if im2 >= 0 else -1
    if im < 0 or im * im != im2:
        raise FactorizationError(f"Im(beta)^2 = {im2} is not a square at p = {p}")
    candidates = {GaussianRational(re, im), GaussianRational(re, -im)}
    out = tuple(sorted(candidates, key=lambda b: (b.re, -b.im)))
    for beta in out:
        if _times_conjugate(beta, delta) != data.hp:
            raise IntegrityError(f"H'_{p} conj(H'_{p}) != H_{p} for beta = {beta}")
    return out


def _times_conjugate(beta: GaussianRational, delta: int) -> tuple[int, ...]:
    a = (GaussianRational(1), -beta, GaussianRational(delta))
    b = tuple(c.conjugate() for c in a)
    prod = [GaussianRational(0)] * 5
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = prod[i + j] + x * y
    if any(c.im or c.re.denominator != 1 for c in prod):
        raise IntegrityError("H'_p conj(H'_p) is not an integer polynomial")
    return tuple(int(c.re) for c in prod)


def with_beta(data: FrobeniusData, beta: GaussianRational, resolved: bool = True) -> FrobeniusData:
    if beta not in factor_over_qi(data):
        raise ValueError(f"{beta} is not a root trace of H_{data.p}")
    return replace(data, beta=beta, sign_resolved=resolved)


def attach_factorization(data: FrobeniusData) -> FrobeniusData:
    """Record beta when it is unique; leave the sign pending otherwise."""
    candidates = factor_over_qi(data)
    if len(candidates) == 1:
        return replace(data, beta=candidates[0], sign_resolved=True)
    return data


# ---------------------------------------------------------------------------
# polynomial display


def format_polynomial(coeffs, symbol_i: str = "A") -> str:
    """Leading-first coefficients as ``T^4 - 10T^3 + ...``, writing ``i`` as ``symbol_i``."""
    deg = len(coeffs) - 1
    parts = []
    for k, c in enumerate(coeffs):
        c = GaussianRational.coerce(c)
        if not c:
            continue
        if c.re and c.im:
            sign, mag = "+", "(" + str(c).replace("i", symbol_i) + ")"
        elif c.im:
            sign, mag = ("-" if c.im < 0 else "+"), str(abs(c.im))
            mag = symbol_i if mag == "1" else mag + symbol_i
        else:
            sign, mag = ("-" if c.re < 0 else "+"), str(abs(c.re))
        power = deg - k
        mono = "" if power == 0 else ("T" if power == 1 else f"T^{power}")
        if mono and mag == "1":
            mag = ""
        parts.append((sign, mag + mono))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return out + "".join(f" {sign} {term}" for sign, term in parts[1:])


# ---------------------------------------------------------------------------
# newforms


@dataclass
class NewformCoefficients:
    label: str
    level: int
    character: QuadraticCharacter
    prime_values: dict[int, GaussianRational]
    weight: int = 3
    coeffs: dict[int, GaussianRational] = field(default_factory=dict)

    def prime_value(self, p: int) -> GaussianRational:
        try:
            return self.prime_values[p]
        except KeyError:
            raise KeyError(f"b_{p} of {self.label} is not known") from None

    def _prime_power(self, p: int, r: int) -> GaussianRational:
        bp = self.prime_value(p)
        if self.level % p == 0:
            return bp**r
        chi = self.character(p) * p ** (self.weight - 1)
        prev, cur = GaussianRational(1), bp
        for _ in range(r - 1):
            prev, cur = cur, bp * cur - prev * chi
        return cur

    def coefficient(self, n: int) -> GaussianRational:
        if n < 1:
            raise ValueError("coefficients are indexed from 1")
        if n not in self.coeffs:
            value = GaussianRational(1)
            for p, r in factorint(n).items():
                value = value * self._prime_power(p, r)
            self.coeffs[n] = value
        return self.coeffs[n]

    def coefficients(self, upto: int) -> dict[int, GaussianRational]:
        return {n: self.coefficient(n) for n in range(1, upto + 1)}

    def conjugate(self, label: str) -> "NewformCoefficients":
        return NewformCoefficients(
            label,
            self.level,
            self.character,
            {p: b.conjugate() for p, b in self.prime_values.items()},
            self.weight,
        )


def _g_a(a: GaussianRational, label: str) -> NewformCoefficients:
    # b_p read off the printed expansion of g_a, a^2 = -9
    one = GaussianRational(1)
    values = {
        2: a,
        3: 0 * one,
        5: -a,
        7: 5 * one,
        11: -5 * a,
        13: -10 * one,
        17: 6 * a,
        19: -16 * one,
        23: -4 * a,
        29: 10 * a,
        31: -one,
    }
    return NewformCoefficients(label, 27, CHI_MINUS3, values)


def newform_from_paper(label: str) -> NewformCoefficients:
    if label == "g+":
        return _g_a(-3 * I, "g+")
    if label == "g-":
        return _g_a(3 * I, "g-")
    if label == "g2":
        values = {p: GaussianRational(0) for p in (2, 3, 7, 11, 19, 23, 31)}
        values.update({5: GaussianRational(-6), 13: GaussianRational(10), 17: GaussianRational(-30), 29: GaussianRational(42)})
        return NewformCoefficients("g2", 16, CHI_MINUS4, values)
    raise ValueError(f"unknown newform {label!r}; expected g+, g- or g2")


NEWFORM_LEVELS = {"g+": 27, "g-": 27, "g2": 16}


def newform_from_counting(label: str, p: int, forms=None, cache=None, n_probe: int | None = None) -> GaussianRational:
    """b_p of the newform from point counts on the matching surface.

    For g+- at p = 2 mod 3 the sign is decided by the congruence with f+-, which
    must be supplied as ``forms = (f_plus, f_minus)``.
    """
    if label not in NEWFORM_LEVELS:
        raise ValueError(f"unknown newform {label!r}")
    if p in (2, 3) or NEWFORM_LEVELS[label] % p == 0:
        raise ValueError(f"p = {p} is not admissible for {label}")
    if label == "g2":
        return GaussianRational(frobenius_trace(G2, p, cache))
    data = build_frobenius_data(p, G1515, cache)
    candidates = factor_over_qi(data)
    if len(candidates) == 1:
        return candidates[0]
    if forms is None:
        raise SignPendingError(p, candidates)
    from .asd import resolve_sign

    plus = resolve_sign(forms[0], forms[1], p, candidates, n_probe)
    return plus if label == "g+" else plus.conjugate()


def frobenius_table(primes, cache=None, forms=None) -> list[FrobeniusData]:
    """Table rows for ``primes``, with beta attached where unique or resolved by ``forms``."""
    rows = []
    for p in primes:
        data = attach_factorization(build_frobenius_data(p, G1515, cache))
        if data.beta is None and forms is not None:
            from .asd import resolve_sign

            data = with_beta(data, resolve_sign(forms[0], forms[1], p, factor_over_qi(data)))
        rows.append(data)
    return rows


def c2_identity(data: FrobeniusData) -> Fraction:
    """(C1^2 - Tr_{p^2})/2, the value C2 is defined by."""
    return Fraction(data.c1 * data.c1 - data.tr_p2, 2)
