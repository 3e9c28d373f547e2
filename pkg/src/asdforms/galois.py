"""Finite Galois-theoretic data: inert primes in quadratic fields, Frobenius
cycle types from factorisation mod p, and reductions of H'_p modulo (1+i).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from sympy import Poly, discriminant, isprime, primerange, symbols
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_ddf_zassenhaus, gf_diff, gf_factor_sqf, gf_from_int_poly, gf_gcd, gf_monic, gf_mul
from sympy.polys.numberfields.basis import round_two

from .charpoly import FrobeniusData
from .exact import legendre

x = symbols("x")

# The quadratic fields unramified outside 2 and 3.
QUADRATIC_RADICANDS = (2, 3, 6, -1, -2, -3, -6)
# For each radicand above, a small prime inert in Q(sqrt d).
INERT_PRIMES = (5, 5, 11, 7, 5, 5, 17)

QUARTICS = {
    "x^4-4x-3": x**4 - 4 * x - 3,
    "x^4-8x+6": x**4 - 8 * x + 6,
    "x^4-12x^2-16x+12": x**4 - 12 * x**2 - 16 * x + 12,
}
# As printed, with the claimed exponent of 2.
QUARTIC_TABLE = {
    "x^4-4x-3": (-(2**9) * 3**3, (13, 17, 19, 23)),
    "x^4-8x+6": (-(2**13) * 3**3, (13, 17)),
    "x^4-12x^2-16x+12": (-(2**13) * 3**3, (19, 23)),
}
K6_CUBIC = x**3 + 3 * x - 2


class RamifiedPrimeError(ValueError):
    """The prime ramifies, so it has no well-defined Frobenius class here."""


def is_inert_quadratic(d: int, p: int) -> bool:
    """Whether the odd prime ``p`` stays prime in Q(sqrt d)."""
    if p == 2 or not isprime(p):
        raise ValueError(f"{p} is not an odd prime")
    if (2 * d) % p == 0:
        raise RamifiedPrimeError(f"{p} ramifies in Q(sqrt {d})")
    inert = legendre(d, p) == -1
    # second route: x^2 - d stays irreducible mod p
    irreducible = factor_mod_p(PolynomialModP.from_int_coeffs([1, 0, -d], p)).parts == (2,)
    if inert != irreducible:
        raise AssertionError(f"Euler criterion and factorisation disagree for d={d}, p={p}")
    return inert


@dataclass(frozen=True)
class PolynomialModP:
    """Coefficients in Z/p, leading coefficient first."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] % self.p == 0:
            raise ValueError("leading coefficient must be nonzero mod p")

    @classmethod
    def from_int_coeffs(cls, coeffs, p: int) -> "PolynomialModP":
        return cls(p, tuple(gf_from_int_poly(list(coeffs), p)))

    @classmethod
    def from_expr(cls, expr, p: int) -> "PolynomialModP":
        return cls.from_int_coeffs([int(c) for c in Poly(expr, x).all_coeffs()], p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_squarefree(self) -> bool:
        f = list(self.coeffs)
        return len(gf_gcd(f, gf_diff(f, self.p, ZZ), self.p, ZZ)) == 1


@dataclass(frozen=True)
class FrobeniusCycleType:
    parts: tuple[int, ...]

    @property
    def order(self) -> int:
        from math import lcm

        return lcm(*self.parts)


def factor_mod_p(f: PolynomialModP) -> FrobeniusCycleType:
    """Degrees of the irreducible factors of a squarefree reduction."""
    if not f.is_squarefree():
        raise RamifiedPrimeError(f"reduction mod {f.p} is not squarefree")
    monic = gf_monic(list(f.coeffs), f.p, ZZ)[1]
    parts = []
    for g, d in gf_ddf_zassenhaus(monic, f.p, ZZ):
        parts.extend([d] * ((len(g) - 1) // d))
    return FrobeniusCycleType(tuple(sorted(parts, reverse=True)))


def irreducible_factors(f: PolynomialModP) -> list[tuple[int, ...]]:
    """Monic irreducible factors; their product is the monic reduction of ``f``."""
    monic = gf_monic(list(f.coeffs), f.p, ZZ)[1]
    return [tuple(int(c) for c in g) for g in gf_factor_sqf(monic, f.p, ZZ)[1]]


def reconstructs(f: PolynomialModP) -> bool:
    prod = [1]
    for g in irreducible_factors(f):
        prod = gf_mul(prod, list(g), f.p, ZZ)
    return prod == gf_monic(list(f.coeffs), f.p, ZZ)[1]


def cycle_type(expr, p: int) -> FrobeniusCycleType:
    return factor_mod_p(PolynomialModP.from_expr(expr, p))


def polynomial_discriminant(expr) -> int:
    return int(discriminant(expr, x))


def field_discriminant(expr) -> int:
    """Discriminant of the ring of integers of Q[x]/(f), via the round-two algorithm."""
    _, d_k = round_two(Poly(expr, x, domain="ZZ"))
    return int(d_k)


def mod_lambda_charpoly(data: FrobeniusData) -> tuple[int, int, int]:
    """H'_p reduced modulo (1+i): ``(1, beta mod (1+i), 1)`` over F_2."""
    if data.beta is None:
        raise ValueError(f"H'_{data.p} is not attached")
    beta = data.beta
    if not beta.is_gaussian_integer():
        raise ValueError("beta must be a Gaussian integer")
    # Z[i]/(1+i) = F_2 sends a+bi to a+b mod 2
    return (1, int(beta.re + beta.im) % 2, data.delta % 2)


def order_from_charpoly_f2(charpoly: tuple[int, int, int]) -> str:
    """Possible orders in GL_2(F_2) = S_3 with this characteristic polynomial."""
    return "3" if charpoly == (1, 1, 1) else "1 or 2"


@dataclass(frozen=True)
class QuarticRow:
    label: str
    polynomial_discriminant: int
    field_discriminant: int
    order4_primes: tuple[int, ...]
    ramified: tuple[int, ...]


def deviation_probe(quartics=None, primes=None) -> list[QuarticRow]:
    """Order-4 Frobenius primes for each quartic, skipping 2, 3 and ramified primes."""
    quartics = QUARTICS if quartics is None else quartics
    primes = list(primerange(5, 24)) if primes is None else primes
    rows = []
    for label, f in quartics.items():
        order4, ramified = [], []
        for p in primes:
            if p in (2, 3):
                continue
            try:
                ct = cycle_type(f, p)
            except RamifiedPrimeError:
                ramified.append(p)
                continue
            if ct.order >= 4:
                order4.append(p)
        rows.append(
            QuarticRow(label, polynomial_discriminant(f), field_discriminant(f), tuple(order4), tuple(ramified))
        )
    return rows


def s3_probe(table: list[FrobeniusData], radicands=QUADRATIC_RADICANDS[:-1]) -> dict[int, tuple[int, ...]]:
    """Primes with odd H'_p trace (order 3 mod 2) that are inert in Q(sqrt d), per d."""
    odd = [row.p for row in table if row.beta is not None and mod_lambda_charpoly(row)[1] == 1]
    return {d: tuple(p for p in odd if (2 * d) % p and is_inert_quadratic(d, p)) for d in radicands}


def inertness_septuple() -> list[tuple[int, int, bool]]:
    return [(d, p, is_inert_quadratic(d, p)) for d, p in zip(QUADRATIC_RADICANDS, INERT_PRIMES)]


def cycle_type_histogram(expr, primes) -> Counter:
    return Counter(cycle_type(expr, p).parts for p in primes)
