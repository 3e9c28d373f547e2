"""Weight 3 Eisenstein series for Gamma^1(5) and the cusp forms built from them.

Everything is computed from the integral closed-form divisor sums; the
transcendental L-value constants never enter.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .exact import GaussianRational, I, legendre
from .qseries import PuiseuxSeries

DEFAULT_TRUNCATION = 400

# chi_3 is determined by chi_3(2) = i; 2 generates (Z/5)^*.
_LOG2_MOD5 = {1: 0, 2: 1, 4: 2, 3: 3}
_I_POWERS = (GaussianRational(1), I, GaussianRational(-1), -I)


@dataclass(frozen=True)
class CharacterMod5:
    """The Dirichlet character chi_3**power of conductor dividing 5."""

    label: str
    power: int

    def __call__(self, n: int) -> GaussianRational:
        r = n % 5
        if r == 0:
            return GaussianRational(0)
        return _I_POWERS[(self.power * _LOG2_MOD5[r]) % 4]

    @property
    def values(self) -> dict[int, GaussianRational]:
        return {r: self(r) for r in range(1, 5)}


CHI1 = CharacterMod5("chi1", 0)
CHI2 = CharacterMod5("chi2", 2)
CHI3 = CharacterMod5("chi3", 1)
CHI4 = CharacterMod5("chi4", 3)


@dataclass(frozen=True)
class QuadraticCharacter:
    """Kronecker character of Q(sqrt(d)).

    ``d`` is a squarefree radicand, or -4 as the usual label for Q(i).
    """

    d: int

    @property
    def discriminant(self) -> int:
        if self.d == -4:
            return -4
        return self.d if self.d % 4 == 1 else 4 * self.d

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ValueError("quadratic characters are evaluated at positive integers")
        disc = self.discriminant
        value = 1
        while n % 2 == 0:
            n //= 2
            if disc % 2 == 0:
                return 0
            value *= 1 if disc % 8 in (1, 7) else -1
        p = 3
        while n > 1:
            if p * p > n:
                p = n
            while n % p == 0:
                n //= p
                value *= legendre(disc, p)
            if value == 0:
                return 0
            p += 2
        return value


CHI_MINUS3 = QuadraticCharacter(-3)
CHI_MINUS4 = QuadraticCharacter(-4)


def _divisor_sums(truncation: int) -> tuple[list[GaussianRational], list[GaussianRational]]:
    """For each l <= truncation: sum nu^2 (chi3+chi4)(nu) and sum nu^2 (chi3-chi4)(nu) over nu | l."""
    plus = [[0, 0] for _ in range(truncation + 1)]
    minus = [[0, 0] for _ in range(truncation + 1)]
    for nu in range(1, truncation + 1):
        c3, c4 = CHI3(nu), CHI4(nu)
        s, d = c3 + c4, c3 - c4
        w = nu * nu
        sp = (int(s.re) * w, int(s.im) * w)
        sm = (int(d.re) * w, int(d.im) * w)
        for ell in range(nu, truncation + 1, nu):
            plus[ell][0] += sp[0]
            plus[ell][1] += sp[1]
            minus[ell][0] += sm[0]
            minus[ell][1] += sm[1]
    return (
        [GaussianRational(a, b) for a, b in plus],
        [GaussianRational(a, b) for a, b in minus],
    )


@lru_cache(maxsize=8)
def eisenstein_E1(truncation: int) -> PuiseuxSeries:
    """E_1 in q^(1/5): value 1 at infinity, vanishing at the other cusps of Gamma^1(5)."""
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    plus, minus = _divisor_sums(truncation)
    coeffs = {0: GaussianRational(1)}
    for ell in range(1, truncation + 1):
        coeffs[ell] = -(plus[ell] * 2 - I * minus[ell]) / 2
    return PuiseuxSeries(coeffs, 5, truncation)


@lru_cache(maxsize=8)
def eisenstein_E2(truncation: int) -> PuiseuxSeries:
    """E_2 = E_1 | A^{-1} in q^(1/5): value -1 at the cusp -2, zero at infinity."""
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    plus, minus = _divisor_sums(truncation)
    coeffs = {}
    for ell in range(1, truncation + 1):
        coeffs[ell] = (plus[ell] + I * minus[ell] * 2) / 2
    return PuiseuxSeries(coeffs, 5, truncation)


class CuspForms(NamedTuple):
    f1: PuiseuxSeries
    f2: PuiseuxSeries
    f_plus: PuiseuxSeries
    f_minus: PuiseuxSeries


@lru_cache(maxsize=4)
def cusp_forms_gamma(truncation: int = DEFAULT_TRUNCATION) -> CuspForms:
    """The basis f1, f2 of S_3(Gamma) and the A-eigenforms f+- = f1 +- i f2 in q^(1/15)."""
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    t5 = truncation // 3 + 2
    e1, e2 = eisenstein_E1(t5), eisenstein_E2(t5)
    f1 = (e1 * e1 * e2).nth_root(3).truncate(truncation)
    f2 = (e1 * e2 * e2).nth_root(3).truncate(truncation)
    i_f2 = f2.scale(I)
    return CuspForms(f1, f2, f1 + i_f2, f1 - i_f2)


@lru_cache(maxsize=4)
def cusp_form_gamma2(truncation: int = DEFAULT_TRUNCATION) -> PuiseuxSeries:
    """h_2 = sqrt(E_1 E_2), spanning S_3(Gamma_2), in q^(1/10)."""
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    t5 = truncation // 2 + 1
    return (eisenstein_E1(t5) * eisenstein_E2(t5)).nth_root(2).truncate(truncation)


@lru_cache(maxsize=4)
def hauptmodul(truncation: int = DEFAULT_TRUNCATION) -> PuiseuxSeries:
    """t = f1/f2, with a simple pole q^(-1/15) at infinity."""
    forms = cusp_forms_gamma(truncation + 4)
    return (forms.f1 / forms.f2).truncate(truncation)
