"""Atkin and Swinnerton-Dyer congruences, checked place by place.

For a weight 3 form ``f`` with coefficients ``a_n`` (indexed in units of the
cusp width) and a prime ``p``, the three-term relation asks that

    a_{np} - b_p a_n + chi(p) p^2 a_{n/p}

be divisible by ``(np)^2`` at every place of Q(i) above ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import isprime

from .charpoly import FrobeniusData, IntegrityError, NewformCoefficients
from .exact import GaussianRational, Valuation, gaussian_valuation, ord_p, places_above
from .qseries import PuiseuxSeries

WEIGHT = 3


class CoverageError(ValueError):
    """The series is too short for the requested range of n."""

    def __init__(self, message: str, tested: list[int]):
        super().__init__(message)
        self.tested = tested


class SignAmbiguityError(RuntimeError):
    """Both candidate b_p pass every probe."""

    def __init__(self, p: int, n_probe: int):
        self.p = p
        self.n_probe = n_probe
        super().__init__(f"both signs of b_{p} pass all probes up to n = {n_probe}; enlarge n_probe")


@dataclass(frozen=True)
class CongruenceRecord:
    n: int
    place: str
    required: int
    achieved: Valuation
    value: GaussianRational

    @property
    def passed(self) -> bool:
        return self.achieved >= self.required


@dataclass
class CongruenceReport:
    form: str
    newform: str
    p: int
    records: list[CongruenceRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> list[CongruenceRecord]:
        return [r for r in self.records if not r.passed]


def required_valuation(n: int, p: int) -> int:
    return (WEIGHT - 1) * (1 + ord_p(n, p))


def _check_prime(p: int) -> None:
    if p == 2 or not isprime(p):
        raise ValueError(f"p = {p} must be an odd prime")


def _max_n(f: PuiseuxSeries, p: int, reach: int, n_max: int | None) -> int:
    """Largest n whose combination stays within the truncation of ``f``."""
    available = f.truncation // reach
    if n_max is None:
        return available
    if n_max > available:
        raise CoverageError(
            f"truncation {f.truncation} covers n <= {available} at p = {p}, not {n_max}",
            list(range(1, available + 1)),
        )
    return n_max


def _audit(values: dict[int, GaussianRational], p: int) -> list[CongruenceRecord]:
    records = []
    for place in places_above(p):
        for n, value in values.items():
            records.append(
                CongruenceRecord(n, place.label, required_valuation(n, p), gaussian_valuation(value, place), value)
            )
    records.sort(key=lambda r: (r.n, r.place))
    return records


def three_term_values(
    f: PuiseuxSeries, b_p: GaussianRational, chi_p: int, p: int, n_max: int | None = None
) -> dict[int, GaussianRational]:
    """``a_{np} - b_p a_n + chi(p) p^2 a_{n/p}`` for n = 1..n_max."""
    n_max = _max_n(f, p, p, n_max)
    b_p = GaussianRational.coerce(b_p)
    twist = chi_p * p ** (WEIGHT - 1)
    out = {}
    for n in range(1, n_max + 1):
        value = f[n * p] - b_p * f[n]
        if n % p == 0:
            value = value + f[n // p] * twist
        out[n] = value
    return out


def asd_congruence(
    f: PuiseuxSeries,
    g: NewformCoefficients,
    p: int,
    n_max: int | None = None,
    m: int = 1,
    form_label: str = "f",
) -> CongruenceReport:
    """Check the three-term congruence between ``f`` and the eigenform ``g`` at ``p``.

    ``m`` is the integer away from which ``f`` is integral; primes dividing
    ``m`` or the level of ``g`` are rejected.
    """
    _check_prime(p)
    if m % p == 0 or g.level % p == 0:
        raise ValueError(f"p = {p} divides M*N = {m}*{g.level}")
    values = three_term_values(f, g.prime_value(p), g.character(p), p, n_max)
    return CongruenceReport(form_label, g.label, p, _audit(values, p))


def scholl_congruence(
    f: PuiseuxSeries, data: FrobeniusData, n_max: int | None = 1, form_label: str = "f"
) -> CongruenceReport:
    """The five-term congruence built from H_p = T^4 - C1 T^3 + C2 T^2 - p^2 C1 T + p^4."""
    p = data.p
    _check_prime(p)
    if n_max is not None and n_max < 1:
        raise ValueError("n ranges over positive integers")
    n_max = _max_n(f, p, p * p, n_max)
    p2 = p * p
    values = {}
    for n in range(1, n_max + 1):
        value = f[n * p2] - f[n * p] * data.c1 + f[n] * data.c2
        if n % p == 0:
            value = value - f[n // p] * (p2 * data.c1)
        if n % p2 == 0:
            value = value + f[n // p2] * (p2 * p2)
        values[n] = value
    return CongruenceReport(form_label, f"H_{p}", p, _audit(values, p))


def resolve_sign(
    f_plus: PuiseuxSeries,
    f_minus: PuiseuxSeries,
    p: int,
    candidates,
    n_probe: int | None = None,
    chi_p: int = -1,
) -> GaussianRational:
    """The candidate b_p for which f+ satisfies the three-term congruence.

    The conjugate candidate must then work for f-; this is checked too.
    ``chi_p`` is chi_{-3}(p), which is -1 for the primes needing resolution.
    """
    _check_prime(p)
    passing = []
    for beta in candidates:
        values = three_term_values(f_plus, beta, chi_p, p, n_probe)
        if all(r.passed for r in _audit(values, p)):
            passing.append(GaussianRational.coerce(beta))
    if len(passing) > 1:
        raise SignAmbiguityError(p, n_probe if n_probe is not None else f_plus.truncation // p)
    if not passing:
        raise IntegrityError(f"no candidate b_{p} satisfies the congruence for f+")
    beta = passing[0]
    mirror = three_term_values(f_minus, beta.conjugate(), chi_p, p, n_probe)
    if not all(r.passed for r in _audit(mirror, p)):
        raise IntegrityError(f"conj(b_{p}) fails the congruence for f-")
    return beta
