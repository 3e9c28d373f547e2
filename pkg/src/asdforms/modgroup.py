"""Exact 2x2 integer matrices: the congruence subgroups of level 5, the index 3
subgroup Gamma and the index 2 subgroup Gamma_2 given by generators, their
relations, coset representatives, cusps and widths.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Sequence, Union

Cusp = Union[Fraction, str]
INFINITY = "inf"


@dataclass(frozen=True)
class Matrix2Z:
    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: "Matrix2Z") -> "Matrix2Z":
        return Matrix2Z(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "Matrix2Z":
        return Matrix2Z(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, e: int) -> "Matrix2Z":
        base = self if e >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(e)):
            out = out @ base
        return out

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def inverse(self) -> "Matrix2Z":
        if self.det != 1:
            raise ValueError("only determinant 1 matrices are inverted")
        return Matrix2Z(self.d, -self.b, -self.c, self.a)

    def act(self, z: Cusp) -> Cusp:
        """Fractional linear action on P^1(Q)."""
        if z == INFINITY:
            return INFINITY if self.c == 0 else Fraction(self.a, self.c)
        num = self.a * z + self.b
        den = self.c * z + self.d
        return INFINITY if den == 0 else Fraction(num) / den

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = Matrix2Z(1, 0, 0, 1)
GAMMA = Matrix2Z(1, 5, 0, 1)
DELTA = Matrix2Z(1, 0, -1, 1)
A = Matrix2Z(-2, -5, 1, 2)
S = Matrix2Z(0, -1, 1, 0)

GENERATORS = {"g": GAMMA, "d": DELTA, "A": A}

Word = Sequence[tuple[str, int]]


def evaluate(word: Word) -> Matrix2Z:
    out = IDENTITY
    for name, e in word:
        out = out @ GENERATORS[name] ** e
    return out


def conj(outer: Word, inner: Word) -> list[tuple[str, int]]:
    """The word ``outer inner outer^{-1}``."""
    inverse = [(n, -e) for n, e in reversed(outer)]
    return [*outer, *inner, *inverse]


def _require_sl2(m: Matrix2Z) -> None:
    if m.det != 1:
        raise ValueError(f"{m} has determinant {m.det}")


def in_gamma0_5(m: Matrix2Z) -> bool:
    """``5 | b``."""
    _require_sl2(m)
    return m.b % 5 == 0


def in_gamma1_5(m: Matrix2Z) -> bool:
    """``5 | b`` and ``a = d = 1 mod 5``."""
    return in_gamma0_5(m) and m.a % 5 == 1 and m.d % 5 == 1


def in_pm_gamma1_5(m: Matrix2Z) -> bool:
    return in_gamma1_5(m) or in_gamma1_5(-m)


# ---------------------------------------------------------------------------
# named elements

W_GAMMA = [("g", 1)]
W_DELTA = [("d", 1)]
W_A_GAMMA = conj([("A", 1)], W_GAMMA)
W_A_DELTA = conj([("A", 1)], W_DELTA)

# Gamma^1(5) is free on these; phi is the index 3 quotient cutting out Gamma.
GAMMA1_GENERATORS = {"g": W_GAMMA, "d": W_DELTA, "AgA-": W_A_GAMMA, "AdA-": W_A_DELTA}
PHI = {"g": 1, "d": 0, "AgA-": -1, "AdA-": 0}

GAMMA1_RELATION = [*W_A_DELTA, *W_A_GAMMA, *W_DELTA, *W_GAMMA]



def gamma_generators() -> dict[str, list[tuple[str, int]]]:
    g3 = [("g", 3)]
    return {
        "g^3": g3,
        "d": W_DELTA,
        "A g^3 A^-1": conj([("A", 1)], g3),
        "A d A^-1": W_A_DELTA,
        "g d g^-1": conj(W_GAMMA, W_DELTA),
        "g A d A^-1 g^-1": conj(W_GAMMA, W_A_DELTA),
        "g^2 d g^-2": conj([("g", 2)], W_DELTA),
        "g^2 A d A^-1 g^-2": conj([("g", 2)], W_A_DELTA),
    }


def gamma_relation() -> list[tuple[str, int]]:
    gens = gamma_generators()
    order = ["A d A^-1", "A g^3 A^-1", "d", "g A d A^-1 g^-1", "g d g^-1", "g^2 A d A^-1 g^-2", "g^2 d g^-2", "g^3"]
    return [letter for name in order for letter in gens[name]]


def gamma2_generators() -> dict[str, list[tuple[str, int]]]:
    g2 = [("g", 2)]
    return {
        "g^2": g2,
        "d": W_DELTA,
        "A d A^-1": W_A_DELTA,
        "A g^2 A^-1": conj([("A", 1)], g2),
        "g d g^-1": conj(W_GAMMA, W_DELTA),
        "g A d A^-1 g^-1": conj(W_GAMMA, W_A_DELTA),
    }


def gamma2_relation(as_printed: bool = False) -> list[tuple[str, int]]:
    """The six-term relation for Gamma_2.

    The printed version writes the fourth factor as ``g A d A^-1``; the listed
    generator ``g A d A^-1 g^-1`` is what makes the product trivial.
    """
    gens = gamma2_generators()
    fourth = [*W_GAMMA, *W_A_DELTA] if as_printed else gens["g A d A^-1 g^-1"]
    return [*W_A_DELTA, *gens["A g^2 A^-1"], *W_DELTA, *fourth, *gens["g d g^-1"], *gens["g^2"]]


def verify_relation(word: Word) -> bool:
    return evaluate(word) == IDENTITY


# ---------------------------------------------------------------------------
# the character phi : Gamma^1(5) -> Z/3 on words in its free generators

GammaWord = Sequence[tuple[str, int]]


def phi(word: GammaWord, modulus: int = 3) -> int:
    """Image in Z/modulus of a word in the free generators of Gamma^1(5)."""
    return sum(PHI[name] * e for name, e in word) % modulus


def gamma_word_matrix(word: GammaWord) -> Matrix2Z:
    out = IDENTITY
    for name, e in word:
        out = out @ evaluate(GAMMA1_GENERATORS[name]) ** e
    return out


def in_gamma(word: GammaWord) -> bool:
    """Membership in Gamma of the Gamma^1(5) element spelled by ``word``."""
    if not in_gamma1_5(gamma_word_matrix(word)):
        raise ValueError("word does not lie in Gamma^1(5)")
    return phi(word) == 0


def in_gamma2(word: GammaWord) -> bool:
    if not in_gamma1_5(gamma_word_matrix(word)):
        raise ValueError("word does not lie in Gamma^1(5)")
    return phi(word, 2) == 0


# ---------------------------------------------------------------------------
# cosets


def sl2_mod(n: int) -> list[tuple[int, int, int, int]]:
    return [
        (a, b, c, d)
        for a, b, c, d in itertools.product(range(n), repeat=4)
        if (a * d - b * c) % n == 1
    ]


def index_in_sl2z(test: Callable[[Matrix2Z], bool], level: int = 5) -> int:
    """Index of a congruence subgroup of level ``level`` from its image in SL_2(Z/level)."""
    group = sl2_mod(level)
    members = 0
    for a, b, c, d in group:
        if test(_lift(a, b, c, d, level)):
            members += 1
    return len(group) // members


def _lift(a: int, b: int, c: int, d: int, n: int) -> Matrix2Z:
    """A matrix in SL_2(Z) reducing to the given one mod ``n`` (surjectivity of reduction)."""
    # make gcd(c, d) = 1 by shifting within residue classes
    if c == 0:
        c = n
    k = 0
    while gcd(c, d + k * n) != 1:
        k += 1
    d = d + k * n
    # solve a' d - b' c = 1 with a' = a, b' = b mod n
    det = a * d - b * c
    t = (det - 1) // n  # det = 1 mod n
    # adjust: a' = a - t u n, b' = b - t v n with u d - v c = 1
    u, v = _bezout(d, c)
    a2, b2 = a - t * u * n, b - t * v * n
    m = Matrix2Z(a2, b2, c, d)
    assert m.det == 1
    return m


def _bezout(d: int, c: int) -> tuple[int, int]:
    """``(u, v)`` with ``u d - v c = 1``."""
    g, x, y = _egcd(d, c)
    if abs(g) != 1:
        raise ValueError("not coprime")
    return x * g, -y * g


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0)
    g, x, y = _egcd(b, a % b)
    return (g, y, x - (a // b) * y)


def gamma0_5_reps() -> list[Matrix2Z]:
    return [Matrix2Z(1, i - 1, 0, 1) for i in range(1, 6)] + [S]


def pm_gamma1_5_reps() -> list[Matrix2Z]:
    reps = gamma0_5_reps()
    return reps + [A @ r for r in reps]


def verify_cosets(reps: Sequence[Matrix2Z], test: Callable[[Matrix2Z], bool], index: int | None = None) -> bool:
    """Pairwise inequivalence of ``reps`` mod the subgroup, and completeness when ``index`` is given."""
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            if test(r @ s.inverse()) != (i == j):
                return False
    return index is None or len(reps) == index


def verify_gamma_cosets() -> bool:
    """``{I, g, g^2}`` represent Gamma \\ Gamma^1(5)."""
    reps = [[("g", k)] for k in range(3)]
    for i, r in enumerate(reps):
        for j, s in enumerate(reps):
            word = [*r, *[(n, -e) for n, e in reversed(s)]]
            if in_gamma(word) != (i == j):
                return False
    return True


# ---------------------------------------------------------------------------
# cusps


def is_parabolic(m: Matrix2Z) -> bool:
    return abs(m.trace) == 2 and m not in (IDENTITY, -IDENTITY)


def stabilizer_check(cusp: Cusp, m: Matrix2Z) -> bool:
    _require_sl2(m)
    return m.act(cusp) == cusp and is_parabolic(m)


def cusp_to_infinity(cusp: Cusp) -> Matrix2Z:
    """Some ``g`` in SL_2(Z) with ``g(inf) = cusp``."""
    if cusp == INFINITY:
        return IDENTITY
    q = Fraction(cusp)
    a, c = q.numerator, q.denominator
    _, x, y = _egcd(a, c)  # a x + c y = 1
    return Matrix2Z(a, -y, c, x)


def width(cusp: Cusp, m: Matrix2Z) -> int:
    """``w`` with ``g^-1 m g = +-[[1, w], [0, 1]]`` for ``g(inf) = cusp``."""
    if not stabilizer_check(cusp, m):
        raise ValueError(f"{m} is not a parabolic element fixing {cusp}")
    g = cusp_to_infinity(cusp)
    n = g.inverse() @ m @ g
    if n.c != 0:  # pragma: no cover - guaranteed by the fixed point
        raise AssertionError("conjugate does not fix infinity")
    return abs(n.b)


def gamma_cusp_table() -> list[tuple[Cusp, int, str, Matrix2Z]]:
    """(cusp, width, generator name, generator) for the cusps of Gamma."""
    gens = gamma_generators()
    rows = [
        (INFINITY, "g^3"),
        (Fraction(-2), "A g^3 A^-1"),
        (Fraction(0), "d"),
        (Fraction(5), "g d g^-1"),
        (Fraction(10), "g^2 d g^-2"),
        (Fraction(-5, 2), "A d A^-1"),
        (Fraction(5, 2), "g A d A^-1 g^-1"),
        (Fraction(15, 2), "g^2 A d A^-1 g^-2"),
    ]
    out = []
    for cusp, name in rows:
        m = evaluate(gens[name])
        out.append((cusp, width(cusp, m), name, m))
    return out


def width_sum() -> int:
    return sum(row[1] for row in gamma_cusp_table())
