"""Weierstrass families over Q(t): discriminant, j, fibre types, torsion and
Frobenius traces from point counts over F_p and F_{p^2}.

The traces are ``-sum_{t in P^1(F_q)} (1 + q - #E_t(F_q))``. Singular fibres
contribute the point count of the singular cubic itself.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Protocol

import numpy as np
from sympy import Poly, QQ, Rational, Symbol, cancel, factor_list, gcd, symbols

log = logging.getLogger(__name__)

t = Symbol("t")
INFINITY = "inf"


class BadCharacteristicError(ValueError):
    """Point counting was requested in characteristic 2 or 3."""


class UnsupportedFiberError(ValueError):
    """An additive singular fibre was found; only I_n fibres are handled."""


# ---------------------------------------------------------------------------
# the families


@dataclass(frozen=True)
class WeierstrassFamily:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` with ``a_i`` in Z[t]."""

    family_id: str
    a1: Poly
    a2: Poly
    a3: Poly
    a4: Poly
    a6: Poly
    # The fibre at t = inf is isomorphic to the one at t = 0 via t -> -1/t.
    infinity_via_involution: bool = False

    @classmethod
    def from_exprs(cls, family_id, a1, a2, a3, a4, a6, **kw) -> "WeierstrassFamily":
        polys = [Poly(a, t, domain="ZZ") for a in (a1, a2, a3, a4, a6)]
        return cls(family_id, *polys, **kw)

    @property
    def a(self) -> tuple[Poly, Poly, Poly, Poly, Poly]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self) -> Poly:
        return self.a1**2 + 4 * self.a2

    @property
    def b4(self) -> Poly:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> Poly:
        return self.a3**2 + 4 * self.a6

    @property
    def b8(self) -> Poly:
        return (self.b2 * self.b6 - self.b4**2).exquo_ground(4)

    @property
    def c4(self) -> Poly:
        return self.b2**2 - 24 * self.b4

    @property
    def c6(self) -> Poly:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6


G1515 = WeierstrassFamily.from_exprs(
    "g1515", 1 - t**3, -(t**3), -(t**3), 0, 0, infinity_via_involution=True
)
G2 = WeierstrassFamily.from_exprs("g2", 1 - t**2, -(t**2), -(t**2), 0, 0)

FAMILIES = {f.family_id: f for f in (G1515, G2)}


def get_family(family_id: str) -> WeierstrassFamily:
    try:
        return FAMILIES[family_id]
    except KeyError:
        raise ValueError(f"unknown family {family_id!r}; choose from {sorted(FAMILIES)}") from None


# ---------------------------------------------------------------------------
# exact algebra


def discriminant_poly(family: WeierstrassFamily) -> Poly:
    b2, b4, b6, b8 = family.b2, family.b4, family.b6, family.b8
    return -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6


def j_invariant(family: WeierstrassFamily) -> tuple[Poly, Poly]:
    """``j = c4^3 / Delta`` in lowest terms, denominator with positive leading coefficient."""
    num = family.c4**3
    den = discriminant_poly(family)
    g = gcd(num, den)
    num, den = num.exquo(g), den.exquo(g)
    if den.LC() < 0:
        num, den = -num, -den
    return num, den


def j_expr(family: WeierstrassFamily):
    num, den = j_invariant(family)
    return num.as_expr() / den.as_expr()


def _chart_degree(family: WeierstrassFamily) -> int:
    """Least k with deg a_i <= i*k, so ``s^{ik} a_i(1/s)`` is integral at s = 0."""
    weights = (1, 2, 3, 4, 6)
    k = 0
    for w, a in zip(weights, family.a):
        if not a.is_zero:
            k = max(k, -(-a.degree() // w))
    return k


@dataclass(frozen=True)
class SingularFiber:
    place: str
    multiplicity: int

    @property
    def kodaira_type(self) -> str:
        return f"I{self.multiplicity}"


def kodaira_multiplicities(family: WeierstrassFamily) -> list[SingularFiber]:
    """I_n fibres with their multiplicities, one entry per geometric point."""
    delta = discriminant_poly(family)
    c4 = family.c4
    fibers: list[SingularFiber] = []
    _, factors = factor_list(delta.as_expr(), t)
    for factor, mult in sorted(factors, key=lambda fe: (Poly(fe[0], t).degree(), str(fe[0]))):
        fpoly = Poly(factor, t)
        if not gcd(fpoly, c4).is_ground:
            raise UnsupportedFiberError(f"additive fibre over {factor} = 0")
        deg = fpoly.degree()
        if deg == 1:
            fibers.append(SingularFiber(f"{factor}=0", mult))
        else:
            fibers.extend(SingularFiber(f"{factor}=0 #{k + 1}", mult) for k in range(deg))
    k = _chart_degree(family)
    ord_delta_inf = 12 * k - delta.degree()
    ord_c4_inf = 4 * k - c4.degree()
    if ord_delta_inf > 0:
        if ord_c4_inf > 0:
            raise UnsupportedFiberError("additive fibre at t = inf")
        fibers.append(SingularFiber("inf", ord_delta_inf))
    return fibers


def euler_number(family: WeierstrassFamily) -> int:
    return sum(f.multiplicity for f in kodaira_multiplicities(family))


# ---------------------------------------------------------------------------
# group law over Q(t)

_K = QQ.frac_field(t)


def _on_curve(family, x, y) -> bool:
    a1, a2, a3, a4, a6 = (_K.from_sympy(a.as_expr()) for a in family.a)
    return y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6) == _K.zero


def _add(family, P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, _ = (_K.from_sympy(a.as_expr()) for a in family.a)
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == _K.zero:
            return None
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return (x3, y3)


def torsion_order_check(family: WeierstrassFamily, point=(0, 0), max_order: int = 64) -> int:
    """Least k with kP = O on the generic fibre, by chord and tangent over Q(t)."""
    P = (_K.from_sympy(point[0]), _K.from_sympy(point[1]))
    if not _on_curve(family, *P):
        raise ValueError(f"{point} is not on the generic fibre of {family.family_id}")
    Q = P
    for k in range(2, max_order + 1):
        Q = _add(family, Q, P)
        if Q is None:
            return k
    raise ValueError(f"no torsion order <= {max_order}")


# ---------------------------------------------------------------------------
# the involution t -> -1/t on the g1515 family

_X, _Y = symbols("X Y")


def _g1515_equation(x, y):
    return y**2 + (1 - t**3) * x * y - t**3 * y - x**3 + t**3 * x**2


def _change_of_variables():
    r = Rational
    x = t**3 * _X - r(1, 12) * t**6 + r(1, 2) * t**3 - r(1, 12)
    y = (
        t**4 * _Y
        + r(1, 2) * t**6 * _X
        - r(1, 2) * t**3 * _X
        - r(1, 24) * t**9
        + r(7, 24) * t**6
        + r(5, 24) * t**3
        + r(1, 24)
    )
    return x, y


def model_1515_2():
    """``Y^2 - t(X^3 + A(t) X + B(t))``, the model on which the involution is visible."""
    a = -(1 + 12 * t**3 + 14 * t**6 - 12 * t**9 + t**12) / (48 * t**6)
    b = (1 + 18 * t**3 + 75 * t**6 + 75 * t**12 - 18 * t**15 + t**18) / (864 * t**9)
    return _Y**2 - t * (_X**3 + a * _X + b)


def _is_unit_monomial(expr) -> bool:
    num, den = cancel(expr).as_numer_denom()
    return all(len(Poly(part, t).terms()) == 1 for part in (num, den))


def involution_report() -> dict[str, bool]:
    """Each identity behind the symmetry ``t -> -1/t, X -> -X, Y -> Y/t``."""
    model = model_1515_2()
    x, y = _change_of_variables()
    changed = cancel(_g1515_equation(x, y) / model)
    moved = model.subs({t: -1 / t, _X: -_X, _Y: _Y / t}, simultaneous=True)
    j = j_expr(G1515)
    return {
        "change_of_variables": _is_unit_monomial(changed),
        "model_invariant": _is_unit_monomial(cancel(moved / model)),
        "involution_on_base": cancel(-1 / (-1 / t) - t) == 0,
        "j_invariant_symmetric": cancel(j.subs(t, -1 / t) - j) == 0,
    }


def involution_check() -> bool:
    return all(involution_report().values())


# ---------------------------------------------------------------------------
# finite fields F_p and F_{p^2} = F_p(s), s^2 = least non-residue


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            return n
    raise ValueError(f"no non-residue mod {p}")


@dataclass(frozen=True)
class FiniteField:
    p: int
    degree: int

    def __post_init__(self):
        if self.degree not in (1, 2):
            raise ValueError("only F_p and F_{p^2} are supported")
        if self.p in (2, 3):
            raise BadCharacteristicError(f"characteristic {self.p} is excluded")

    @property
    def q(self) -> int:
        return self.p**self.degree

    @property
    def nonresidue(self) -> int:
        return least_nonresidue(self.p)

    def __call__(self, a: int, b: int = 0) -> "FiniteFieldElement":
        if self.degree == 1 and b % self.p:
            raise ValueError("F_p elements have no s-coordinate")
        return FiniteFieldElement(self, a % self.p, b % self.p)

    def elements(self) -> Iterable["FiniteFieldElement"]:
        bs = range(self.p) if self.degree == 2 else (0,)
        for b in bs:
            for a in range(self.p):
                yield FiniteFieldElement(self, a, b)


@dataclass(frozen=True)
class FiniteFieldElement:
    field: FiniteField
    a: int
    b: int = 0

    def _lift(self, other) -> "FiniteFieldElement":
        if isinstance(other, FiniteFieldElement):
            return other
        return self.field(int(other))

    def __add__(self, other):
        o = self._lift(other)
        p = self.field.p
        return FiniteFieldElement(self.field, (self.a + o.a) % p, (self.b + o.b) % p)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FiniteFieldElement(self.field, -self.a % p, -self.b % p)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        p, n = self.field.p, self.field.nonresidue
        return FiniteFieldElement(
            self.field, (self.a * o.a + n * self.b * o.b) % p, (self.a * o.b + self.b * o.a) % p
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** -e
        result, base = self.field(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.a or self.b)

    def inverse(self) -> "FiniteFieldElement":
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        p, n = self.field.p, self.field.nonresidue
        norm = (self.a * self.a - n * self.b * self.b) % p
        inv = pow(norm, -1, p)
        return FiniteFieldElement(self.field, self.a * inv % p, -self.b * inv % p)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def frobenius(self) -> "FiniteFieldElement":
        return self ** self.field.p

    def is_square(self) -> bool:
        return not self or self ** ((self.field.q - 1) // 2) == self.field(1)

    def quadratic_character(self) -> int:
        if not self:
            return 0
        return 1 if self.is_square() else -1

    @property
    def encoding(self) -> str:
        return f"{self.a},{self.b}"


# ---------------------------------------------------------------------------
# point counting


@dataclass(frozen=True)
class FiberCount:
    t: str
    count: int


def split_prime_power(q: int) -> tuple[int, int]:
    from sympy import factorint

    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, r), = f.items()
    if r not in (1, 2):
        raise ValueError(f"only q = p or p^2 is supported, got {p}^{r}")
    if p in (2, 3):
        raise BadCharacteristicError(f"characteristic {p} is excluded")
    return p, r


def _coeff_lists(family: WeierstrassFamily) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(c) for c in a.all_coeffs()) if not a.is_zero else (0,) for a in family.a)


def _fiber_coefficients(family: WeierstrassFamily, t_value) -> list:
    """The specialised ``a_i`` at a point of P^1 (``INFINITY`` or a field element)."""
    if t_value == INFINITY:
        raise AssertionError("handled by the caller")
    out = []
    for coeffs in _coeff_lists(family):
        acc = t_value.field(0)
        for c in coeffs:
            acc = acc * t_value + c
        out.append(acc)
    return out


def _infinity_coefficients(family: WeierstrassFamily, field: FiniteField) -> list:
    """``a_i`` of the chart ``s = 1/t`` at ``s = 0``: the coefficient of ``t^{i k}``."""
    k = _chart_degree(family)
    out = []
    for w, a in zip((1, 2, 3, 4, 6), family.a):
        out.append(field(int(a.coeff_monomial(t ** (w * k)))))
    return out


def _resolve_t(family: WeierstrassFamily, field: FiniteField, t_value):
    """Return the specialised a-invariants, following the involution at infinity."""
    if t_value == INFINITY:
        if family.infinity_via_involution:
            return _fiber_coefficients(family, field(0))
        return _infinity_coefficients(family, field)
    if not isinstance(t_value, FiniteFieldElement):
        t_value = field(*t_value) if isinstance(t_value, tuple) else field(int(t_value))
    return _fiber_coefficients(family, t_value)


def count_fiber(family: WeierstrassFamily, q: int, t_value) -> FiberCount:
    """#E_t(F_q) including the point at infinity, by a quadratic character per x."""
    p, r = split_prime_power(q)
    field = FiniteField(p, r)
    a1, a2, a3, a4, a6 = _resolve_t(family, field, t_value)
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    total = 1
    for x in field.elements():
        f = 4 * x * x * x + b2 * x * x + 2 * b4 * x + b6
        total += 1 + f.quadratic_character()
    enc = t_value if t_value == INFINITY else _encode(field, t_value)
    return FiberCount(enc, total)


def _encode(field: FiniteField, t_value) -> str:
    if isinstance(t_value, FiniteFieldElement):
        return t_value.encoding
    if isinstance(t_value, tuple):
        return field(*t_value).encoding
    return field(int(t_value)).encoding


class CountCache(Protocol):
    def lookup(self, family_id: str, q: int, t: str) -> int | None: ...

    def append(self, family_id: str, q: int, t: str, count: int) -> None: ...


class _Vectorised:
    """All x in F_q at once, as numpy coordinate arrays."""

    def __init__(self, field: FiniteField):
        p, n = field.p, field.nonresidue
        self.p, self.n, self.q = p, n, field.q
        idx = np.arange(self.q, dtype=np.int64)
        self.xa, self.xb = idx % p, idx // p
        x2 = self._mul(self.xa, self.xb, self.xa, self.xb)
        x3 = self._mul(*x2, self.xa, self.xb)
        self.x2, self.x3 = x2, x3
        sq = self._mul(self.xa, self.xb, self.xa, self.xb)
        chi = np.full(self.q, -1, dtype=np.int64)
        chi[sq[0] + p * sq[1]] = 1
        chi[0] = 0
        self.chi = chi

    def _mul(self, a, b, c, d):
        p = self.p
        return ((a * c + self.n * b * d) % p, (a * d + b * c) % p)

    def character_sum(self, b2, b4, b6) -> int:
        """sum over x of chi(4x^3 + b2 x^2 + 2 b4 x + b6)."""
        p = self.p
        fa = 4 * self.x3[0] + b2.a * self.x2[0] + self.n * b2.b * self.x2[1]
        fb = 4 * self.x3[1] + b2.a * self.x2[1] + b2.b * self.x2[0]
        fa = fa + 2 * (b4.a * self.xa + self.n * b4.b * self.xb) + b6.a
        fb = fb + 2 * (b4.a * self.xb + b4.b * self.xa) + b6.b
        return int(self.chi[(fa % p) + p * (fb % p)].sum())


def projective_line(field: FiniteField) -> list:
    return [*field.elements(), INFINITY]


def fiber_counts(family: WeierstrassFamily, q: int, cache: CountCache | None = None) -> list[FiberCount]:
    """Counts for every t in P^1(F_q), consulting and filling ``cache``."""
    p, r = split_prime_power(q)
    field = FiniteField(p, r)
    vec = None
    out = []
    for t_value in projective_line(field):
        enc = INFINITY if t_value == INFINITY else t_value.encoding
        count = cache.lookup(family.family_id, q, enc) if cache is not None else None
        if count is None:
            if vec is None:
                vec = _Vectorised(field)
            a1, a2, a3, a4, a6 = _resolve_t(family, field, t_value)
            s = vec.character_sum(a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6)
            count = 1 + q + s
            if cache is not None:
                cache.append(family.family_id, q, enc, count)
        out.append(FiberCount(enc, count))
    return out


def frobenius_trace(family: WeierstrassFamily, q: int, cache: CountCache | None = None) -> int:
    """``-sum (1 + q - #E_t(F_q))`` over P^1(F_q)."""
    return -sum(1 + q - fc.count for fc in fiber_counts(family, q, cache))


def smooth_fiber(family: WeierstrassFamily, q: int, t_value) -> bool:
    p, r = split_prime_power(q)
    field = FiniteField(p, r)
    a1, a2, a3, a4, a6 = _resolve_t(family, field, t_value)
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return bool(disc)


def hasse_violations(family: WeierstrassFamily, q: int, cache: CountCache | None = None) -> list[FiberCount]:
    """Smooth fibres with ``(1 + q - count)^2 > 4q``; empty when the bound holds everywhere."""
    p, r = split_prime_power(q)
    field = FiniteField(p, r)
    bad = []
    for fc in fiber_counts(family, q, cache):
        t_value = INFINITY if fc.t == INFINITY else field(*map(int, fc.t.split(",")))
        if smooth_fiber(family, q, t_value) and (1 + q - fc.count) ** 2 > 4 * q:
            bad.append(fc)
    return bad


def bound_violations(family: WeierstrassFamily, q: int, cache: CountCache | None = None) -> list[FiberCount]:
    """Fibres breaking Hasse (smooth) or ``count in {q, q+1, q+2}`` (nodal or cuspidal)."""
    p, r = split_prime_power(q)
    field = FiniteField(p, r)
    bad = []
    for fc in fiber_counts(family, q, cache):
        t_value = INFINITY if fc.t == INFINITY else field(*map(int, fc.t.split(",")))
        if smooth_fiber(family, q, t_value):
            ok = (1 + q - fc.count) ** 2 <= 4 * q
        else:
            ok = q <= fc.count <= q + 2
        if not ok:
            bad.append(fc)
    return bad


def hasse_bound(q: int) -> float:
    return 2 * math.sqrt(q)
