import math

import pytest
from sympy import Poly, cancel

from asdforms import surface
from asdforms.surface import (
    G1515,
    G2,
    INFINITY,
    BadCharacteristicError,
    FiniteField,
    WeierstrassFamily,
    count_fiber,
    discriminant_poly,
    euler_number,
    fiber_counts,
    frobenius_trace,
    get_family,
    hasse_violations,
    involution_check,
    involution_report,
    j_invariant,
    kodaira_multiplicities,
    smooth_fiber,
    t,
    torsion_order_check,
)

from oracles import brute_force_count, point_order_over_q

TR_P = {5: 0, 7: 10, 11: 0, 13: -20, 17: 0, 19: -32, 23: 0, 29: 0, 31: -2}


def specialise(family, value):
    return [int(a.eval(value)) if not a.is_zero else 0 for a in family.a]


def test_discriminant_g1515():
    delta = discriminant_poly(G1515)
    target = Poly(t**15 * (t**6 - 11 * t**3 - 1), t)
    ratio = cancel(delta.as_expr() / target.as_expr())
    assert ratio.is_number and ratio != 0


def test_weierstrass_identity():
    for fam in (G1515, G2):
        assert fam.c4**3 - fam.c6**2 == 1728 * discriminant_poly(fam)


def test_j_invariant_g1515():
    num, den = j_invariant(G1515)
    assert num == Poly((t**12 - 12 * t**9 + 14 * t**6 + 12 * t**3 + 1) ** 3, t)
    assert den == Poly(t**15 * (t**6 - 11 * t**3 - 1), t)


def test_kodaira_g1515():
    fibers = kodaira_multiplicities(G1515)
    mult = {f.place: f.multiplicity for f in fibers}
    assert mult["t=0"] == 15 and mult["inf"] == 15
    assert sorted(f.multiplicity for f in fibers) == [1] * 6 + [15, 15]
    assert euler_number(G1515) == 36
    assert {f.kodaira_type for f in fibers} == {"I1", "I15"}


def test_kodaira_g2():
    fibers = kodaira_multiplicities(G2)
    assert sorted(f.multiplicity for f in fibers) == [1] * 4 + [10, 10]
    assert {f.place: f.multiplicity for f in fibers}["inf"] == 10
    assert euler_number(G2) == 24


def test_multiplicities_sum_to_degree_plus_infinity():
    for fam in (G1515, G2):
        fibers = kodaira_multiplicities(fam)
        finite = sum(f.multiplicity for f in fibers if f.place != "inf")
        assert finite == discriminant_poly(fam).degree()


@pytest.mark.parametrize("fam", [G1515, G2])
def test_torsion_order_five(fam):
    assert torsion_order_check(fam) == 5
    # oracle: specialise to rational t and run the group law on plain Fractions
    for value in (2, -3, 5):
        assert point_order_over_q(specialise(fam, value), (0, 0)) == 5


def test_torsion_rejects_point_off_curve():
    with pytest.raises(ValueError):
        torsion_order_check(G1515, point=(1, 1))


def test_involution():
    report = involution_report()
    assert report == {
        "change_of_variables": True,
        "model_invariant": True,
        "involution_on_base": True,
        "j_invariant_symmetric": True,
    }
    assert involution_check()


@pytest.mark.parametrize("q", [5, 7, 25])
@pytest.mark.parametrize("value", [1, 2, 4])
def test_count_matches_brute_force(q, value):
    p = 5 if q in (5, 25) else 7
    r = 2 if q == 25 else 1
    for fam in (G1515, G2):
        a = specialise(fam, value)
        assert count_fiber(fam, q, value).count == brute_force_count(a, p, r)


def test_vectorised_matches_scalar():
    for q in (7, 25):
        field = FiniteField(*surface.split_prime_power(q))
        scalar = [count_fiber(G1515, q, x).count for x in surface.projective_line(field)]
        assert [fc.count for fc in fiber_counts(G1515, q)] == scalar


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_infinity_chart_agrees_with_involution(p):
    chart = WeierstrassFamily("chart", *G1515.a, infinity_via_involution=False)
    for q in (p, p * p):
        assert count_fiber(chart, q, INFINITY).count == count_fiber(G1515, q, INFINITY).count
        assert count_fiber(G1515, q, INFINITY).count == count_fiber(G1515, q, 0).count


def test_singular_fiber_bound():
    assert count_fiber(G1515, 7, 0).count in (7, 8, 9)
    assert not smooth_fiber(G1515, 7, 0)


def test_printed_traces():
    for p, tr in TR_P.items():
        assert frobenius_trace(G1515, p) == tr
    assert frobenius_trace(G1515, 25) == 82
    assert frobenius_trace(G1515, 23 * 23) == 1828


def test_trace_vanishes_for_p_2_mod_3():
    for p in (5, 11, 17, 23, 29, 41, 47):
        assert frobenius_trace(G1515, p) == 0


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_hasse(p):
    for q in (p, p * p):
        assert hasse_violations(G1515, q) == []
        assert hasse_violations(G2, q) == []


@pytest.mark.parametrize("p", [5, 7, 13])
def test_frobenius_fixed_points(p):
    # for a smooth fibre over F_p: #E(F_p^2) = p^2 + 1 - (a^2 - 2p), a = p + 1 - #E(F_p)
    for value in range(p):
        if not smooth_fiber(G1515, p, value):
            continue
        a = p + 1 - count_fiber(G1515, p, value).count
        assert count_fiber(G1515, p * p, value).count == p * p + 1 - (a * a - 2 * p)


def test_trace_parity():
    for p in (5, 7, 11, 13):
        assert (frobenius_trace(G1515, p) - frobenius_trace(G1515, p * p)) % 2 == 0


def test_field_arithmetic():
    F = FiniteField(7, 2)
    s = F(0, 1)
    assert s * s == F(F.nonresidue)
    for x in F.elements():
        if x:
            assert x * x.inverse() == F(1)
        assert x.frobenius().frobenius() == x
    assert sum(1 for x in F.elements() if x.is_square()) == (49 + 1) // 2


def test_bad_characteristic():
    for q in (2, 3, 9):
        with pytest.raises(BadCharacteristicError):
            count_fiber(G1515, q, 0)
    with pytest.raises(ValueError):
        count_fiber(G1515, 125, 0)


def test_get_family():
    assert get_family("g2") is G2
    with pytest.raises(ValueError):
        get_family("nope")


def test_hasse_bound_value():
    assert surface.hasse_bound(25) == 10
    assert math.isclose(surface.hasse_bound(7), 2 * math.sqrt(7))


def test_bound_violations_cover_singular_fibres():
    assert surface.bound_violations(G1515, 7) == []

    class Poisoned:
        def lookup(self, family_id, q, t):
            return 99 if t == "0,0" else None

        def append(self, *args):
            pass

    bad = surface.bound_violations(G1515, 7, Poisoned())
    assert [fc.t for fc in bad] == ["0,0"]
