import random
from fractions import Fraction

import pytest

from asdforms.modgroup import (
    A,
    DELTA,
    GAMMA,
    GAMMA1_RELATION,
    IDENTITY,
    INFINITY,
    S,
    Matrix2Z,
    evaluate,
    gamma0_5_reps,
    gamma2_generators,
    gamma2_relation,
    gamma_cusp_table,
    gamma_generators,
    gamma_relation,
    in_gamma,
    in_gamma0_5,
    in_gamma1_5,
    in_gamma2,
    in_pm_gamma1_5,
    index_in_sl2z,
    phi,
    pm_gamma1_5_reps,
    stabilizer_check,
    verify_cosets,
    verify_gamma_cosets,
    verify_relation,
    width,
    width_sum,
)
from asdforms.surface import G1515, euler_number

T = Matrix2Z(1, 1, 0, 1)


def random_sl2z(rng, length=12):
    m = IDENTITY
    for _ in range(length):
        m = m @ rng.choice([S, T, T.inverse()])
    return m


def test_memberships():
    assert in_gamma1_5(GAMMA) and in_gamma1_5(DELTA)
    assert in_gamma0_5(A) and not in_pm_gamma1_5(A)
    assert A @ A == -IDENTITY
    with pytest.raises(ValueError):
        in_gamma0_5(Matrix2Z(2, 0, 0, 1))


def test_relations():
    assert verify_relation(GAMMA1_RELATION)
    assert verify_relation(gamma_relation())
    assert verify_relation(gamma2_relation())


def test_printed_gamma2_relation_does_not_close():
    m = evaluate(gamma2_relation(as_printed=True))
    assert m != IDENTITY
    assert m == Matrix2Z(21, 80, -5, -19)


def test_generators_lie_in_gamma1():
    for gens in (gamma_generators(), gamma2_generators()):
        for word in gens.values():
            assert in_gamma1_5(evaluate(word))


def test_phi_on_generators():
    # g^3 and the conjugates of d by g^k lie in Gamma; g and g^2 do not
    assert in_gamma([("g", 3)]) and not in_gamma([("g", 1)]) and not in_gamma([("g", 2)])
    assert in_gamma([("g", 1), ("d", 1), ("g", -1)])
    assert in_gamma([("AgA-", 1), ("g", 1)])
    assert in_gamma2([("g", 2)]) and not in_gamma2([("g", 1)])
    assert phi([("g", 5)]) == 2


def test_indices():
    assert index_in_sl2z(in_gamma0_5) == 6
    assert index_in_sl2z(in_pm_gamma1_5) == 12
    assert index_in_sl2z(in_gamma1_5) == 24


def test_cosets():
    assert verify_cosets(gamma0_5_reps(), in_gamma0_5, index=6)
    assert verify_cosets(pm_gamma1_5_reps(), in_pm_gamma1_5, index=12)
    assert verify_gamma_cosets()
    assert not verify_cosets(gamma0_5_reps()[:5] + [IDENTITY], in_gamma0_5)


@pytest.mark.parametrize("reps, test", [(gamma0_5_reps(), in_gamma0_5), (pm_gamma1_5_reps(), in_pm_gamma1_5)])
def test_random_elements_fall_in_one_coset(reps, test):
    rng = random.Random(5)
    for _ in range(300):
        m = random_sl2z(rng)
        assert sum(test(m @ r.inverse()) for r in reps) == 1


def test_stabilizers():
    gens = gamma_generators()
    assert stabilizer_check(INFINITY, evaluate(gens["g^3"]))
    assert width(INFINITY, evaluate(gens["g^3"])) == 15
    assert stabilizer_check(Fraction(-2), evaluate(gens["A g^3 A^-1"]))
    assert width(Fraction(15, 2), evaluate(gens["g^2 A d A^-1 g^-2"])) == 1
    with pytest.raises(ValueError):
        width(Fraction(1), evaluate(gens["g^3"]))


def test_cusp_table_and_euler_number():
    table = gamma_cusp_table()
    assert [w for _, w, _, _ in table] == [15, 15, 1, 1, 1, 1, 1, 1]
    assert width_sum() == 36 == euler_number(G1515)
    # widths add up to the index of Gamma in PSL_2(Z): 3 * 12
    assert width_sum() == 3 * index_in_sl2z(in_pm_gamma1_5)
