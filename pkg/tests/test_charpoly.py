import pytest

from asdforms.charpoly import (
    FactorizationError,
    FrobeniusData,
    IntegrityError,
    SignPendingError,
    attach_factorization,
    build_frobenius_data,
    c2_identity,
    factor_over_qi,
    format_polynomial,
    frobenius_data_from_traces,
    frobenius_table,
    newform_from_counting,
    newform_from_paper,
    with_beta,
)
from asdforms.exact import GaussianRational as G
from asdforms.exact import I
from asdforms.surface import G2, frobenius_trace

PRIMES = (5, 7, 11, 13, 17, 19, 23, 29, 31)

# H_p as printed in the first table
H_P = {
    5: "T^4 - 41T^2 + 625",
    7: "T^4 - 10T^3 + 123T^2 - 490T + 2401",
    11: "T^4 - 17T^2 + 14641",
    13: f"T^4 + 20T^3 + 438T^2 + {20 * 13**2}T + {13**4}",
    17: f"T^4 - 254T^2 + {17**4}",
    19: f"T^4 + 32T^3 + 978T^2 + {32 * 19**2}T + {19**4}",
    23: f"T^4 - 914T^2 + {23**4}",
    29: f"T^4 - 782T^2 + {29**4}",
    31: f"T^4 + 2T^3 + 1923T^2 + {2 * 31**2}T + {31**4}",
}
# H'_p with the signs of the second table (A = i)
H_PRIME = {
    5: "T^2 - 3AT - 25",
    7: "T^2 - 5T + 49",
    11: "T^2 - 15AT - 121",
    13: "T^2 + 10T + 169",
    17: "T^2 + 18AT - 289",
    19: "T^2 + 16T + 361",
    23: "T^2 - 12AT - 529",
    29: "T^2 + 30AT - 841",
    31: "T^2 + T + 961",
}

G_A_PRINTED = {1: 1, 2: "a", 4: -5, 5: "-a", 7: 5, 8: "-a", 10: 9, 11: "-5a", 13: -10, 14: "5a",
               16: -11, 17: "6a", 19: -16, 20: "5a", 22: 45, 23: "-4a", 25: 16, 26: "-10a",
               28: -25, 29: "10a", 31: -1}
G2_PRINTED = {1: 1, 5: -6, 9: 9, 13: 10, 17: -30, 25: 11, 29: 42}


def printed_value(v, a):
    if isinstance(v, int):
        return G(v)
    coeff = v[:-1]
    k = {"": 1, "-": -1}.get(coeff, None)
    return a * (k if k is not None else int(coeff))


@pytest.fixture(scope="module")
def table(forms):
    return frobenius_table(PRIMES, forms=(forms.f_plus, forms.f_minus))


def test_hp_matches_table(table):
    for row in table:
        assert format_polynomial(row.hp) == H_P[row.p]


def test_hp_prime_matches_table(table):
    for row in table:
        assert format_polynomial(row.hp_prime) == H_PRIME[row.p]
        assert row.sign_resolved


def test_factorisation_reconstructs(table):
    for row in table:
        for beta in factor_over_qi(row):
            assert row.hp == _product(beta, row.delta)


def _product(beta, delta):
    # independent route: expand (T^2 - bT + d)(T^2 - conj(b)T + d) by hand
    s, n = beta + beta.conjugate(), beta * beta.conjugate()
    coeffs = (G(1), -s, n + 2 * delta, -s * delta, G(delta * delta))
    return tuple(int(c.re) for c in coeffs)


def test_c2_identity(table):
    for row in table:
        assert c2_identity(row) == row.c2
        assert row.is_weil()


def test_odd_parity_raises():
    with pytest.raises(IntegrityError):
        frobenius_data_from_traces(7, 10, 1)


def test_non_weil_raises():
    with pytest.raises(IntegrityError):
        frobenius_data_from_traces(7, 100, 0)


def test_factorisation_error():
    data = FrobeniusData(7, 3, 0, 3, 0)
    with pytest.raises(FactorizationError):
        factor_over_qi(data)


def test_sign_pending():
    data = build_frobenius_data(5)
    assert factor_over_qi(data) == (G(0, 3), G(0, -3))
    assert attach_factorization(data).beta is None
    with pytest.raises(SignPendingError) as err:
        newform_from_counting("g+", 5)
    assert set(err.value.candidates) == {3 * I, -3 * I}
    with pytest.raises(ValueError):
        with_beta(data, G(1))


def test_counting_agrees_with_printed(forms):
    pair = (forms.f_plus, forms.f_minus)
    for label in ("g+", "g-"):
        g = newform_from_paper(label)
        for p in PRIMES:
            assert newform_from_counting(label, p, forms=pair) == g.prime_value(p)
    g2 = newform_from_paper("g2")
    for p in PRIMES:
        assert newform_from_counting("g2", p) == g2.prime_value(p) == frobenius_trace(G2, p)


def test_recursion_reproduces_printed_expansions():
    for label, a in (("g+", -3 * I), ("g-", 3 * I)):
        g = newform_from_paper(label)
        coeffs = g.coefficients(31)
        for n in range(1, 32):
            expected = printed_value(G_A_PRINTED[n], a) if n in G_A_PRINTED else G(0)
            assert coeffs[n] == expected, (label, n)
    g2 = newform_from_paper("g2").coefficients(31)
    assert {n: c for n, c in g2.items() if c} == {n: G(v) for n, v in G2_PRINTED.items()}


def test_newform_conjugate():
    gp, gm = newform_from_paper("g+"), newform_from_paper("g-")
    assert gp.conjugate("g-").coefficients(36) == gm.coefficients(36)


def test_bad_labels_and_primes():
    with pytest.raises(ValueError):
        newform_from_paper("g3")
    with pytest.raises(ValueError):
        newform_from_counting("g+", 3)
    with pytest.raises(ValueError):
        build_frobenius_data(9)
    with pytest.raises(KeyError):
        newform_from_paper("g+").prime_value(37)


def test_format_polynomial():
    assert format_polynomial((1, 0, -1)) == "T^2 - 1"
    assert format_polynomial((1, G(0, 1), G(2, 3))) == "T^2 + AT + (2+3A)"
    assert format_polynomial((0,)) == "0"
