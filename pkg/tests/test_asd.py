from fractions import Fraction

import pytest

from asdforms.asd import (
    CoverageError,
    SignAmbiguityError,
    asd_congruence,
    required_valuation,
    resolve_sign,
    scholl_congruence,
    three_term_values,
)
from asdforms.charpoly import IntegrityError, build_frobenius_data, newform_from_paper
from asdforms.exact import GaussianRational as G
from asdforms.exact import I
from asdforms.qseries import PuiseuxSeries

ODD = (5, 7, 11, 13, 17, 19, 23, 29, 31)


def test_required_valuation():
    assert required_valuation(1, 5) == 2
    assert required_valuation(5, 5) == 4
    assert required_valuation(50, 5) == 6


def test_p5_worked_example(forms):
    report = asd_congruence(forms.f_plus, newform_from_paper("g+"), 5, n_max=1)
    assert [r.value for r in report.records] == [G(0, Fraction(-25, 3))] * 2
    assert [r.achieved for r in report.records] == [2, 2]
    assert report.passed


def test_p7_uses_a49(forms):
    values = three_term_values(forms.f_plus, G(5), 1, 7, n_max=7)
    assert values[1] == G(Fraction(-4, 9)) - 5 == G(Fraction(-49, 9))
    assert values[7] == forms.f_plus[49] - 5 * forms.f_plus[7] + 49 * forms.f_plus[1]
    assert asd_congruence(forms.f_plus, newform_from_paper("g+"), 7, n_max=1).passed


def test_zero_coefficients_pass():
    f = PuiseuxSeries({1: 1}, 15, 60)
    report = asd_congruence(f, newform_from_paper("g+"), 7, n_max=2)
    assert report.records[-1].value == 0 and report.records[-1].passed


@pytest.mark.parametrize("p", ODD)
def test_f_plus_minus_all_n(forms, p):
    gp, gm = newform_from_paper("g+"), newform_from_paper("g-")
    rp = asd_congruence(forms.f_plus, gp, p)
    rm = asd_congruence(forms.f_minus, gm, p)
    assert rp.passed and rm.passed
    # conjugation symmetry, with the two split places swapped
    assert sorted((r.n, r.achieved, r.value.conjugate()) for r in rp.records) == sorted(
        (r.n, r.achieved, r.value) for r in rm.records
    )


@pytest.mark.parametrize("p", (3, *ODD))
def test_h2_against_g2(h2, p):
    assert asd_congruence(h2, newform_from_paper("g2"), p).passed


def test_wrong_sign_fails(forms):
    g = newform_from_paper("g-")
    assert not asd_congruence(forms.f_plus, g, 5).passed


def test_monotone_coverage(forms):
    g = newform_from_paper("g+")
    short = asd_congruence(forms.f_plus, g, 7, n_max=10)
    long = asd_congruence(forms.f_plus, g, 7, n_max=40)
    assert long.records[: len(short.records)] == short.records


def test_coverage_error(forms):
    with pytest.raises(CoverageError) as err:
        asd_congruence(forms.f_plus, newform_from_paper("g+"), 31, n_max=100)
    assert err.value.tested == list(range(1, 400 // 31 + 1))


def test_excluded_primes(forms):
    with pytest.raises(ValueError):
        asd_congruence(forms.f_plus, newform_from_paper("g+"), 3)
    with pytest.raises(ValueError):
        asd_congruence(forms.f_plus, newform_from_paper("g+"), 7, m=7)
    with pytest.raises(ValueError):
        asd_congruence(forms.f_plus, newform_from_paper("g+"), 2)


@pytest.mark.parametrize("p", [7, 13])
def test_scholl_instances(forms, p):
    data = build_frobenius_data(p)
    assert scholl_congruence(forms.f1, data, n_max=1).passed
    assert scholl_congruence(forms.f2, data, n_max=1).passed


def test_scholl_rejects_n_zero(forms):
    with pytest.raises(ValueError):
        scholl_congruence(forms.f1, build_frobenius_data(7), n_max=0)


@pytest.mark.parametrize("p, expected", [(5, 3 * I), (11, 15 * I), (17, -18 * I), (23, 12 * I), (29, -30 * I)])
def test_resolve_sign(forms, p, expected):
    assert resolve_sign(forms.f_plus, forms.f_minus, p, (expected, expected.conjugate())) == expected


def test_resolve_sign_ambiguity():
    zero = PuiseuxSeries({}, 15, 40)
    with pytest.raises(SignAmbiguityError) as err:
        resolve_sign(zero, zero, 5, (3 * I, -3 * I), n_probe=2)
    assert err.value.n_probe == 2


def test_resolve_sign_no_candidate(forms):
    with pytest.raises(IntegrityError):
        resolve_sign(forms.f_plus, forms.f_minus, 5, (G(1), G(-1)))
