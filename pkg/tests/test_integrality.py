from fractions import Fraction

import pytest

from hksym import hilb2
from hksym.errors import TruncationTooSmall
from hksym.integrality import (
    basis_coefficients, check_gv1, check_gv2, curve_class_index, curve_pairings, sweep, sweep_json_lines,
)


def test_check_gv1_examples():
    r = check_gv1(0)
    assert r.passed
    assert [(c.name, c.value) for c in r.conditions] == [("a_even", 6), ("3b", 3)]
    r = check_gv1(Fraction(11, 2))
    assert r.passed
    assert [c.value for c in r.conditions] == [74970, -38430, 14175]
    r = check_gv1(Fraction(-5, 2))
    assert r.passed and all(c.value == 0 for c in r.conditions)


def test_check_gv2_examples():
    assert check_gv2(Fraction(51, 2)).conditions[0].value == 137145316350735
    assert check_gv2(0).passed
    assert check_gv2(Fraction(15, 2)).conditions[0].value == 153720


def test_odd_value_fails_parity():
    # a parity failure must be reported, not raised
    from hksym.integrality import Condition, IntegralityReport
    r = IntegralityReport(hilb2.BBSquare(0), 1, (Condition("a_even", Fraction(3), False),))
    assert not r.passed


@pytest.fixture(scope="module")
def genus1_reports():
    return sweep(1, 100)


def test_genus1_sweep(genus1_reports):
    assert genus1_reports[0].bb == Fraction(-5, 2)
    assert genus1_reports[-1].bb == 100
    assert all(r.passed for r in genus1_reports)


def test_even_squares_have_even_a(genus1_reports):
    for r in genus1_reports:
        if r.bb.is_even:
            a = hilb2.gv1(r.bb).a
            assert a.denominator == 1 and a.numerator % 2 == 0


def test_basis_change_is_integral(genus1_reports):
    for r in genus1_reports:
        c = hilb2.gv1(r.bb)
        d, k = curve_class_index(r.bb)
        assert 2 * d - Fraction(k * k, 2) == r.bb
        assert all(x.denominator == 1 for x in basis_coefficients(c.a, c.b, d, k))


def test_basis_change_detects_non_integral_class():
    # a = 1 at an even square is not allowed, and the D(W)^2 coordinate shows it
    assert basis_coefficients(1, 0, 3, 0)[0] == Fraction(1, 2)


def test_genus2_sweep():
    reports = sweep(2, 138)
    assert len(reports) == len(hilb2.valid_squares(-3, 138))
    assert all(r.passed for r in reports)


def test_trivial_sweep():
    reports = sweep(1, Fraction(-5, 2))
    assert len(reports) == 1 and reports[0].passed


def test_sweep_truncation_guard():
    with pytest.raises(TruncationTooSmall):
        sweep(1, 100, trunc=40)


def test_parallel_sweep_is_identical():
    assert sweep_json_lines(sweep(2, 20, jobs=2)) == sweep_json_lines(sweep(2, 20))


def test_json_is_reproducible():
    assert check_gv1(Fraction(35, 2)).to_json() == check_gv1(Fraction(35, 2)).to_json()
    assert '"bb": "35/2"' in check_gv1(Fraction(35, 2)).to_json()


def test_curve_pairings():
    assert curve_pairings(1, 1)[4] == 45
    assert curve_pairings(5, 0)[2] == 0
    assert curve_pairings(0, 2)[4] == -60
    assert curve_pairings(3, 1) == (2, Fraction(23, 4), -2, Fraction(23, 4), 165)
