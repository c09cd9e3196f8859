from fractions import Fraction
from math import factorial

import pytest

from hksym.enumerative import (
    LIndexedTable, fujiki_csv, fujiki_grid, fujiki_hilb, fujiki_kummer, fujiki_kummer_series, fujiki_markdown, hilb_descendent_series,
    n_series,
)
from hksym.errors import OutOfRange
from hksym.series import divisor_sigma
from known_values import FUJIKI_HILB, N_SERIES


@pytest.mark.parametrize("name", sorted(N_SERIES))
def test_n_series_leading_values(name):
    start, values = N_SERIES[name]
    table = n_series(name, start + len(values))
    assert [table[l] for l in range(start, start + len(values))] == values
    for l in range(-1, start):
        assert table[l] == 0


def test_fujiki_table():
    grid = fujiki_grid(6)
    for n, row in enumerate(FUJIKI_HILB):
        assert [grid[(n, j)] for j in range(n + 1)] == row


def test_fujiki_c0_is_double_factorial():
    grid = fujiki_grid(8)
    for n in range(9):
        assert grid[(n, 0)] == Fraction(factorial(2 * n), factorial(n) * 2**n)
    assert fujiki_hilb(0, 3).items() == [(0, 1), (1, 24), (2, 324), (3, 3200)]


def test_fujiki_top_is_euler_characteristic():
    # C(c_2n) of S^[n] is its Euler characteristic, the q^n coefficient of prod (1-q^n)^-24
    grid = fujiki_grid(5)
    assert [grid[(n, n)] for n in range(6)] == [1, 24, 324, 3200, 25650, 176256]


def test_kummer_series_oracle():
    s = fujiki_kummer_series(0, 9)
    for n in range(1, 9):
        assert s.coeff(n, 0) == n**3 * divisor_sigma(n)
    # entry n of the table sits at q^(n+1)
    assert fujiki_kummer(0, 3).items() == [(0, 1), (1, 24), (2, 108), (3, 448)]


def test_markdown_layout():
    md = fujiki_markdown(6)
    lines = md.splitlines()
    assert lines[0].startswith("|    | c_0 | c_2")
    assert lines[-1] == "| S^[6] | 10395 | 51030 | 122220 | 198300 | 266490 | 378420 | 1073720 |"
    assert "| S^[0] | 1 |  |" in md


def test_csv_is_exact():
    text = fujiki_csv(2)
    assert "2,4,324/1" in text.splitlines()


def test_absent_is_not_zero():
    table = n_series("N0", 3)
    with pytest.raises(OutOfRange):
        table[4]
    t = LIndexedTable("x", {0: Fraction(0)})
    assert t[0] == 0
    with pytest.raises(OutOfRange):
        t[1]


def test_descendent_series_oracles():
    # (1/24 + G2) has no constant term; leading terms q + 3q^2 + 4q^3
    g2p = hilb_descendent_series("G2P", 5)
    assert [g2p.coeff(d, 0) for d in range(4)] == [0, 1, 3 + 24, 4 + 3 * 24 + 324]
    g4 = hilb_descendent_series("G4", 3)
    # -(20 G2^2 + 2 G2 + 5/3 G4 + 1/24) at q^0 is -(20/576 - 1/12 + 5/3 * 1/240 + 1/24)
    c0 = -(Fraction(20, 576) - Fraction(2, 24) + Fraction(5, 3) * Fraction(1, 240) + Fraction(1, 24))
    assert g4.coeff(0, 0) == c0 == 0


def test_range_errors():
    with pytest.raises(OutOfRange):
        fujiki_hilb(3, 2)
    with pytest.raises(OutOfRange):
        n_series("N0", -2)
