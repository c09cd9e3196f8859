from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import divisors as sym_divisors
from sympy.functions.combinatorial.numbers import mobius

from hksym.enumerative import n_series
from hksym.geometries import n_value
from hksym.errors import ZeroDegree
from hksym.transforms import (
    DivisorIndexed, divisors, forward, gv0_from_gw, gv1_imprimitive, gv1_primitive, gv2_primitive,
    gw1_from_gv1, gw_from_gv0, gw_tau1_from_n0_psi, n0_psi, nodal_from_parts, nodal_weight, tau1_reduce,
    tau3_reduce,
)

rat = st.fractions(min_value=-50, max_value=50, max_denominator=9)


@st.composite
def lattice(draw, max_m=60):
    m = draw(st.integers(1, max_m))
    return DivisorIndexed(m, {c: draw(rat) for c in divisors(m)})


@given(st.integers(1, 500))
def test_divisors_match_sympy(m):
    assert divisors(m) == sym_divisors(m)


def test_keys_must_be_divisors():
    with pytest.raises(ValueError):
        DivisorIndexed(4, {1: 0, 2: 0})


@given(lattice(), st.integers(0, 5))
def test_genus0_round_trip(n, k):
    assert gv0_from_gw(gw_from_gv0(n, k), k) == n
    assert gw_from_gv0(gv0_from_gw(n, k), k) == n


@given(lattice())
def test_sigma_and_psi_round_trips(n):
    assert gv1_imprimitive(gw1_from_gv1(n)) == n
    assert n0_psi(gw_tau1_from_n0_psi(n)) == n


@given(lattice())
def test_three_markings_is_moebius(gw):
    n = gv0_from_gw(gw, 3)
    for c in divisors(gw.m):
        ref = sum(mobius(k) * gw[c * k] for k in divisors(gw.m // c))
        assert n[c] == ref


def brute_forward(n, weight):
    # explicit sum over pairs (c, k) with c * k | m
    out = {c: Fraction(0) for c in divisors(n.m)}
    for c in divisors(n.m):
        for ck in divisors(n.m):
            if ck % c == 0:
                out[c] += weight(ck // c) * n[ck]
    return out


@given(lattice(24))
def test_forward_against_brute_sum(n):
    w = lambda k: Fraction(1, k**3)
    assert forward(n, w).values == brute_forward(n, w)


def test_primitive_is_identity():
    x = DivisorIndexed(1, {1: Fraction(7, 3)})
    assert gv0_from_gw(x, 2) == x
    assert gv1_imprimitive(x) == x
    assert n0_psi(x) == x


def test_cotangent_p2_genus0():
    gw = DivisorIndexed.from_function(4, lambda c: Fraction((-1) ** (4 // c - 1), 4 // c))
    n = gv0_from_gw(gw, 2)
    assert (n[4], n[2], n[1]) == (1, -1, 0)


def test_k3_fiber_class_multiple_cover():
    for l, m in [(0, 2), (1, 2), (1, 3), (2, 2), (-1, 6)]:
        gw = DivisorIndexed.from_function(
            m, lambda c: sum(Fraction(1, k**3) * n_value("N0", (m // (c * k)) ** 2 * l) for k in divisors(m // c)))
        n = n0_psi(gw)
        for c in divisors(m):
            assert n[c] == n_value("N0", (m // c) ** 2 * l)


def test_genus1_imprimitive_example():
    n = gv1_imprimitive(DivisorIndexed(2, {1: 72, 2: 24}))
    assert (n[1], n[2]) == (0, 24)
    assert gv1_imprimitive(DivisorIndexed(3, {1: 0, 3: 0})).total() == 0


def test_primitive_definitions():
    assert gv1_primitive(Fraction(1, 8), -3) == 0
    assert gv1_primitive(24, 0) == 24
    assert gv2_primitive(Fraction(-11445, 128), 5985, 2835, 3780) == 0
    assert gv2_primitive(Fraction(1, 128), 0, 9, 0) == 0
    assert nodal_weight(Fraction(-11445, 128), 5985, 2835, 3780) == Fraction(1, 24)


@given(rat, rat, rat, rat, rat)
def test_gv2_affine_coefficients(a, b, c, d, h):
    base = gv2_primitive(a, b, c, d)
    assert gv2_primitive(a + h, b, c, d) - base == h
    assert gv2_primitive(a, b + h, c, d) - base == h / 24
    assert gv2_primitive(a, b, c + h, d) - base == -h / 1152
    assert gv2_primitive(a, b, c, d + h) - base == -h / 24


@given(rat, rat.filter(bool))
def test_tau1_reduce_examples(x, d):
    assert tau1_reduce(0, x * d, d) == -2 * x
    assert tau1_reduce(d * d * x, 0, d) == x


def test_tau_reductions():
    assert tau3_reduce(0, 1, 1) == 6
    assert tau3_reduce(0, 0, 5) == 0
    assert tau3_reduce(8, 0, 2) == -8
    assert tau1_reduce(0, Fraction(5), -2) == 5
    with pytest.raises(ZeroDegree):
        tau1_reduce(1, 1, 0)
    with pytest.raises(ZeroDegree):
        tau3_reduce(1, 1, 0)


def test_nodal_assembly():
    assert nodal_from_parts(3, 0, 6, -3) == 0
    assert nodal_from_parts(0, 0, 0, 0) == 0
    # K3 x K3 primitive: 24 (beta.beta) N0 + 48 N0 halves to 24 (l + 1) N0
    n0 = n_series("N0", 5)
    for l in range(-1, 5):
        assert nodal_from_parts(48 * l * n0[l], 0, 0, -48 * n0[l]) == 24 * (l + 1) * n0[l]
