"""Quasi-Jacobi forms for K3^[2]-type 4-folds and the invariants read off from them.

Every form here is ``TH2 * DELTA_INV * bracket`` for a polynomial ``bracket`` in
``WP``, ``DWP`` and the Eisenstein series. A curve class enters only through its
Beauville-Bogomolov square ``(beta, beta)``, which selects a coefficient
``q^d y^k`` with ``2d - k^2/2 = (beta, beta)``.

The genus 1 and 2 forms (``A``, ``B``, ``I``, ``Aprime``, ``Bprime``, ``Itilde``)
rest on conjectural holomorphic anomaly input, so values derived from them are
conditional on it.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from hksym.errors import InvalidSquare, TruncationTooSmall, WellDefinednessViolation
from hksym.qjacobi import DELTA_INV, DWP, E2, E4, E6, TH2, WP, GenPoly, expand
from hksym.series import QYSeries, fmt_rat

R = Fraction
DEFAULT_TRUNC = int(os.environ.get("HKSYM_TRUNC", "75"))
MIN_SQUARE = R(-5, 2)

# Fujiki-type pairings on a K3^[2]-type 4-fold, with s = (beta, beta):
#   h^4 = 3 s^2, h^2 c2 = 30 s, c2^2 = 828,
# and the c_BB contractions h.h.c_BB against (h^2, h^2), (h^2, c2), (c2, c2).
C2_SQUARED = 828


def _brackets():
    f = GenPoly.const(1)
    g = -WP + E2 / 12
    a = WP * E2 / 4 + R(3, 32) * E2**2 + E4 / 96
    b = (R(-5, 46) * WP**3 + R(5, 384) * WP * E2**2 + R(5, 1536) * E2**3 - WP * E4 / 2944
         + R(5, 4608) * E2 * E4 + R(5, 184) * DWP**2 - R(5, 39744) * E6)
    i = (R(5, 384) * WP * E2**3 + R(25, 6144) * E2**4 + R(5, 384) * WP * E2 * E4
         + R(7, 3072) * E2**2 * E4 - R(13, 18432) * E4**2 - WP * E6 / 96 + E2 * E6 / 1152)
    ap = -WP / 4 - R(5, 48) * E2
    bp = -WP * E2 / 96 - E2**2 / 256 - E4 / 2304
    it = (R(5, 384) * WP * E2**3 + R(25, 6144) * E2**4 + R(35, 384) * WP * E2**2 - R(5, 512) * E2**3
          + R(5, 384) * WP * E2 * E4 + R(7, 3072) * E2**2 * E4
          - R(71, 64) * WP * E2 + R(27, 512) * E2**2 - R(47, 384) * WP * E4 + R(5, 4608) * E2 * E4
          - R(13, 18432) * E4**2 - WP * E6 / 96
          + E2 * E6 / 1152 + R(9, 8) * WP - R(5, 32) * E2 - R(23, 1536) * E4 - R(5, 1152) * E6 + R(1, 8))
    return {"F": f, "G": g, "A": a, "B": b, "I": i, "Aprime": ap, "Bprime": bp, "Itilde": it}


BRACKETS = _brackets()
FORM_NAMES = tuple(BRACKETS)


def form(name: str) -> GenPoly:
    """The generator polynomial of a named form, including the ``TH2 * DELTA_INV`` prefactor."""
    try:
        return TH2 * DELTA_INV * BRACKETS[name]
    except KeyError:
        raise KeyError(f"unknown form {name!r}; expected one of {FORM_NAMES}") from None


@lru_cache(maxsize=None)
def form_series(name: str, trunc: int = DEFAULT_TRUNC) -> QYSeries:
    return expand(form(name), trunc)


class BBSquare(Fraction):
    """A Beauville-Bogomolov square in ``2Z`` or ``2Z - 1/2``."""

    def __new__(cls, value):
        self = super().__new__(cls, Fraction(value))
        if self.denominator not in (1, 2):
            raise InvalidSquare(f"{value} is not an integer or half-integer")
        if (self if self.denominator == 1 else self + R(1, 2)) % 2:
            raise InvalidSquare(f"{value} is not in 2Z or 2Z - 1/2")
        return self

    @property
    def is_even(self):
        return self.denominator == 1

    def representatives(self):
        """Default and cross-check ``(k, d)`` with ``2d - k^2/2`` equal to the square."""
        if self.is_even:
            d = int(self / 2)
            return (0, d), (2, d + 1)
        d = int((self + R(1, 2)) / 2)
        return (1, d), (3, d + 2)

    def required_trunc(self):
        """Truncation needed for the default representative."""
        return self.representatives()[0][1] + 1


def valid_squares(lo, hi):
    """All valid squares in ``[lo, hi]``, ascending."""
    lo, hi = R(lo), R(hi)
    out = []
    x = MIN_SQUARE if lo <= MIN_SQUARE else lo
    # walk over the half-integer lattice and keep the members of 2Z and 2Z - 1/2
    x = R(int(2 * x) - 1, 2)
    while x <= hi:
        if x >= lo:
            try:
                out.append(BBSquare(x))
            except InvalidSquare:
                pass
        x += R(1, 2)
    return out


def beta_coeff(s: QYSeries, bb, check: bool = True) -> Fraction:
    """The coefficient of ``s`` attached to a class of square ``bb``.

    When ``check`` is set and the second representative is within the series'
    truncation, both must agree.
    """
    bb = bb if isinstance(bb, BBSquare) else BBSquare(bb)
    (k0, d0), (k1, d1) = bb.representatives()
    if d0 >= s.trunc:
        raise TruncationTooSmall(f"square {bb} needs q^{d0}, series known below q^{s.trunc}")
    v = s.coeff(d0, k0)
    if check and d1 < s.trunc:
        w = s.coeff(d1, k1)
        if v != w:
            raise WellDefinednessViolation(f"square {bb}: y^{k0}q^{d0} gives {v}, y^{k1}q^{d1} gives {w}")
    return v


def _coeff(name, bb, trunc):
    bb = bb if isinstance(bb, BBSquare) else BBSquare(bb)
    if trunc is None:
        trunc = max(DEFAULT_TRUNC, bb.required_trunc())
    return beta_coeff(form_series(name, trunc), bb)


@dataclass(frozen=True)
class GV1Class:
    """Genus 1 class ``a/2 h^2 + b c2``."""

    a: Fraction
    b: Fraction

    def to_json_obj(self):
        return {"a": fmt_rat(self.a), "b": fmt_rat(self.b)}


def gv1(bb, trunc=None) -> GV1Class:
    a = _coeff("A", bb, trunc) + _coeff("Aprime", bb, trunc)
    b = _coeff("B", bb, trunc) + _coeff("Bprime", bb, trunc)
    return GV1Class(a, b)


def gv2(bb, trunc=None) -> Fraction:
    return _coeff("Itilde", bb, trunc)


def _pairings(s):
    """``P``, ``Q``, ``L`` pairings of ``u h^2 + v c2`` as linear forms in ``(u, v)``."""
    return (
        lambda u, v: 3 * s * s * u + 30 * s * v,        # against h^2
        lambda u, v: 30 * s * u + C2_SQUARED * v,       # against c2
        lambda u, v: 3 * s * u + 30 * v,                # h.h.c_BB contraction
    )


def g0_two_point(bb, g1, g2, trunc=None) -> Fraction:
    """Genus 0 two-point invariant with insertions ``g_i = u_i h^2 + v_i c2``."""
    bb = bb if isinstance(bb, BBSquare) else BBSquare(bb)
    fb = _coeff("F", bb, trunc)
    gb = _coeff("G", bb, trunc)
    s = Fraction(bb)
    P, Q, L = _pairings(s)
    u1, v1 = map(Fraction, g1)
    u2, v2 = map(Fraction, g2)
    p1, p2 = P(u1, v1), P(u2, v2)
    q1, q2 = Q(u1, v1), Q(u2, v2)
    l1, l2 = L(u1, v1), L(u2, v2)
    mixed = -(p1 * q2 + q1 * p2) / 30 + s * q1 * q2 / 900
    return fb * p1 * p2 / 4 + gb * s * l1 * l2 + (gb + s * fb / 4) * mixed


C2 = (0, 1)
H2 = (1, 0)


def gv1_c2(bb, trunc=None) -> Fraction:
    """Genus 1 invariant with a ``c2`` insertion: ``15 s a + 828 b``."""
    c = gv1(bb, trunc)
    return 15 * Fraction(bb) * c.a + C2_SQUARED * c.b


def nodal_k3hilb(bb, trunc=None) -> Fraction:
    """Nodal count recovered from the genus 2 relation."""
    i = _coeff("I", bb, trunc)
    return 24 * (i + gv1_c2(bb, trunc) / 24 - g0_two_point(bb, C2, C2, trunc) / 1152 - gv2(bb, trunc))


def anomaly_genus2(order: int = 20) -> bool:
    """``d/dG2 I = 3 (2 q d/dq - 1/2 (y d/dy)^2) A + 60 B`` modulo ``q**order``."""
    lhs = expand(form("I").d_dG2(), order)
    a = form_series("A", order)
    b = form_series("B", order)
    rhs = (a.dq().scale(2) - a.dy().dy().scale(R(1, 2))).scale(3) + b.scale(60)
    return lhs.agrees_with(rhs)


def anomaly_genus1(order: int = 20) -> bool:
    """``d/dG2 A = TH2 DELTA_INV (-6 WP + 108 G2)`` modulo ``q**order``."""
    from hksym.qjacobi import eisenstein_G, generator_series

    lhs = expand(form("A").d_dG2(), order)
    work = order + 2
    pref = generator_series("TH2", work) * generator_series("DELTA_INV", work)
    inner = generator_series("WP", work).scale(-6) + eisenstein_G(2, work).scale(108)
    return lhs.agrees_with((pref * inner).truncate(order))
