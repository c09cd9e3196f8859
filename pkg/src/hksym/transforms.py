"""Gromov-Witten to Gopakumar-Vafa transformations.

Multiple-cover relations have the shape
``gw(beta) = sum_{k | beta} w(k) * n(beta / k)`` with ``w(1) = 1``.
A class ``beta`` of divisibility ``m`` is handled together with every ``beta / c``
for ``c | m``; values are keyed by the cofactor ``c``. Solving from the most
primitive class (``c = m``) upward makes each system triangular.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping

from hksym.errors import ZeroDegree
from hksym.series import divisor_sigma


def divisors(m: int):
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class DivisorIndexed:
    """Values on the classes ``beta / c`` for every divisor ``c`` of ``m``."""

    m: int
    values: Mapping[int, Fraction]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("divisibility must be positive")
        keys = set(self.values)
        expected = set(divisors(self.m))
        if keys != expected:
            raise ValueError(f"keys {sorted(keys)} are not the divisors {sorted(expected)} of {self.m}")
        object.__setattr__(self, "values", {c: Fraction(v) for c, v in self.values.items()})

    @classmethod
    def from_function(cls, m, fn):
        """``fn(c)`` gives the value on ``beta / c``."""
        return cls(m, {c: fn(c) for c in divisors(m)})

    def __getitem__(self, c):
        return self.values[c]

    @property
    def top(self):
        """Value on ``beta`` itself."""
        return self.values[1]

    def total(self):
        return sum(self.values.values(), Fraction(0))


Weight = Callable[[int], Fraction]


def forward(n: DivisorIndexed, weight: Weight) -> DivisorIndexed:
    """``gw(beta/c) = sum_{k | m/c} weight(k) n(beta/(c k))``."""
    out: Dict[int, Fraction] = {}
    for c in divisors(n.m):
        out[c] = sum((weight(k) * n[c * k] for k in divisors(n.m // c)), Fraction(0))
    return DivisorIndexed(n.m, out)


def inverse(gw: DivisorIndexed, weight: Weight) -> DivisorIndexed:
    """Solve :func:`forward` for ``n``, from the most primitive class upward."""
    w1 = Fraction(weight(1))
    n: Dict[int, Fraction] = {}
    for c in reversed(divisors(gw.m)):
        rest = sum((weight(k) * n[c * k] for k in divisors(gw.m // c) if k > 1), Fraction(0))
        n[c] = (gw[c] - rest) / w1
    return DivisorIndexed(gw.m, n)


def genus0_weight(n_markings: int) -> Weight:
    e = n_markings - 3
    return lambda k: Fraction(k) ** e


def sigma_weight(k: int) -> Fraction:
    return Fraction(divisor_sigma(k))


def psi_weight(k: int) -> Fraction:
    return Fraction(1, k**3)


def gv0_from_gw(gw: DivisorIndexed, n_markings: int) -> DivisorIndexed:
    """Genus 0 invariants from ``gw = sum k^(n-3) n0(beta/k)``."""
    if n_markings < 0:
        raise ValueError("n_markings must be non-negative")
    return inverse(gw, genus0_weight(n_markings))


def gw_from_gv0(n0: DivisorIndexed, n_markings: int) -> DivisorIndexed:
    return forward(n0, genus0_weight(n_markings))


def gv1_imprimitive(gw1: DivisorIndexed) -> DivisorIndexed:
    """Genus 1 invariants from ``gw1 = sum sigma(k) n1(beta/k)``."""
    return inverse(gw1, sigma_weight)


def gw1_from_gv1(n1: DivisorIndexed) -> DivisorIndexed:
    return forward(n1, sigma_weight)


def n0_psi(gw_tau1: DivisorIndexed) -> DivisorIndexed:
    """Descendent genus 0 invariants from ``<tau_1(g)> = sum k^-3 n0(beta/k; psi)``."""
    return inverse(gw_tau1, psi_weight)


def gw_tau1_from_n0_psi(n: DivisorIndexed) -> DivisorIndexed:
    return forward(n, psi_weight)


def gv1_primitive(gw1, gw0_c2) -> Fraction:
    """``n1 = <tau_0(g)>_1 + <tau_0(g) tau_0(c2)>_0 / 24``."""
    return Fraction(gw1) + Fraction(gw0_c2) / 24


def gv2_primitive(gw2, n1c2, gw0_c2c2, nodal) -> Fraction:
    """``n2 = <>_2 + n1(c2)/24 - <c2 c2>_0 / 1152 - nodal/24``."""
    return Fraction(gw2) + Fraction(n1c2) / 24 - Fraction(gw0_c2c2) / 1152 - Fraction(nodal) / 24


def tau1_reduce(gw_gD2, gw_gD, d) -> Fraction:
    """``<tau_1(g)> = <tau_0(g) tau_0(D^2)>/d^2 - 2 <tau_0(g D)>/d`` for ``d = D.beta != 0``."""
    d = Fraction(d)
    if d == 0:
        raise ZeroDegree("the divisor must have nonzero degree on the class")
    return Fraction(gw_gD2) / d**2 - 2 * Fraction(gw_gD) / d


def tau3_reduce(a3, f, d) -> Fraction:
    """``<tau_3(1)> = -8 <tau_0(D^3)>/d^3 + 6 <tau_0(D^2) tau_0(D^2)>/d^4``."""
    d = Fraction(d)
    if d == 0:
        raise ZeroDegree("the divisor must have nonzero degree on the class")
    return -8 * Fraction(a3) / d**3 + 6 * Fraction(f) / d**4


def nodal_from_parts(diag, tau_c2_psi, psi3, psi1_c2) -> Fraction:
    """Half of the diagonal term minus the ``c(T_X)/(1 - psi)`` integral.

    ``psi3`` and ``psi1_c2`` are the ``psi^3`` and ``c2 psi`` pieces; ``tau_c2_psi``
    holds any further piece of that integral and is zero in every closed-form
    geometry handled here.
    """
    return (Fraction(diag) - Fraction(tau_c2_psi) - Fraction(psi3) - Fraction(psi1_c2)) / 2


def nodal_weight(gw2, n1c2, gw0_c2c2, nodal, n2=0) -> Fraction:
    """Solve ``<>_2 = n2 - n1(c2)/24 + <c2 c2>_0/1152 + a * nodal`` for ``a``."""
    nodal = Fraction(nodal)
    if nodal == 0:
        raise ZeroDegree("the nodal count must be nonzero")
    return (Fraction(gw2) - Fraction(n2) + Fraction(n1c2) / 24 - Fraction(gw0_c2c2) / 1152) / nodal
