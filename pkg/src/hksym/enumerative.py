"""One-variable enumerative series and Fujiki constants of Chern classes."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict

from hksym.errors import OutOfRange
from hksym.qjacobi import eisenstein_G, generator_series
from hksym.series import QYSeries, eta_power, fmt_rat

N_NAMES = ("N0", "N1", "N2", "Nprime", "Ndprime")


@dataclass(frozen=True)
class LIndexedTable:
    """Exact values indexed by an integer; missing indices are not computed, not zero."""

    name: str
    entries: Dict[int, Fraction] = field(default_factory=dict)

    @property
    def min_l(self):
        return min(self.entries)

    @property
    def max_l(self):
        return max(self.entries)

    def __getitem__(self, l):
        try:
            return self.entries[l]
        except KeyError:
            raise OutOfRange(f"{self.name}: index {l} was not computed") from None

    def __contains__(self, l):
        return l in self.entries

    def __iter__(self):
        return iter(sorted(self.entries))

    def items(self):
        return sorted(self.entries.items())

    def to_csv(self, index_name="index"):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([index_name, "value"])
        for l, v in self.items():
            w.writerow([l, fmt_rat(v)])
        return buf.getvalue()

    def to_markdown(self, index_name="index"):
        lines = [f"| {index_name} | {self.name} |", "| --- | --- |"]
        lines += [f"| {l} | {md_rat(v)} |" for l, v in self.items()]
        return "\n".join(lines) + "\n"


def md_rat(x):
    """Integers bare, other rationals as ``num/den``."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _dqG2(trunc):
    return eisenstein_G(2, trunc).dq()


def n_generating_series(which: str, trunc: int) -> QYSeries:
    """The series ``sum_l N(l) q^l`` modulo ``q**trunc``."""
    work = trunc + 1
    di = generator_series("DELTA_INV", work)
    g2 = eisenstein_G(2, work)
    dg2 = g2.dq()
    one = QYSeries.one(work)
    if which == "N0":
        inner = one
    elif which == "N1":
        inner = dg2
    elif which == "N2":
        inner = dg2.scale(24) - g2.scale(24) - one
    elif which == "Nprime":
        inner = dg2 + g2 + Fraction(1, 24)
    elif which == "Ndprime":
        inner = dg2.scale(24) + g2.scale(24) - one
    else:
        raise KeyError(f"unknown series {which!r}; expected one of {N_NAMES}")
    return (di * inner).truncate(trunc)


def n_series(which: str, max_l: int) -> LIndexedTable:
    """``N(l)`` for ``l = -1 .. max_l``."""
    if max_l < -1:
        raise OutOfRange("max_l must be at least -1")
    s = n_generating_series(which, max_l + 1)
    return LIndexedTable(which, {l: s.coeff(l, 0) for l in range(-1, max_l + 1)})


def fujiki_hilb_series(k: int, trunc: int) -> QYSeries:
    """``(2k)!/(k! 2^k) (q dG2/dq)^k prod (1-q^n)^-24``."""
    pref = Fraction(factorial(2 * k), factorial(k) * 2**k)
    return (_dqG2(trunc) ** k * eta_power(-24, trunc)).scale(pref)


def fujiki_hilb(k: int, max_n: int) -> LIndexedTable:
    """Fujiki constants ``C(c_{2n-2k})`` of the Hilbert scheme of ``n`` points, ``n = k..max_n``."""
    if k < 0 or max_n < k:
        raise OutOfRange("need 0 <= k <= max_n")
    s = fujiki_hilb_series(k, max_n + 1)
    return LIndexedTable(f"C(c_{{2n-{2 * k}}})", {n: s.coeff(n, 0) for n in range(k, max_n + 1)})


def fujiki_kummer_series(k: int, trunc: int) -> QYSeries:
    """``(2k)!/((k+1)! 2^k) (q d/dq)^2 (q dG2/dq)^(k+1)``; ``q^(n+1)`` carries dimension ``2n``."""
    pref = Fraction(factorial(2 * k), factorial(k + 1) * 2**k)
    return (_dqG2(trunc) ** (k + 1)).dq().dq().scale(pref)


def fujiki_kummer(k: int, max_n: int) -> LIndexedTable:
    """Fujiki constants ``C(c_{2n-2k})`` of generalized Kummer varieties, ``n = k..max_n``."""
    if k < 0 or max_n < k:
        raise OutOfRange("need 0 <= k <= max_n")
    s = fujiki_kummer_series(k, max_n + 2)
    return LIndexedTable(f"C(c_{{2n-{2 * k}}})", {n: s.coeff(n + 1, 0) for n in range(k, max_n + 1)})


def fujiki_grid(max_n: int, family: str = "hilb"):
    """``{(n, j): C(c_{2j})}`` for ``0 <= j <= n <= max_n``."""
    fn = fujiki_hilb if family == "hilb" else fujiki_kummer
    grid = {}
    for k in range(max_n + 1):
        table = fn(k, max_n)
        for n, v in table.items():
            grid[(n, n - k)] = v
    return grid


def fujiki_markdown(max_n: int, family: str = "hilb") -> str:
    """Rows ``n = 0..max_n``, columns ``c_0, c_2, ..., c_{2 max_n}``, blank above the diagonal."""
    grid = fujiki_grid(max_n, family)
    label = "S^[{}]" if family == "hilb" else "Kum_{}"
    head = "|    | " + " | ".join(f"c_{2 * j}" for j in range(max_n + 1)) + " |"
    lines = [head, "|" + " --- |" * (max_n + 2)]
    for n in range(max_n + 1):
        cells = [md_rat(grid[(n, j)]) if j <= n else "" for j in range(max_n + 1)]
        lines.append(f"| {label.format(n)} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def fujiki_csv(max_n: int, family: str = "hilb") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "j", "value"])
    for (n, j), v in sorted(fujiki_grid(max_n, family).items()):
        w.writerow([n, 2 * j, fmt_rat(v)])
    return buf.getvalue()


def hilb_descendent_series(which: str, trunc: int) -> QYSeries:
    """Descendent generating series on Hilbert schemes of points of a K3.

    ``G2P``: ``(1/24 + G2) prod (1-q^n)^-24``;
    ``G4``: ``-(20 G2^2 + 2 G2 + 5/3 G4 + 1/24) prod (1-q^n)^-24``.
    """
    if trunc < 1:
        raise OutOfRange("trunc must be at least 1")
    m = eta_power(-24, trunc)
    g2 = eisenstein_G(2, trunc)
    if which == "G2P":
        return (g2 + Fraction(1, 24)) * m
    if which == "G4":
        g4 = eisenstein_G(4, trunc)
        inner = (g2 * g2).scale(20) + g2.scale(2) + g4.scale(Fraction(5, 3)) + Fraction(1, 24)
        return -(inner * m)
    raise KeyError(f"unknown descendent series {which!r}")
