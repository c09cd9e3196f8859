"""Quasi-Jacobi generators, a polynomial ring over them, and its expansion map."""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache

from hksym.errors import UnsupportedWeight
from hksym.series import QYSeries, divisor_sigma, eta_power, fmt_rat, parse_rat

GENERATORS = ("E2", "E4", "E6", "TH2", "WP", "DWP", "DELTA_INV")
_INDEX = {g: i for i, g in enumerate(GENERATORS)}
_Y_SLOTS = (3, 4, 5)
_Q_SLOTS = (0, 1, 2, 6)

BERNOULLI = {2: Fraction(1, 6), 4: Fraction(-1, 30), 6: Fraction(1, 42)}
_EISENSTEIN = {2: (-24, 1), 4: (240, 3), 6: (-504, 5)}


def _eisenstein_E(k, trunc):
    scale, power = _EISENSTEIN[k]
    return QYSeries.from_q_coeffs([1] + [scale * divisor_sigma(n, power) for n in range(1, trunc)], 0, trunc)


def _theta_product(trunc):
    """Rows of prod_{m>=1} (1 + y q^m)(1 + y^-1 q^m) as dicts exponent -> int."""
    rows = [dict() for _ in range(trunc)]
    rows[0][0] = 1
    for m in range(1, trunc):
        for e in (1, -1):
            # multiply in place by (1 + y^e q^m), highest q-order first
            for n in range(trunc - 1, m - 1, -1):
                src = rows[n - m]
                if not src:
                    continue
                dst = rows[n]
                for k, c in src.items():
                    dst[k + e] = dst.get(k + e, 0) + c
    out = []
    for r in rows:
        lo, hi = min(r), max(r)
        out.append((lo, tuple(r.get(k, 0) for k in range(lo, hi + 1))))
    return QYSeries(0, trunc, out)


def _wp(trunc):
    # constant term 1/12 - y/(1+y)^2 = (1 - 10y + y^2) / (12 (1+y)^2)
    rows = [(0, (1, -10, 1))]
    for d in range(1, trunc):
        acc = {}
        for m in range(1, d + 1):
            if d % m:
                continue
            sgn = -m if m % 2 else m
            acc[m] = acc.get(m, 0) + sgn
            acc[-m] = acc.get(-m, 0) + sgn
            acc[0] = acc.get(0, 0) - 2 * m
        # multiply by 12 (1+y)^2
        full = {}
        for k, c in acc.items():
            for j, b in ((0, 12), (1, 24), (2, 12)):
                full[k + j] = full.get(k + j, 0) + b * c
        lo, hi = min(full), max(full)
        rows.append((lo, tuple(full.get(k, 0) for k in range(lo, hi + 1))))
    return QYSeries(0, trunc, rows, den=12, pole=2)


@lru_cache(maxsize=None)
def generator_series(name: str, trunc: int) -> QYSeries:
    """Expansion of a single generator modulo ``q**trunc``."""
    if trunc < 1:
        raise ValueError("trunc must be at least 1")
    if name in ("E2", "E4", "E6"):
        return _eisenstein_E(int(name[1]), trunc)
    if name == "DELTA_INV":
        return eta_power(-24, trunc + 1).shift(-1)
    if name == "DELTA":
        return eta_power(24, max(trunc - 1, 1)).shift(1)
    if name == "TH2":
        p = _theta_product(trunc)
        front = QYSeries(0, trunc, [(-1, (1, 2, 1))])
        return front * p * p * eta_power(-4, trunc)
    if name == "WP":
        return _wp(trunc)
    if name == "DWP":
        return generator_series("WP", trunc).dy()
    raise KeyError(f"unknown generator {name!r}")


def eisenstein_G(k: int, trunc: int) -> QYSeries:
    """``G_k = -(B_k / 2k) E_k`` for ``k`` in 2, 4, 6."""
    if k not in BERNOULLI:
        raise UnsupportedWeight(f"weight {k} is not one of 2, 4, 6")
    return generator_series(f"E{k}", trunc).scale(-BERNOULLI[k] / (2 * k))


class GenPoly:
    """Polynomial in the generator symbols with rational coefficients.

    Monomials are 7-tuples of exponents ordered as :data:`GENERATORS`.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(mono)] = c
        self.terms = clean

    @classmethod
    def gen(cls, name):
        mono = [0] * len(GENERATORS)
        mono[_INDEX[name]] = 1
        return cls({tuple(mono): 1})

    @classmethod
    def const(cls, c):
        return cls({(0,) * len(GENERATORS): c})

    def _coerce(self, other):
        if isinstance(other, GenPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return GenPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return GenPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return GenPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return GenPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def __pow__(self, n):
        out = GenPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "GenPoly(0)"
        parts = []
        for m, c in sorted(self.terms.items()):
            sym = "*".join(g if e == 1 else f"{g}^{e}" for g, e in zip(GENERATORS, m) if e)
            parts.append(f"{c}" + (f"*{sym}" if sym else ""))
        return "GenPoly(" + " + ".join(parts) + ")"

    def partial(self, name):
        i = _INDEX[name]
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                m2 = list(m)
                m2[i] -= 1
                out[tuple(m2)] = c * m[i]
        return GenPoly(out)

    def d_dG2(self):
        """Formal anomaly derivative ``d/dG2 = -24 d/dE2``."""
        return self.partial("E2") * -24

    def max_degree(self, name):
        i = _INDEX[name]
        return max((m[i] for m in self.terms), default=0)

    def to_json_obj(self):
        out = []
        for m, c in sorted(self.terms.items()):
            out.append({"mono": {g: e for g, e in zip(GENERATORS, m) if e}, "c": fmt_rat(c)})
        return out

    def to_json(self):
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj):
        terms = {}
        for t in obj:
            m = tuple(t["mono"].get(g, 0) for g in GENERATORS)
            terms[m] = terms.get(m, 0) + parse_rat(t["c"])
        return cls(terms)


def d_dG2(p: GenPoly) -> GenPoly:
    return p.d_dG2()


E2, E4, E6, TH2, WP, DWP, DELTA_INV = (GenPoly.gen(g) for g in GENERATORS)


@lru_cache(maxsize=4096)
def _monomial_series(mono, trunc):
    """Product of generator powers; memoized by monomial."""
    nonzero = [(GENERATORS[i], e) for i, e in enumerate(mono) if e]
    if not nonzero:
        return QYSeries.one(trunc)
    if len(nonzero) == 1:
        name, e = nonzero[0]
        if e == 1:
            return generator_series(name, trunc)
        half = list(mono)
        i = _INDEX[name]
        half[i] = e // 2
        rest = list(mono)
        rest[i] = e - e // 2
        return _monomial_series(tuple(half), trunc) * _monomial_series(tuple(rest), trunc)
    first = [0] * len(mono)
    i = _INDEX[nonzero[0][0]]
    first[i] = mono[i]
    rest = list(mono)
    rest[i] = 0
    return _monomial_series(tuple(first), trunc) * _monomial_series(tuple(rest), trunc)


def expand(p: GenPoly, trunc: int) -> QYSeries:
    """Substitute generator expansions and multiply out, modulo ``q**trunc``.

    Terms are grouped by their ``y``-dependent part so that each distinct
    product of ``TH2``, ``WP`` and ``DWP`` is formed once; the ``y``-free factors
    are summed first, which keeps the two-variable multiplications few.
    """
    if not isinstance(p, GenPoly):
        p = GenPoly.const(p)
    if not p.terms:
        return QYSeries.zero(trunc)
    work = trunc + p.max_degree("DELTA_INV") + 1
    groups = {}
    for m, c in p.terms.items():
        ykey = tuple(m[i] if i in _Y_SLOTS else 0 for i in range(len(m)))
        qkey = tuple(m[i] if i in _Q_SLOTS else 0 for i in range(len(m)))
        groups.setdefault(ykey, []).append((qkey, c))
    total = None
    for ykey in sorted(groups):
        qpart = None
        for qkey, c in sorted(groups[ykey]):
            term = _monomial_series(qkey, work).scale(c)
            qpart = term if qpart is None else qpart + term
        piece = _monomial_series(ykey, work) * qpart
        total = piece if total is None else total + piece
    return total.truncate(trunc)


def verify_ramanujan(trunc: int, form: str = "G") -> bool:
    """Check ``q G2' = -2 G2^2 + 5/6 G4`` (or the ``E``-normalised version) exactly."""
    if form == "G":
        g2 = eisenstein_G(2, trunc)
        g4 = eisenstein_G(4, trunc)
        return g2.dq() == (g2 * g2).scale(-2) + g4.scale(Fraction(5, 6))
    e2 = generator_series("E2", trunc)
    e4 = generator_series("E4", trunc)
    return e2.dq() == (e2 * e2 - e4).scale(Fraction(1, 12))
