"""Truncated two-variable series over the rationals.

A :class:`QYSeries` is a Laurent series in ``q``, known modulo ``q**trunc``, whose
coefficients are Laurent polynomials in ``y`` divided by a power of ``(1+y)``.
Internally the whole series shares one integer denominator and one power of
``(1+y)``, so every ``q``-row is stored as a plain list of integers and products
reduce to integer convolutions (see :mod:`hksym.kernel`).
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm

from hksym import kernel
from hksym.errors import NotAUnit, OutOfRange, PoleAtMinusOne

Rat = Fraction

_ZERO_ROW = (0, ())


def fmt_rat(x) -> str:
    """Render a rational as ``"num/den"`` (always with a denominator)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str) -> Fraction:
    return Fraction(s)


# --------------------------------------------------------------------------- y-side


class YPoly:
    """Sparse Laurent polynomial in ``y`` with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {0: terms}
        self.terms = {int(e): Fraction(c) for e, c in terms.items() if c}

    @classmethod
    def monomial(cls, c, e=0):
        return cls({e: c})

    @classmethod
    def from_row(cls, lo, row, den=1):
        return cls({lo + i: Fraction(c, den) for i, c in enumerate(row) if c})

    def is_zero(self):
        return not self.terms

    def coeff(self, k):
        return self.terms.get(k, Fraction(0))

    def is_unit_monomial(self):
        return len(self.terms) == 1

    def span(self):
        """``(min exponent, max exponent)``; ``None`` for zero."""
        if not self.terms:
            return None
        return min(self.terms), max(self.terms)

    def __add__(self, other):
        other = _as_ypoly(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return YPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return YPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_ypoly(other))

    def __rsub__(self, other):
        return _as_ypoly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return YPoly({e: c * other for e, c in self.terms.items()})
        other = _as_ypoly(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return YPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = YPoly({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = YPoly(other)
        return isinstance(other, YPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "YPoly(0)"
        parts = [f"{c}*y^{e}" for e, c in sorted(self.terms.items())]
        return "YPoly(" + " + ".join(parts) + ")"

    def at_minus_one(self):
        return sum((c if e % 2 == 0 else -c) for e, c in self.terms.items())

    def div_one_plus_y(self):
        """Exact quotient by ``(1+y)``; raises if the division is not exact."""
        if not self.terms:
            return YPoly()
        lo, hi = self.span()
        quot = {}
        prev = Fraction(0)
        for e in range(lo, hi):
            prev = self.terms.get(e, 0) - prev
            quot[e] = prev
        if self.terms.get(hi, 0) != prev:
            raise ArithmeticError("(1+y) does not divide the polynomial")
        return YPoly(quot)

    def dy(self):
        """``y d/dy``."""
        return YPoly({e: e * c for e, c in self.terms.items()})

    def invert_y(self):
        return YPoly({-e: c for e, c in self.terms.items()})


def _as_ypoly(x):
    return x if isinstance(x, YPoly) else YPoly(x)


ONE_PLUS_Y = YPoly({0: 1, 1: 1})


class YRat:
    """``poly / (1+y)**denom_pow`` in lowest terms with respect to ``(1+y)``."""

    __slots__ = ("poly", "denom_pow")

    def __init__(self, poly, denom_pow=0):
        poly = _as_ypoly(poly)
        if denom_pow < 0:
            poly = poly * ONE_PLUS_Y ** (-denom_pow)
            denom_pow = 0
        while denom_pow and not poly.is_zero() and poly.at_minus_one() == 0:
            poly = poly.div_one_plus_y()
            denom_pow -= 1
        if poly.is_zero():
            denom_pow = 0
        self.poly = poly
        self.denom_pow = denom_pow

    def is_zero(self):
        return self.poly.is_zero()

    def coeff(self, k):
        if self.denom_pow:
            raise PoleAtMinusOne(f"coefficient has a pole of order {self.denom_pow} at y=-1")
        return self.poly.coeff(k)

    def _aligned(self, other):
        other = other if isinstance(other, YRat) else YRat(other)
        m = max(self.denom_pow, other.denom_pow)
        p1 = self.poly * ONE_PLUS_Y ** (m - self.denom_pow)
        p2 = other.poly * ONE_PLUS_Y ** (m - other.denom_pow)
        return p1, p2, m

    def __add__(self, other):
        p1, p2, m = self._aligned(other)
        return YRat(p1 + p2, m)

    __radd__ = __add__

    def __neg__(self):
        return YRat(-self.poly, self.denom_pow)

    def __sub__(self, other):
        p1, p2, m = self._aligned(other)
        return YRat(p1 - p2, m)

    def __rsub__(self, other):
        return YRat(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return YRat(self.poly * other, self.denom_pow)
        other = other if isinstance(other, YRat) else YRat(other)
        return YRat(self.poly * other.poly, self.denom_pow + other.denom_pow)

    __rmul__ = __mul__

    def inv_monomial(self):
        if self.denom_pow or not self.poly.is_unit_monomial():
            raise NotAUnit("only monomials c*y^e are invertible")
        (e, c), = self.poly.terms.items()
        return YRat(YPoly({-e: 1 / c}))

    def dy(self):
        """``y d/dy`` via the quotient rule."""
        m = self.denom_pow
        p = self.poly
        if m == 0:
            return YRat(p.dy())
        y = YPoly({1: 1})
        return YRat(p.dy() * ONE_PLUS_Y - y * p * m, m + 1)

    def __eq__(self, other):
        if not isinstance(other, YRat):
            if isinstance(other, (int, Fraction, YPoly)):
                other = YRat(other)
            else:
                return NotImplemented
        return self.denom_pow == other.denom_pow and self.poly == other.poly

    def __hash__(self):
        return hash((self.poly, self.denom_pow))

    def __repr__(self):
        if self.denom_pow:
            return f"YRat({self.poly!r} / (1+y)^{self.denom_pow})"
        return f"YRat({self.poly!r})"


# --------------------------------------------------------------------------- rows


def _row_at_minus_one(lo, row):
    s = 0
    for i, c in enumerate(row):
        if c:
            s += c if (lo + i) % 2 == 0 else -c
    return s


def _row_div_one_plus_y(lo, row):
    if not row:
        return _ZERO_ROW
    out = []
    prev = 0
    for c in row[:-1]:
        prev = c - prev
        out.append(prev)
    return (lo, tuple(out))


def _row_times_one_plus_y(lo, row, times=1):
    for _ in range(times):
        if not row:
            return _ZERO_ROW
        new = [0] * (len(row) + 1)
        for i, c in enumerate(row):
            new[i] += c
            new[i + 1] += c
        row = tuple(new)
    return (lo, tuple(row))


def _trim(lo, row):
    i, j = 0, len(row)
    while i < j and not row[i]:
        i += 1
    while j > i and not row[j - 1]:
        j -= 1
    if i == j:
        return _ZERO_ROW
    return (lo + i, tuple(row[i:j]))


def _scale_rows(rows, k):
    if k == 1:
        return rows
    return tuple((lo, tuple(c * k for c in r)) for lo, r in rows)


class QYSeries:
    """Truncated Laurent series in ``q`` with :class:`YRat` coefficients.

    The series is ``q**lead * sum_i q**i * rows[i](y) / (den * (1+y)**pole)``,
    known modulo ``q**trunc``.
    """

    __slots__ = ("lead", "trunc", "_den", "_pole", "_rows")

    def __init__(self, lead, trunc, rows, den=1, pole=0):
        lead, trunc = int(lead), int(trunc)
        if trunc <= lead:
            raise OutOfRange(f"trunc={trunc} must exceed lead={lead}")
        rows = [_trim(lo, r) for lo, r in rows][: trunc - lead]
        rows += [_ZERO_ROW] * (trunc - lead - len(rows))
        if den <= 0:
            if den == 0:
                raise ZeroDivisionError("series denominator is zero")
            den = -den
            rows = [(lo, tuple(-c for c in r)) for lo, r in rows]
        start = 0
        while start < len(rows) and not rows[start][1]:
            start += 1
        if start == len(rows):
            self.lead, self.trunc = trunc - 1, trunc
            self._den, self._pole, self._rows = 1, 0, (_ZERO_ROW,)
            return
        lead += start
        rows = rows[start:]
        while pole > 0 and all(not r or _row_at_minus_one(lo, r) == 0 for lo, r in rows):
            rows = [_trim(*_row_div_one_plus_y(lo, r)) for lo, r in rows]
            pole -= 1
        g = den
        for _, r in rows:
            for c in r:
                if g == 1:
                    break
                g = gcd(g, c)
        if g > 1:
            den //= g
            rows = [(lo, tuple(c // g for c in r)) for lo, r in rows]
        self.lead, self.trunc = lead, trunc
        self._den, self._pole, self._rows = den, pole, tuple(rows)

    # ---- constructors

    @classmethod
    def zero(cls, trunc, lead=None):
        return cls(trunc - 1 if lead is None else lead, trunc, [])

    @classmethod
    def one(cls, trunc):
        return cls.constant(1, trunc)

    @classmethod
    def constant(cls, c, trunc):
        c = Fraction(c)
        return cls(0, trunc, [(0, (c.numerator,))], den=c.denominator)

    @classmethod
    def from_q_coeffs(cls, coeffs, lead=0, trunc=None):
        """A ``y``-independent series from a list of rationals starting at ``q**lead``."""
        coeffs = [Fraction(c) for c in coeffs]
        if trunc is None:
            trunc = lead + len(coeffs)
        den = 1
        for c in coeffs:
            den = lcm(den, c.denominator)
        rows = [(0, (int(c * den),)) for c in coeffs]
        return cls(lead, trunc, rows, den=den)

    @classmethod
    def from_coeffs(cls, lead, trunc, coeffs):
        """Build from per-order coefficients (``YRat``, ``YPoly``, dict or rational)."""
        yrats = []
        for c in coeffs:
            if isinstance(c, YRat):
                yrats.append(c)
            elif isinstance(c, dict):
                yrats.append(YRat(YPoly(c)))
            else:
                yrats.append(YRat(c))
        pole = max((c.denom_pow for c in yrats), default=0)
        polys = [c.poly * ONE_PLUS_Y ** (pole - c.denom_pow) for c in yrats]
        den = 1
        for p in polys:
            for v in p.terms.values():
                den = lcm(den, v.denominator)
        rows = []
        for p in polys:
            if p.is_zero():
                rows.append(_ZERO_ROW)
                continue
            lo, hi = p.span()
            rows.append((lo, tuple(int(p.coeff(e) * den) for e in range(lo, hi + 1))))
        return cls(lead, trunc, rows, den=den, pole=pole)

    @classmethod
    def from_entries(cls, lead, trunc, entries, denom_pow=0):
        """Build from ``{(d, k): value}`` (numerator coefficients over ``(1+y)**denom_pow``)."""
        by_d = {}
        for (d, k), v in entries.items():
            by_d.setdefault(d, {})[k] = Fraction(v)
        coeffs = [YRat(YPoly(by_d.get(d, {})), denom_pow) for d in range(lead, trunc)]
        return cls.from_coeffs(lead, trunc, coeffs)

    # ---- accessors

    @property
    def denom_pow(self):
        """Common power of ``(1+y)`` in the denominator (0 means pole-free)."""
        return self._pole

    @property
    def coeffs(self):
        """Tuple of normalized :class:`YRat` for exponents ``lead .. trunc-1``."""
        return tuple(self.coeff_yrat(d) for d in range(self.lead, self.trunc))

    def coeff_yrat(self, d):
        if d >= self.trunc:
            raise OutOfRange(f"q^{d} is beyond the truncation q^{self.trunc}")
        i = d - self.lead
        if i < 0 or i >= len(self._rows):
            return YRat(YPoly())
        lo, r = self._rows[i]
        return YRat(YPoly.from_row(lo, r, self._den), self._pole)

    def coeff(self, d, k):
        """The ``q**d y**k`` coefficient of a pole-free ``q**d`` term."""
        if d >= self.trunc:
            raise OutOfRange(f"q^{d} is beyond the truncation q^{self.trunc}")
        if d < self.lead:
            return Fraction(0)
        return self.coeff_yrat(d).coeff(k)

    def is_zero(self):
        return not self._rows[0][1]

    def is_y_free(self):
        return self._pole == 0 and all(not r or (lo == 0 and len(r) == 1) for lo, r in self._rows)

    def q_coeffs(self):
        """Rationals at ``q**lead .. q**(trunc-1)`` of a ``y``-free series."""
        if not self.is_y_free():
            raise ValueError("series depends on y")
        out = [Fraction(r[0], self._den) if r else Fraction(0) for _, r in self._rows]
        return out + [Fraction(0)] * (self.trunc - self.lead - len(out))

    def is_y_symmetric(self):
        """True when every coefficient is invariant under ``y -> 1/y``."""
        # (1+y^-1)^m = y^-m (1+y)^m, so the numerator must satisfy P(1/y) = y^-m P(y)
        m = self._pole
        for lo, r in self._rows:
            if not r:
                continue
            hi = lo + len(r) - 1
            if lo + hi != m or tuple(reversed(r)) != r:
                return False
        return True

    def is_y_antisymmetric(self):
        m = self._pole
        for lo, r in self._rows:
            if not r:
                continue
            hi = lo + len(r) - 1
            if lo + hi != m or tuple(-c for c in reversed(r)) != r:
                return False
        return True

    # ---- arithmetic

    def _coerce(self, other):
        if isinstance(other, QYSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return QYSeries.constant(other, max(self.trunc, 1))
        return NotImplemented

    def _lifted(self, pole, den):
        """Rows rescaled to a common ``pole`` and ``den``."""
        rows = self._rows
        if pole > self._pole:
            rows = tuple(_row_times_one_plus_y(lo, r, pole - self._pole) for lo, r in rows)
        return _scale_rows(rows, den // self._den)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        trunc = min(self.trunc, other.trunc)
        if self.is_zero():
            return other.truncate(trunc)
        if other.is_zero():
            return self.truncate(trunc)
        pole = max(self._pole, other._pole)
        den = lcm(self._den, other._den)
        ra = self._lifted(pole, den)
        rb = other._lifted(pole, den)
        lead = min(self.lead, other.lead)
        if lead >= trunc:
            return QYSeries.zero(trunc)
        acc = [dict() for _ in range(trunc - lead)]
        for start, rows in ((self.lead, ra), (other.lead, rb)):
            for i, (lo, r) in enumerate(rows):
                j = start + i - lead
                if j >= len(acc):
                    break
                bucket = acc[j]
                for k, c in enumerate(r):
                    if c:
                        bucket[lo + k] = bucket.get(lo + k, 0) + c
        rows = []
        for bucket in acc:
            keys = [e for e, c in bucket.items() if c]
            if not keys:
                rows.append(_ZERO_ROW)
                continue
            lo, hi = min(keys), max(keys)
            rows.append((lo, tuple(bucket.get(e, 0) for e in range(lo, hi + 1))))
        return QYSeries(lead, trunc, rows, den=den, pole=pole)

    __radd__ = __add__

    def __neg__(self):
        return QYSeries(self.lead, self.trunc, [(lo, tuple(-c for c in r)) for lo, r in self._rows],
                        den=self._den, pole=self._pole)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return QYSeries.zero(self.trunc)
        rows = _scale_rows(self._rows, c.numerator)
        return QYSeries(self.lead, self.trunc, rows, den=self._den * c.denominator, pole=self._pole)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QYSeries):
            return NotImplemented
        lead = self.lead + other.lead
        trunc = min(self.trunc + other.lead, other.trunc + self.lead)
        if self.is_zero() or other.is_zero():
            return QYSeries.zero(trunc)
        n = trunc - lead
        rows = kernel.mul_rows([(lo, list(r)) for lo, r in self._rows],
                               [(lo, list(r)) for lo, r in other._rows], n)
        return QYSeries(lead, trunc, rows, den=self._den * other._den, pole=self._pole + other._pole)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        return self * other.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            # x**0 is exactly 1; keep at least the operand's absolute precision
            return QYSeries.one(max(self.trunc, self.trunc - self.lead))
        return result

    def inv(self):
        """Multiplicative inverse; the leading coefficient must be ``c * y**e``."""
        if self.is_zero():
            raise NotAUnit("the zero series is not invertible")
        a = self.coeffs
        a0inv = a[0].inv_monomial()
        la = self.lead
        n = self.trunc - la
        b = [a0inv]
        for k in range(1, n):
            s = YRat(YPoly())
            for i in range(1, k + 1):
                if not a[i].is_zero() and not b[k - i].is_zero():
                    s = s + a[i] * b[k - i]
            b.append(-(a0inv * s))
        return QYSeries.from_coeffs(-la, self.trunc - 2 * la, b)

    def dq(self):
        """``q d/dq``."""
        rows = [(lo, tuple(c * (self.lead + i) for c in r)) for i, (lo, r) in enumerate(self._rows)]
        return QYSeries(self.lead, self.trunc, rows, den=self._den, pole=self._pole)

    def dy(self):
        """``y d/dy``, through the quotient rule when a pole is present."""
        m = self._pole
        rows = []
        for lo, r in self._rows:
            if not r:
                rows.append(_ZERO_ROW)
                continue
            d = [c * (lo + k) for k, c in enumerate(r)]
            if m == 0:
                rows.append((lo, tuple(d)))
                continue
            # yP'(1+y) - m y P, expressed from exponent lo
            new = [0] * (len(r) + 1)
            for k, c in enumerate(d):
                new[k] += c
                new[k + 1] += c
            for k, c in enumerate(r):
                new[k + 1] -= m * c
            rows.append((lo, tuple(new)))
        return QYSeries(self.lead, self.trunc, rows, den=self._den, pole=m + (1 if m else 0))

    def shift(self, k):
        """Multiply by ``q**k``."""
        return QYSeries(self.lead + k, self.trunc + k, self._rows, den=self._den, pole=self._pole)

    def truncate(self, trunc):
        trunc = min(trunc, self.trunc)
        if trunc <= self.lead:
            return QYSeries.zero(trunc)
        return QYSeries(self.lead, trunc, self._rows, den=self._den, pole=self._pole)

    def substitute_y_inverse(self):
        """``y -> 1/y``."""
        m = self._pole
        rows = []
        for lo, r in self._rows:
            if not r:
                rows.append(_ZERO_ROW)
                continue
            hi = lo + len(r) - 1
            rows.append((m - hi, tuple(reversed(r))))
        return QYSeries(self.lead, self.trunc, rows, den=self._den, pole=m)

    # ---- comparison and serialization

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QYSeries.constant(other, self.trunc)
        if not isinstance(other, QYSeries):
            return NotImplemented
        return (self.lead, self.trunc, self._den, self._pole, self._rows) == (
            other.lead, other.trunc, other._den, other._pole, other._rows)

    def __hash__(self):
        return hash((self.lead, self.trunc, self._den, self._pole, self._rows))

    def agrees_with(self, other, trunc=None):
        """Equality after truncating both sides to a common order."""
        t = min(self.trunc, other.trunc) if trunc is None else trunc
        return self.truncate(t) == other.truncate(t)

    def entries(self):
        """Nonzero ``(d, k, value)`` triples of the numerator over ``(1+y)**denom_pow``."""
        for i, (lo, r) in enumerate(self._rows):
            for k, c in enumerate(r):
                if c:
                    yield self.lead + i, lo + k, Fraction(c, self._den)

    def to_json_obj(self):
        obj = {
            "lead": self.lead,
            "trunc": self.trunc,
            "coeffs": [{"d": d, "k": k, "v": fmt_rat(v)} for d, k, v in self.entries()],
        }
        if self._pole:
            obj["denom_pow"] = self._pole
        return obj

    def to_json(self):
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj):
        entries = {(e["d"], e["k"]): parse_rat(e["v"]) for e in obj["coeffs"]}
        return cls.from_entries(obj["lead"], obj["trunc"], entries, obj.get("denom_pow", 0))

    @classmethod
    def from_json(cls, s):
        return cls.from_json_obj(json.loads(s))

    def __repr__(self):
        head = []
        for d in range(self.lead, min(self.trunc, self.lead + 3)):
            c = self.coeff_yrat(d)
            if not c.is_zero():
                head.append(f"({c!r})q^{d}")
        body = " + ".join(head) if head else "0"
        return f"QYSeries({body} + O(q^{self.trunc}))"


# --------------------------------------------------------------------------- eta products


def divisor_sigma(n, k=1):
    if n <= 0:
        return 0
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


def eta_power(e, trunc):
    """``prod_{n>=1} (1-q^n)**e`` modulo ``q**trunc``.

    Uses the logarithmic-derivative recursion ``n f_n = -e sum_k sigma(k) f_{n-k}``.
    """
    if trunc <= 0:
        raise OutOfRange("trunc must be positive")
    sig = [0] + [divisor_sigma(k) for k in range(1, trunc)]
    f = [Fraction(1)]
    for n in range(1, trunc):
        s = sum(sig[k] * f[n - k] for k in range(1, n + 1))
        f.append(Fraction(-e * s, n))
    return QYSeries.from_q_coeffs(f, 0, trunc)
