"""Integrality checks for the genus 1 GV class and the genus 2 GV invariant."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Tuple

from hksym import hilb2
from hksym.errors import TruncationTooSmall
from hksym.hilb2 import BBSquare, valid_squares
from hksym.series import fmt_rat


class Condition(NamedTuple):
    name: str
    value: Fraction
    passed: bool


@dataclass(frozen=True)
class IntegralityReport:
    bb: BBSquare
    genus: int
    conditions: Tuple[Condition, ...]

    @property
    def passed(self):
        return all(c.passed for c in self.conditions)

    def to_json_obj(self):
        return {
            "bb": fmt_rat(self.bb),
            "conditions": [{"name": c.name, "pass": c.passed, "value": fmt_rat(c.value)} for c in self.conditions],
            "genus": self.genus,
            "pass": self.passed,
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), sort_keys=True)


def _is_int(x):
    return Fraction(x).denominator == 1


def _integral(name, value):
    return Condition(name, Fraction(value), _is_int(value))


def curve_class_index(bb) -> Tuple[int, int]:
    """``(d, k)`` with ``k`` in ``{0, 1}`` and ``bb = 2d - k^2/2``."""
    bb = bb if isinstance(bb, BBSquare) else BBSquare(bb)
    if bb.is_even:
        return int(bb / 2), 0
    return int((bb + Fraction(1, 2)) / 2), 1


def curve_pairings(d: int, k: int):
    """Pairings of ``h_{d,k}^2`` against ``q1(F)^2``, ``q1(p)q1(1)``, ``q2(F)``, ``q1(W)q1(F)`` and ``c2``."""
    half = Fraction(2 * d) - Fraction(k * k, 4)
    return (Fraction(2), half, Fraction(-2 * k), half, 30 * (Fraction(2 * d) - Fraction(k * k, 2)))


def basis_coefficients(a, b, d: int, k: int) -> Tuple[Fraction, ...]:
    """Coordinates of ``a/2 h^2 + b c2`` in an integral basis of Hodge classes on a Hilbert square.

    Order: ``D(W)^2``, ``e_W``, ``D(F)^2``, ``e_F``, ``D(W)D(F)``, ``V``, ``delta^2``.
    """
    a, b = Fraction(a), Fraction(b)
    return (
        Fraction(k + 1, 2) * a,
        -k * a,
        Fraction(d * (d + k), 2) * a,
        -k * d * a,
        d * a,
        24 * b,
        Fraction(k * k, 8) * a - 3 * b,
    )


def check_gv1(bb, trunc=None) -> IntegralityReport:
    bb = bb if isinstance(bb, BBSquare) else BBSquare(bb)
    c = hilb2.gv1(bb, trunc)
    if bb.is_even:
        conds = (
            Condition("a_even", c.a, _is_int(c.a) and c.a.numerator % 2 == 0),
            _integral("3b", 3 * c.b),
        )
    else:
        conds = (
            _integral("a", c.a),
            _integral("24b", 24 * c.b),
            _integral("a/8-3b", c.a / 8 - 3 * c.b),
        )
    return IntegralityReport(bb, 1, conds)


def check_gv2(bb, trunc=None) -> IntegralityReport:
    bb = bb if isinstance(bb, BBSquare) else BBSquare(bb)
    return IntegralityReport(bb, 2, (_integral("n2", hilb2.gv2(bb, trunc)),))


def _check(genus, bb, trunc):
    return (check_gv1 if genus == 1 else check_gv2)(bb, trunc)


def _check_chunk(args):
    genus, squares, trunc = args
    return [_check(genus, bb, trunc) for bb in squares]


def sweep(genus: int, max_bb, trunc: int = None, jobs: int = 1) -> List[IntegralityReport]:
    """Reports for every valid square in ``[-5/2, max_bb]``, in ascending order.

    Failures are reported, not raised. With ``jobs > 1`` the squares are split
    into contiguous chunks handled by worker processes; output order is unchanged.
    """
    if genus not in (1, 2):
        raise ValueError("genus must be 1 or 2")
    trunc = hilb2.DEFAULT_TRUNC if trunc is None else trunc
    squares = valid_squares(hilb2.MIN_SQUARE, max_bb)
    if squares and squares[-1].required_trunc() > trunc:
        raise TruncationTooSmall(f"square {squares[-1]} needs truncation {squares[-1].required_trunc()}, have {trunc}")
    if jobs <= 1 or len(squares) < 2:
        return [_check(genus, bb, trunc) for bb in squares]
    size = -(-len(squares) // jobs)
    chunks = [(genus, squares[i:i + size], trunc) for i in range(0, len(squares), size)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return [r for part in ex.map(_check_chunk, chunks) for r in part]


def sweep_json_lines(reports) -> str:
    return "".join(r.to_json() + "\n" for r in reports)
