"""Command-line front end.

    hksym series NAME [--trunc N] [--format text|json|csv|md]
    hksym table {gv1,gv2,fujiki-hilb,fujiki-kummer} [--max Q] [--max-n N]
    hksym check {all,ramanujan,anomaly,...} [--trunc N] [--jobs N]

Exit status: 0 on success, 1 when a check fails, 2 on usage or configuration errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from hksym import enumerative, geometries, hilb2, integrality, qjacobi
from hksym.enumerative import md_rat
from hksym.errors import HksymError, TruncationTooSmall
from hksym.series import QYSeries, fmt_rat, parse_rat

FORMATS = ("json", "csv", "md", "text")
SERIES_CATALOG = hilb2.FORM_NAMES + enumerative.N_NAMES + ("E2", "E4", "E6", "Delta", "Theta2", "Wp")
TABLES = ("gv1", "gv2", "fujiki-hilb", "fujiki-kummer")
SUITES = ("ramanujan", "anomaly", "beta-welldef", "integrality-g1", "integrality-g2",
          "k3xk3", "tp2", "ercf", "fano")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    trunc: int = 75
    jobs: int = 1
    format: Optional[str] = None
    out: Optional[str] = None

    def __post_init__(self):
        if self.trunc < 2:
            raise TruncationTooSmall("trunc must be at least 2")
        if self.jobs < 1:
            raise HksymError("jobs must be at least 1")


def _default_trunc():
    raw = os.environ.get("HKSYM_TRUNC")
    return int(raw) if raw else hilb2.DEFAULT_TRUNC


def _emit(text: str, cfg: RunConfig):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------- series


_GENERATOR_ALIASES = {"E2": "E2", "E4": "E4", "E6": "E6", "Delta": "DELTA", "Theta2": "TH2", "Wp": "WP"}


def catalog_series(name: str, trunc: int) -> QYSeries:
    if name in hilb2.FORM_NAMES:
        return hilb2.form_series(name, trunc)
    if name in enumerative.N_NAMES:
        return enumerative.n_generating_series(name, trunc)
    if name in _GENERATOR_ALIASES:
        return qjacobi.generator_series(_GENERATOR_ALIASES[name], trunc)
    raise KeyError(name)


def _text_coeff(terms):
    parts = []
    for k, v in terms:
        mono = "" if k == 0 else ("y" if k == 1 else f"y^{k}")
        if not mono:
            parts.append(md_rat(v))
        elif v == 1:
            parts.append(mono)
        elif v == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{md_rat(v)}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def render_series(name: str, s: QYSeries, fmt: str) -> str:
    rows: Dict[int, list] = {}
    for d, k, v in s.entries():
        rows.setdefault(d, []).append((k, v))
    pole = s.denom_pow
    if fmt == "json":
        obj = dict(s.to_json_obj(), name=name)
        return json.dumps(obj, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if s.is_y_free():
            w.writerow(["d", "value"])
            for d, k, v in s.entries():
                w.writerow([d, fmt_rat(v)])
        else:
            w.writerow(["d", "k", "value"] + (["denom_pow"] if pole else []))
            for d, k, v in s.entries():
                w.writerow([d, k, fmt_rat(v)] + ([pole] if pole else []))
        return buf.getvalue()
    if fmt == "md":
        lines = ["| d | k | value |", "| --- | --- | --- |"]
        lines += [f"| {d} | {k} | {md_rat(v)} |" for d, k, v in s.entries()]
        if pole:
            lines.append(f"\nCoefficients are numerators over (1+y)^{pole}.")
        return "\n".join(lines) + "\n"
    out = [f"{name} mod q^{s.trunc}" + (f", numerators over (1+y)^{pole}" if pole else "")]
    for d in sorted(rows):
        out.append(f"q^{d}: {_text_coeff(rows[d])}")
    if not rows:
        out.append("0")
    return "\n".join(out) + "\n"


def cmd_series(name: str, cfg: RunConfig) -> int:
    if name not in SERIES_CATALOG:
        print(f"unknown series {name!r}; choose from {', '.join(SERIES_CATALOG)}", file=sys.stderr)
        return EXIT_USAGE
    s = catalog_series(name, cfg.trunc)
    _emit(render_series(name, s, cfg.format or "text"), cfg)
    return EXIT_OK


# --------------------------------------------------------------------------- tables


def _render_rows(header, rows, fmt):
    if fmt == "md":
        lines = ["| " + " | ".join(header) + " |", "|" + " --- |" * len(header)]
        lines += ["| " + " | ".join(md_rat(x) for x in r) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt_rat(x) for x in r])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([dict(zip(header, map(fmt_rat, r))) for r in rows], sort_keys=True) + "\n"
    width = [max(len(h), *(len(md_rat(r[i])) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, width))]
    lines += ["  ".join(md_rat(x).rjust(w) for x, w in zip(r, width)) for r in rows]
    return "\n".join(lines) + "\n"


def _check_range(max_bb, trunc):
    squares = hilb2.valid_squares(hilb2.MIN_SQUARE, max_bb)
    if squares and squares[-1].required_trunc() > trunc:
        raise TruncationTooSmall(f"square {squares[-1]} needs truncation {squares[-1].required_trunc()}, have {trunc}")
    return squares


def gv1_rows(max_bb, trunc):
    rows = []
    for bb in _check_range(max_bb, trunc):
        c = hilb2.gv1(bb, trunc)
        rows.append((Fraction(bb), c.a, c.b))
    return rows


def gv2_rows(max_bb, trunc):
    return [(Fraction(bb), hilb2.gv2(bb, trunc)) for bb in _check_range(max_bb, trunc)]


def cmd_table(which: str, cfg: RunConfig, max_bb=None, max_n=None) -> int:
    fmt = cfg.format or "md"
    if which == "gv1":
        text = _render_rows(["(β,β)", "a", "b"], gv1_rows(Fraction(24) if max_bb is None else max_bb, cfg.trunc), fmt)
    elif which == "gv2":
        text = _render_rows(["(β,β)", "n2"], gv2_rows(Fraction(79, 2) if max_bb is None else max_bb, cfg.trunc), fmt)
    else:
        family = "hilb" if which == "fujiki-hilb" else "kummer"
        n = 6 if max_n is None else max_n
        if n < 0:
            raise HksymError("--max-n must be non-negative")
        if fmt == "md":
            text = enumerative.fujiki_markdown(n, family)
        elif fmt == "csv":
            text = enumerative.fujiki_csv(n, family)
        else:
            grid = enumerative.fujiki_grid(n, family)
            rows = [(Fraction(k[0]), Fraction(2 * k[1]), v) for k, v in sorted(grid.items())]
            text = _render_rows(["n", "j", "value"], rows, fmt)
    _emit(text, cfg)
    return EXIT_OK


# --------------------------------------------------------------------------- checks


def _result(suite, name, passed, **detail):
    return dict(detail, suite=suite, name=name, **{"pass": bool(passed)})


def _suite_ramanujan(cfg):
    order = min(cfg.trunc, 40)
    return [_result("ramanujan", f"{form}-normalised", qjacobi.verify_ramanujan(order, form), order=order)
            for form in ("G", "E")]


def _suite_anomaly(cfg):
    order = 20
    if cfg.trunc < order:
        raise TruncationTooSmall(f"anomaly checks run to q^{order}, have truncation {cfg.trunc}")
    return [
        _result("anomaly", "genus2", hilb2.anomaly_genus2(order), order=order),
        _result("anomaly", "genus1", hilb2.anomaly_genus1(order), order=order),
    ]


def _suite_welldef(cfg):
    max_bb = 30
    squares = hilb2.valid_squares(hilb2.MIN_SQUARE, max_bb)
    need = squares[-1].representatives()[1][1] + 1
    if cfg.trunc < need:
        raise TruncationTooSmall(f"cross-checks up to square {max_bb} need truncation {need}, have {cfg.trunc}")
    out = []
    for name in hilb2.FORM_NAMES:
        s = hilb2.form_series(name, cfg.trunc)
        bad = []
        for bb in squares:
            try:
                hilb2.beta_coeff(s, bb, check=True)
            except HksymError:
                bad.append(fmt_rat(bb))
        out.append(_result("beta-welldef", name, not bad, failures=bad))
    return out


def _suite_integrality(genus, max_bb):
    def run(cfg):
        reports = integrality.sweep(genus, max_bb, cfg.trunc, cfg.jobs)
        failed = [fmt_rat(r.bb) for r in reports if not r.passed]
        return [_result(f"integrality-g{genus}", f"sweep<={max_bb}", not failed, count=len(reports), failures=failed)]
    return run


def _suite_k3xk3(cfg):
    rng = random.Random(20240)
    out = []
    for l in range(-1, 11):
        for m in (1, 2, 3, 4, 6):
            data = geometries.KunnethData(*(rng.randint(-3, 3) for _ in range(9)))
            for c in geometries.k3xk3_verify(geometries.K3Class(l, m), data):
                out.append(_result("k3xk3", f"{c.geometry}:{c.identity}", c.passed, lhs=fmt_rat(c.lhs), rhs=fmt_rat(c.rhs)))
    return out


def _suite_tp2(cfg):
    out = []
    for d in (1, 2, 3):
        for c in geometries.tstarp2_verify(d):
            out.append(_result("tp2", f"{c.geometry}:{c.identity}", c.passed, lhs=fmt_rat(c.lhs), rhs=fmt_rat(c.rhs)))
    n0 = [geometries.tstarp2_gv(d)[0] for d in range(1, 7)]
    expected = [1, -1, 0, 0, 0, 0]
    out.append(_result("tp2", "gv0 d=1..6", n0 == expected, values=[fmt_rat(x) for x in n0]))
    return out


def _suite_ercf(cfg):
    rng = random.Random(7)
    out = []
    for _ in range(5):
        vals = [Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(6)]
        data = geometries.ERCFData(*vals, n_markings=rng.randint(0, 3), fiber_tangent_cubed=rng.randint(-9, 9))
        for c in geometries.ercf_verify(data):
            out.append(_result("ercf", f"{c.geometry}:{c.identity}", c.passed, lhs=fmt_rat(c.lhs), rhs=fmt_rat(c.rhs)))
    return out


def _suite_fano(cfg):
    from hksym.transforms import gv2_primitive, nodal_weight

    bb = Fraction(3, 2)
    if hilb2.BBSquare(bb).required_trunc() + 2 > cfg.trunc:
        raise TruncationTooSmall(f"the square 3/2 needs truncation {hilb2.BBSquare(bb).required_trunc() + 2}")
    gw2 = hilb2.beta_coeff(hilb2.form_series("I", cfg.trunc), bb)
    n1c2 = hilb2.gv1_c2(bb, cfg.trunc)
    c2c2 = hilb2.g0_two_point(bb, hilb2.C2, hilb2.C2, cfg.trunc)
    nodal = hilb2.nodal_k3hilb(bb, cfg.trunc)
    expected = (Fraction(-11445, 128), Fraction(5985), Fraction(2835), Fraction(3780))
    got = (gw2, n1c2, c2c2, nodal)
    return [
        _result("fano", "quadruple", got == expected, values=[fmt_rat(x) for x in got]),
        _result("fano", "n2=0", gv2_primitive(*got) == 0),
        _result("fano", "nodal weight 1/24", nodal_weight(*got) - Fraction(1, 24) == 0),
    ]


SUITE_FUNCS: Dict[str, Callable[[RunConfig], List[dict]]] = {
    "ramanujan": _suite_ramanujan,
    "anomaly": _suite_anomaly,
    "beta-welldef": _suite_welldef,
    "integrality-g1": _suite_integrality(1, 100),
    "integrality-g2": _suite_integrality(2, 138),
    "k3xk3": _suite_k3xk3,
    "tp2": _suite_tp2,
    "ercf": _suite_ercf,
    "fano": _suite_fano,
}


def run_suite(name: str, cfg: RunConfig) -> List[dict]:
    try:
        return SUITE_FUNCS[name](cfg)
    except HksymError as exc:
        return [_result(name, "error", False, error=f"{type(exc).__name__}: {exc}")]


def cmd_check(suite: str, cfg: RunConfig) -> int:
    names = SUITES if suite == "all" else (suite,)
    results = [r for n in names for r in run_suite(n, cfg)]
    ok = all(r["pass"] for r in results)
    fmt = cfg.format or "json"
    if fmt == "json":
        text = json.dumps({"pass": ok, "results": results}, sort_keys=True, indent=1) + "\n"
    else:
        lines = [f"{'PASS' if r['pass'] else 'FAIL'}  {r['suite']}  {r['name']}" + (f"  {r['error']}" if "error" in r else "")
                 for r in results]
        lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    _emit(text, cfg)
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------- entry point


def _rat_arg(s):
    try:
        return parse_rat(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trunc", type=int, default=None, help="q-truncation order (default: $HKSYM_TRUNC or 75)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--out", default=None, help="write to this path instead of stdout")

    ap = argparse.ArgumentParser(prog="hksym", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", parents=[common], help="print a series expansion")
    p.add_argument("name", help="one of " + ", ".join(SERIES_CATALOG))

    p = sub.add_parser("table", parents=[common], help="print an invariant table")
    p.add_argument("which", choices=TABLES)
    p.add_argument("--max", type=_rat_arg, default=None, help="largest square (gv1, gv2)")
    p.add_argument("--max-n", type=int, default=None, help="largest n (fujiki tables)")

    p = sub.add_parser("check", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=("all",) + SUITES)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = RunConfig(
            trunc=_default_trunc() if args.trunc is None else args.trunc,
            jobs=args.jobs,
            format=args.format,
            out=args.out,
        )
    except (HksymError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "check":
        return cmd_check(args.suite, cfg)
    try:
        if args.command == "series":
            return cmd_series(args.name, cfg)
        return cmd_table(args.which, cfg, max_bb=args.max, max_n=args.max_n)
    except HksymError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
