import random

import pytest
from hypothesis import given, strategies as st

from hksym import _kernel_py, kernel


def brute(a, b, n):
    acc = [dict() for _ in range(n)]
    for i, (la, ra) in enumerate(a):
        for j, (lb, rb) in enumerate(b):
            if i + j >= n:
                continue
            for x, ca in enumerate(ra):
                for y, cb in enumerate(rb):
                    k = la + lb + x + y
                    acc[i + j][k] = acc[i + j].get(k, 0) + ca * cb
    out = []
    for d in acc:
        d = {k: v for k, v in d.items() if v}
        if not d:
            out.append((0, []))
            continue
        lo, hi = min(d), max(d)
        out.append((lo, [d.get(k, 0) for k in range(lo, hi + 1)]))
    return out


def normalize(rows, n):
    rows = [(lo, list(r)) for lo, r in rows][:n]
    return rows + [(0, [])] * (n - len(rows))


row = st.tuples(st.integers(-4, 4), st.lists(st.integers(-10**30, 10**30), max_size=6)).map(
    lambda t: (t[0], t[1]) if any(t[1]) else (0, []))
rows = st.lists(row, min_size=1, max_size=6)


@given(rows, rows, st.integers(1, 7))
def test_schoolbook_matches_brute_force(a, b, n):
    expect = brute(a, b, n)
    assert normalize(kernel.mul_rows(a, b, n, method="school"), n) == expect
    assert normalize(_kernel_py.mul_rows(a, b, n), n) == expect


@given(rows, rows, st.integers(1, 7))
def test_kronecker_matches_brute_force(a, b, n):
    assert normalize(kernel.mul_rows(a, b, n, method="kronecker"), n) == brute(a, b, n)


def test_large_product_takes_kronecker_path():
    rng = random.Random(3)
    a = [(-20, [rng.randint(-10**40, 10**40) for _ in range(41)]) for _ in range(30)]
    b = [(-20, [rng.randint(-10**40, 10**40) for _ in range(41)]) for _ in range(30)]
    assert kernel.work_estimate(a, b, 30) > kernel.KRONECKER_THRESHOLD
    assert normalize(kernel.mul_rows(a, b, 30), 30) == normalize(_kernel_py.mul_rows(a, b, 30), 30)


def test_backend_is_reported():
    assert kernel.BACKEND in ("cython", "python")


def test_compiled_backend_agrees_with_fallback():
    pytest.importorskip("hksym._kernel")
    from hksym import _kernel

    a = [(0, [1, 2, 3]), (-1, [4, 0, -5])]
    b = [(2, [7]), (0, [1, 1])]
    assert normalize(_kernel.mul_rows(a, b, 2), 2) == normalize(_kernel_py.mul_rows(a, b, 2), 2)


def test_zero_rows():
    assert normalize(kernel.mul_rows([(0, [])], [(0, [1])], 3), 3) == [(0, [])] * 3


def test_fallback_selected_without_extension():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['hksym._kernel'] = None\n"
        "from hksym import kernel\n"
        "from hksym.hilb2 import form_series\n"
        "from fractions import Fraction\n"
        "assert kernel.BACKEND == 'python'\n"
        "assert form_series('I', 3).coeff(1, 1) == Fraction(-11445, 128)\n"
        "print(kernel.BACKEND)\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
