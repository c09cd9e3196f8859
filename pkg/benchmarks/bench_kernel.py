"""Compare the row-convolution kernels on products that occur in form expansions.

    python3 benchmarks/bench_kernel.py [--trunc 75] [--repeat 3]

Reports, per workload, the best wall time of the compiled schoolbook loop, the
pure-Python schoolbook loop, the Kronecker packing route and the default
dispatch, plus the end-to-end expansion of every form with each kernel forced.
"""
import argparse
import time

from hksym import _kernel_py, hilb2, kernel, qjacobi


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(trunc):
    rows = lambda name: [(lo, list(r)) for lo, r in qjacobi.generator_series(name, trunc)._rows]
    th2, wp, e2 = rows("TH2"), rows("WP"), rows("E2")
    yield "TH2 * WP", th2, wp
    yield "TH2 * TH2", th2, th2
    yield "TH2 * E2", th2, e2


def kernels():
    out = {"python": _kernel_py.mul_rows}
    try:
        from hksym import _kernel
        out["cython"] = _kernel.mul_rows
    except ImportError:
        pass
    out["kronecker"] = kernel.kronecker_mul
    out["dispatch"] = kernel.mul_rows
    return out


def expand_all(trunc):
    qjacobi.generator_series.cache_clear()
    qjacobi._monomial_series.cache_clear()
    hilb2.form_series.cache_clear()
    for name in hilb2.FORM_NAMES:
        hilb2.form_series(name, trunc)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--trunc", type=int, default=75)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    ks = kernels()
    print(f"compiled backend: {kernel.BACKEND}; Kronecker threshold: {kernel.KRONECKER_THRESHOLD} pairs")
    print(f"{'workload':<12}{'pairs':>12}" + "".join(f"{k:>12}" for k in ks))
    for label, a, b in workloads(args.trunc):
        n = len(a)
        ref = None
        times = []
        for fn in ks.values():
            res = [(lo, list(r)) for lo, r in fn(a, b, n)]
            ref = ref or res
            assert res == ref, f"{label}: kernels disagree"
            times.append(best_of(lambda: fn(a, b, n), args.repeat))
        print(f"{label:<12}{kernel.work_estimate(a, b, n):>12}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times))

    print(f"\nexpanding all {len(hilb2.FORM_NAMES)} forms at trunc {args.trunc}:")
    saved_school, saved_threshold = kernel._school, kernel.KRONECKER_THRESHOLD
    try:
        for label, school, threshold in [
            ("python schoolbook only", _kernel_py.mul_rows, float("inf")),
            ("compiled schoolbook only", saved_school, float("inf")),
            ("default dispatch", saved_school, saved_threshold),
        ]:
            kernel._school, kernel.KRONECKER_THRESHOLD = school, threshold
            print(f"  {label:<26}{best_of(lambda: expand_all(args.trunc), 1):8.2f}s")
    finally:
        kernel._school, kernel.KRONECKER_THRESHOLD = saved_school, saved_threshold


if __name__ == "__main__":
    main()
