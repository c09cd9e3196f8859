"""Pure-Python schoolbook kernel. Same contract as the compiled ``_kernel``.

A row is ``(lo, coeffs)``: the Laurent polynomial ``sum coeffs[i] * y**(lo + i)``.
An empty ``coeffs`` list is the zero row.
"""


def mul_rows(a, b, n):
    """Truncated Cauchy product of two row lists, returning the first ``n`` rows."""
    out = []
    la, lb = len(a), len(b)
    for s in range(n):
        acc = {}
        for i in range(max(0, s - lb + 1), min(s + 1, la)):
            lo1, r1 = a[i]
            if not r1:
                continue
            lo2, r2 = b[s - i]
            if not r2:
                continue
            base = lo1 + lo2
            for k1, c1 in enumerate(r1):
                if not c1:
                    continue
                for k2, c2 in enumerate(r2):
                    if c2:
                        e = base + k1 + k2
                        acc[e] = acc.get(e, 0) + c1 * c2
        out.append(_dense(acc))
    return out


def _dense(acc):
    keys = [e for e, c in acc.items() if c]
    if not keys:
        return (0, [])
    lo, hi = min(keys), max(keys)
    row = [0] * (hi - lo + 1)
    for e in keys:
        row[e - lo] = acc[e]
    return (lo, row)
