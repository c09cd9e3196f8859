"""Dispatch for the integer row-convolution used by series multiplication.

Small products go through a schoolbook loop, compiled when the extension is
available. Large products are packed into single big integers (Kronecker
substitution) and multiplied with gmpy2 when it is installed.
"""
from itertools import accumulate

try:
    from hksym._kernel import mul_rows as _school
    BACKEND = "cython"
except ImportError:  # pragma: no cover - exercised when the build is skipped
    from hksym._kernel_py import mul_rows as _school
    BACKEND = "python"

try:
    import gmpy2

    _mpz = gmpy2.mpz
except ImportError:  # pragma: no cover
    _mpz = None

KRONECKER_THRESHOLD = 40_000


def work_estimate(a, b, n):
    """Number of coefficient pairs a schoolbook product would touch."""
    wb = list(accumulate(len(r) for _, r in b[:n]))
    total = 0
    for i, (_, r) in enumerate(a[:n]):
        j = n - i - 1
        if j < 0:
            break
        total += len(r) * wb[min(j, len(wb) - 1)] if wb else 0
    return total


def mul_rows(a, b, n, method=None):
    """Truncated product of two row lists.

    ``method`` forces ``"school"`` or ``"kronecker"``; by default the choice is
    made from :func:`work_estimate`.
    """
    a = a[:n]
    b = b[:n]
    if not a or not b:
        return [(0, [])] * n
    if method is None:
        method = "kronecker" if work_estimate(a, b, n) > KRONECKER_THRESHOLD else "school"
    if method == "kronecker":
        return kronecker_mul(a, b, n)
    return _school(a, b, n)


def _span(rows):
    lo = hi = None
    big = 0
    for l, r in rows:
        if r:
            lo = l if lo is None else min(lo, l)
            h = l + len(r)
            hi = h if hi is None else max(hi, h)
            for c in r:
                if c > big:
                    big = c
                elif -c > big:
                    big = -c
    return lo, hi, big


def _pack(rows, ylo, width, nb):
    size = len(rows) * width * nb
    pos = bytearray(size)
    neg = bytearray(size)
    for i, (lo, r) in enumerate(rows):
        base = (i * width + lo - ylo) * nb
        for k, c in enumerate(r):
            if c > 0:
                p = base + k * nb
                pos[p:p + nb] = c.to_bytes(nb, "little")
            elif c < 0:
                p = base + k * nb
                neg[p:p + nb] = (-c).to_bytes(nb, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def kronecker_mul(a, b, n):
    alo, ahi, amax = _span(a)
    blo, bhi, bmax = _span(b)
    if alo is None or blo is None:
        return [(0, [])] * n
    wa, wb = ahi - alo, bhi - blo
    width = wa + wb - 1
    terms = min(sum(len(r) for _, r in a), sum(len(r) for _, r in b))
    bits = amax.bit_length() + bmax.bit_length() + terms.bit_length() + 2
    nb = (bits + 7) // 8
    za = _pack(a, alo, width, nb)
    zb = _pack(b, blo, width, nb)
    z = int(_mpz(za) * _mpz(zb)) if _mpz is not None else za * zb
    sign = -1 if z < 0 else 1
    slots = n * width
    raw = abs(z).to_bytes(max(slots * nb, (abs(z).bit_length() + 7) // 8), "little")
    full = 1 << (8 * nb)
    half = full >> 1
    out = []
    carry = 0
    ylo = alo + blo
    for i in range(n):
        row = [0] * width
        base = i * width * nb
        for k in range(width):
            p = base + k * nb
            v = int.from_bytes(raw[p:p + nb], "little") + carry
            if v >= half:
                v -= full
                carry = 1
            else:
                carry = 0
            row[k] = sign * v
        out.append(_trim(ylo, row))
    return out


def _trim(lo, row):
    i, j = 0, len(row)
    while i < j and not row[i]:
        i += 1
    while j > i and not row[j - 1]:
        j -= 1
    if i == j:
        return (0, [])
    return (lo + i, row[i:j])
