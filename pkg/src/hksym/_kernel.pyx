# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled schoolbook kernel for truncated products of integer row lists."""


def mul_rows(list a, list b, Py_ssize_t n):
    cdef Py_ssize_t s, i, k1, k2, la = len(a), lb = len(b)
    cdef Py_ssize_t lo, hi, lo1, lo2, off, w1, w2, first, last
    cdef list r1, r2, row, out = []
    cdef object c1
    for s in range(n):
        first = s - lb + 1
        if first < 0:
            first = 0
        last = s + 1
        if last > la:
            last = la
        lo = 0
        hi = 0
        have = False
        for i in range(first, last):
            r1 = a[i][1]
            r2 = b[s - i][1]
            if not r1 or not r2:
                continue
            lo1 = a[i][0] + b[s - i][0]
            lo2 = lo1 + len(r1) + len(r2) - 1
            if not have:
                lo, hi, have = lo1, lo2, True
            else:
                if lo1 < lo:
                    lo = lo1
                if lo2 > hi:
                    hi = lo2
        if not have:
            out.append((0, []))
            continue
        row = [0] * (hi - lo)
        for i in range(first, last):
            r1 = a[i][1]
            r2 = b[s - i][1]
            if not r1 or not r2:
                continue
            off = a[i][0] + b[s - i][0] - lo
            w1 = len(r1)
            w2 = len(r2)
            for k1 in range(w1):
                c1 = r1[k1]
                if not c1:
                    continue
                for k2 in range(w2):
                    row[off + k1 + k2] += c1 * r2[k2]
        out.append(_trim(lo, row))
    return out


cdef tuple _trim(Py_ssize_t lo, list row):
    cdef Py_ssize_t i = 0, j = len(row)
    while i < j and not row[i]:
        i += 1
    while j > i and not row[j - 1]:
        j -= 1
    if i == j:
        return (0, [])
    return (lo + i, row[i:j])
