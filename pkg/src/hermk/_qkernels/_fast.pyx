# cython: language_level=3
"""Compiled twin of hermk._qkernels.pure.

Same four contracts, but every routine clears denominators once per
input matrix and runs fraction-free over Python big ints, so the inner
loops never pay Fraction's per-operation gcd. Outputs are identical,
entry for entry, to the pure backend (RREF is unique, so both backends
agree there by construction).
"""

from fractions import Fraction
from math import gcd

BACKEND = "fast"


cdef tuple _clear(a):
    """Return (integer matrix, common denominator)."""
    cdef Py_ssize_t i, j, nr = len(a), nc = len(a[0])
    den = 1
    for i in range(nr):
        row = a[i]
        for j in range(nc):
            x = row[j]
            if not isinstance(x, int):
                d = x.denominator
                if d != 1:
                    den = den * (d // gcd(den, d))
    out = []
    for i in range(nr):
        row = a[i]
        nrow = []
        for j in range(nc):
            x = row[j]
            if isinstance(x, int):
                nrow.append(x * den)
            else:
                nrow.append(x.numerator * (den // x.denominator))
        out.append(nrow)
    return out, den


def matmul(a, b):
    """Exact product of an r x m and an m x c matrix."""
    cdef Py_ssize_t i, j, k, nr = len(a), m = len(b), nc = len(b[0])
    if len(a[0]) != m:
        raise ValueError("matmul shape mismatch")
    ai, da = _clear(a)
    bi, db = _clear(b)
    dab = da * db
    out = []
    for i in range(nr):
        arow = ai[i]
        acc = [0] * nc
        for k in range(m):
            x = arow[k]
            if x:
                brow = bi[k]
                for j in range(nc):
                    y = brow[j]
                    if y:
                        acc[j] += x * y
        out.append([Fraction(v, dab) for v in acc])
    return out


def rref(a):
    """Reduced row echelon form; see the pure backend for the contract.

    Forward phase is one-step fraction-free (Bareiss), so entries stay
    integral; the short back-substitution runs on Fractions.
    """
    cdef Py_ssize_t nr = len(a), nc = len(a[0])
    cdef Py_ssize_t r, c, i, j, p
    rows, _ = _clear(a)  # common scale does not change the row space
    pivots = []
    prev = 1
    r = 0
    for c in range(nc):
        p = -1
        for i in range(r, nr):
            if rows[i][c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nr):
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = [(piv * row[j] - f * prow[j]) // prev for j in range(nc)]
            elif prev != piv:
                rows[i] = [(piv * row[j]) // prev for j in range(nc)]
        prev = piv
        pivots.append(c)
        r += 1
        if r == nr:
            break
    out = []
    for i in range(r):
        piv = rows[i][pivots[i]]
        out.append([Fraction(x, piv) for x in rows[i]])
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        prow = out[i]
        for j in range(i):
            f = out[j][c]
            if f:
                out[j] = [x - f * y for x, y in zip(out[j], prow)]
    return out, pivots


def det(a):
    """Determinant of a square matrix, fraction-free Bareiss."""
    cdef Py_ssize_t n = len(a), c, i, j, p
    cdef int sign = 1
    rows, den = _clear(a)
    prev = 1
    for c in range(n):
        p = -1
        for i in range(c, n):
            if rows[i][c]:
                p = i
                break
        if p < 0:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        piv = rows[c][c]
        prow = rows[c]
        for i in range(c + 1, n):
            row = rows[i]
            f = row[c]
            rows[i] = [(piv * row[j] - f * prow[j]) // prev for j in range(n)]
        prev = piv
    d = Fraction(prev, den ** n)
    return d if sign > 0 else -d


def permanent(a):
    """Permanent of a small square matrix, Ryser with Gray-code updates."""
    cdef Py_ssize_t n = len(a), i
    rows, den = _clear(a)
    total = 0
    sums = [0] * n
    prev = 0
    cdef int npar = n & 1
    for g in range(1, 1 << n):
        gray = g ^ (g >> 1)
        bit = gray ^ prev
        j = bit.bit_length() - 1
        if gray & bit:
            for i in range(n):
                sums[i] += rows[i][j]
        else:
            for i in range(n):
                sums[i] -= rows[i][j]
        prev = gray
        prod = 1
        for i in range(n):
            s = sums[i]
            if not s:
                prod = 0
                break
            prod *= s
        if prod:
            if (gray.bit_count() & 1) == npar:
                total += prod
            else:
                total -= prod
    return Fraction(total, den ** n)
