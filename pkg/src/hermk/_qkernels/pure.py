"""Reference rational kernels, plain Fraction arithmetic.

The compiled twin in _fast.pyx implements the same four contracts by
clearing denominators and working fraction-free over the integers; the
backend tests cross-check the two on random inputs. Matrices here are
rectangular lists of rows with Fraction or int entries, never mutated,
and are assumed nonempty in both dimensions (hermk.linalg owns the
degenerate shapes).
"""

from fractions import Fraction

BACKEND = "pure"


def matmul(a, b):
    """Exact product of an r x m and an m x c matrix."""
    m = len(b)
    if len(a[0]) != m:
        raise ValueError("matmul shape mismatch")
    cols = range(len(b[0]))
    out = []
    for row in a:
        acc = [Fraction(0)] * len(b[0])
        for k in range(m):
            x = row[k]
            if x:
                brow = b[k]
                for j in cols:
                    if brow[j]:
                        acc[j] += x * brow[j]
        out.append(acc)
    return out


def rref(a):
    """Reduced row echelon form.

    Returns (rows, pivots): the nonzero rows of the unique RREF and the
    pivot column indices. len(rows) == len(pivots) == rank.
    """
    rows = [[Fraction(x) for x in row] for row in a]
    nr, nc = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                piv = rows[r]
                rows[i] = [x - f * y for x, y in zip(rows[i], piv)]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows[:r], pivots


def det(a):
    """Determinant of a square matrix by exact Gaussian elimination."""
    n = len(a)
    rows = [[Fraction(x) for x in row] for row in a]
    sign = 1
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        piv = rows[c][c]
        d *= piv
        inv = 1 / piv
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d if sign > 0 else -d


def permanent(a):
    """Permanent of a small square matrix, Ryser with Gray-code updates."""
    n = len(a)
    total = Fraction(0)
    sums = [Fraction(0)] * n
    prev = 0
    npar = n & 1
    for g in range(1, 1 << n):
        gray = g ^ (g >> 1)
        bit = gray ^ prev
        j = bit.bit_length() - 1
        if gray & bit:
            for i in range(n):
                sums[i] += a[i][j]
        else:
            for i in range(n):
                sums[i] -= a[i][j]
        prev = gray
        prod = Fraction(1)
        for s in sums:
            if not s:
                prod = Fraction(0)
                break
            prod *= s
        if prod:
            if (gray.bit_count() & 1) == npar:
                total += prod
            else:
                total -= prod
    return total
