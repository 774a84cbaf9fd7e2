"""Exact integer matrix helpers (small dimensions only).

Matrices are tuples of row tuples. Nothing here is optimised; ranks stay <= 6.
"""
from fractions import Fraction
from math import gcd


def transpose(a):
    return tuple(zip(*a))


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def congruence(basis, gram):
    """Gram matrix of the vectors in ``basis`` (rows) under ``gram``."""
    return matmul(matmul(basis, gram), transpose(basis))


def det(a):
    """Exact determinant by fraction-free Bareiss elimination."""
    m = [list(r) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def leading_minors(a):
    return [det([row[:k] for row in a[:k]]) for k in range(1, len(a) + 1)]


def inverse(a):
    """Inverse over the rationals; returns a tuple of Fraction rows."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def integer_inverse(a):
    inv = inverse(a)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def vector_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def hnf(rows):
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows: upper echelon, positive pivots, entries above a
    pivot reduced into ``[0, pivot)``.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return ()
    ncols = len(m[0])
    out = []
    col = 0
    while m and col < ncols:
        nz = [r for r in m if r[col] != 0]
        if not nz:
            col += 1
            continue
        # Euclid on column ``col`` until a single row carries it.
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(col, ncols):
                    r[j] -= q * piv[j]
            nz = [r for r in nz if r[col] != 0]
        piv = nz[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        m = [r for r in m if r is not piv and any(r)]
        out.append(piv)
        col += 1
    for i, row in enumerate(out):
        c = next(j for j, x in enumerate(row) if x)
        for k in range(i):
            q = out[k][c] // row[c]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], row)]
    return tuple(tuple(r) for r in out)


def _row_reduce_transpose(a):
    """Unimodular row reduction of [a^T | I]; returns (work rows, m)."""
    n = len(a[0])
    m = len(a)
    at = transpose(a)
    work = [list(at[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    row = 0
    for col in range(m):
        while True:
            nz = [i for i in range(row, n) if work[i][col] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(work[i][col]))
            work[row], work[p] = work[p], work[row]
            done = True
            for i in range(row + 1, n):
                if work[i][col]:
                    q = work[i][col] // work[row][col]
                    work[i] = [x - q * y for x, y in zip(work[i], work[row])]
                    if work[i][col]:
                        done = False
            if done:
                row += 1
                break
    return work, m


def integer_kernel(a, ncols=None):
    """Basis (HNF rows) of {x in Z^n : a x = 0}."""
    if not a:
        n = ncols
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    work, m = _row_reduce_transpose(a)
    return hnf([r[m:] for r in work if not any(r[:m])])


def is_primitive_sublattice(rows):
    """True iff the row span is a direct summand of Z^n (gcd of maximal minors is 1)."""
    from itertools import combinations

    k = len(rows)
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, det([[r[c] for c in cols] for r in rows]))
        if g == 1:
            return True
    return g == 1


def complete_basis(rows):
    """Extend a primitive set of rows to a unimodular basis of Z^n."""
    rows = [tuple(r) for r in rows]
    if not is_primitive_sublattice(rows):
        raise ValueError("rows are not a primitive system")
    n = len(rows[0])
    work, m = _row_reduce_transpose(rows)
    w = [r[m:] for r in work]  # w a^T is echelon, so a w^T = [H | 0]
    vinv = integer_inverse(transpose(w))
    out = tuple(rows) + tuple(vinv[len(rows):])
    assert abs(det(out)) == 1
    return out
