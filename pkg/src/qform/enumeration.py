"""Exact enumeration of lattice vectors of a given norm.

The search is Fincke-Pohst style backtracking on an integer-scaled LDL^T
decomposition of the Gram matrix, so every admissibility bound is an exact
integer square root; no floating point is involved.  Coordinates are visited
with x_0 as the outermost level, ascending at every level, so solutions come
out in lexicographic order.

For scans over a whole range of norms the innermost level is vectorised with
numpy (``norm_blocks``) and the results are sieved.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, Optional

import numpy as np

from .errors import QFormOverflowError
from .forms import INT64_MAX, GramLattice
from .intmat import leading_minors, vector_gcd


@dataclass(frozen=True)
class Witness:
    coords: tuple
    norm: int
    primitive: bool


@dataclass(frozen=True)
class ExceptionScan:
    bound: int
    missing: tuple


class _Plan:
    """Integer data for the backtracking search.

    Levels are indexed k = r..1 on the coordinate-reversed Gram matrix; level k
    owns original coordinate r - k.  With leading minors D_k and
    y_k = D_k x_k + sum_{j>k} c[k][j] x_j one has

        M * Q(x) = sum_k w_k * y_k^2,   w_k = M / (D_k D_{k-1}).
    """

    def __init__(self, gram):
        r = len(gram)
        g = [[gram[r - 1 - i][r - 1 - j] for j in range(r)] for i in range(r)]
        dm = [1] + leading_minors(g)
        # LDL^T with unit upper U: Q(x) = sum_k d_k (x_k + sum_{j>k} U[k][j] x_j)^2
        u = [[Fraction(0)] * r for _ in range(r)]
        d = [Fraction(0)] * r
        for k in range(r):
            for j in range(k, r):
                s = Fraction(g[k][j]) - sum(d[i] * u[i][k] * u[i][j] for i in range(k))
                if j == k:
                    d[k] = s
                    u[k][k] = Fraction(1)
                else:
                    u[k][j] = s / d[k]
        coef = [[0] * r for _ in range(r)]
        for k in range(r):
            for j in range(k + 1, r):
                v = dm[k + 1] * u[k][j]
                assert v.denominator == 1
                coef[k][j] = int(v)
        big_m = 1
        for k in range(1, r + 1):
            p = dm[k] * dm[k - 1]
            big_m = big_m * p // gcd(big_m, p)
        self.r = r
        self.dk = [dm[k + 1] for k in range(r)]          # D for 0-based level k
        self.w = [big_m // (dm[k + 1] * dm[k]) for k in range(r)]
        self.coef = coef
        self.m = big_m


@lru_cache(maxsize=512)
def _plan(gram) -> _Plan:
    return _Plan(gram)


def _check_width(n: int, plan: _Plan):
    if n * plan.m > 2**127 or n > INT64_MAX:
        raise QFormOverflowError(f"norm {n} exceeds the supported integer width")


def _ceil_div(a, b):
    return -((-a) // b)


def iter_vectors(lat: GramLattice, n: int) -> Iterator[tuple]:
    """All v with Q(v) = n, lazily, in lexicographic order."""
    if n < 0:
        return
    plan = _plan(lat.gram)
    _check_width(n, plan)
    r, dk, w, coef = plan.r, plan.dk, plan.w, plan.coef
    x = [0] * r   # x[k] for 0-based level k (reversed coordinate order)
    target = n * plan.m

    def rec(k, remaining):
        s = 0
        row = coef[k]
        for j in range(k + 1, r):
            s += row[j] * x[j]
        if k == 0:
            if remaining % w[0]:
                return
            t = remaining // w[0]
            y = isqrt(t)
            if y * y != t:
                return
            sols = set()
            for yy in (-y, y):
                if (yy - s) % dk[0] == 0:
                    sols.add((yy - s) // dk[0])
            for v in sorted(sols):
                x[0] = v
                yield tuple(reversed(x))
            return
        ymax = isqrt(remaining // w[k])
        lo = _ceil_div(-ymax - s, dk[k])
        hi = (ymax - s) // dk[k]
        for v in range(lo, hi + 1):
            y = dk[k] * v + s
            x[k] = v
            yield from rec(k - 1, remaining - w[k] * y * y)
        x[k] = 0

    yield from rec(r - 1, target)


def vectors_with_norm(lat: GramLattice, n: int) -> list:
    return [Witness(v, n, vector_gcd(v) == 1) for v in iter_vectors(lat, n)]


def represents(lat: GramLattice, n: int) -> Optional[Witness]:
    for v in iter_vectors(lat, n):
        return Witness(v, n, vector_gcd(v) == 1)
    return None


def represents_primitively(lat: GramLattice, n: int) -> Optional[Witness]:
    if n < 1:
        raise ValueError("primitive representations are only defined for n >= 1")
    for v in iter_vectors(lat, n):
        if vector_gcd(v) == 1:
            return Witness(v, n, True)
    return None


def find_vector(lat: GramLattice, n: int, accept) -> Optional[tuple]:
    """First vector of norm n (lexicographic) satisfying ``accept``."""
    for v in iter_vectors(lat, n):
        if accept(v):
            return v
    return None


# ------------------------------------------------------------ range sieves

def norm_blocks(lat: GramLattice, bound: int):
    """All vectors with 0 <= Q(v) <= bound, as (prefix, last_coord_array, norms).

    ``prefix`` fixes coordinates 0..r-2; the arrays range over coordinate r-1.
    """
    plan = _plan(lat.gram)
    _check_width(bound, plan)
    r, dk, w, coef, big_m = plan.r, plan.dk, plan.w, plan.coef, plan.m
    x = [0] * r
    limit = bound * big_m

    def rec(k, used):
        s = 0
        for j in range(k + 1, r):
            s += coef[k][j] * x[j]
        ymax = isqrt((limit - used) // w[k])
        lo = _ceil_div(-ymax - s, dk[k])
        hi = (ymax - s) // dk[k]
        if k == 0:
            if lo > hi:
                return
            xs = np.arange(lo, hi + 1, dtype=np.int64)
            ys = dk[0] * xs + s
            tot = used + w[0] * ys * ys
            keep = tot <= limit
            yield tuple(reversed(x[1:])), xs[keep], tot[keep] // big_m
            return
        for v in range(lo, hi + 1):
            y = dk[k] * v + s
            x[k] = v
            yield from rec(k - 1, used + w[k] * y * y)
        x[k] = 0

    yield from rec(r - 1, 0)


def primitive_norms(lat: GramLattice, bound: int) -> np.ndarray:
    """Boolean array P with P[m] true iff m <= bound has a primitive representation."""
    out = np.zeros(bound + 1, dtype=bool)
    for prefix, xs, vals in norm_blocks(lat, bound):
        g = vector_gcd(prefix)
        prim = np.gcd(xs, g) == 1
        out[vals[prim]] = True
    return out


def represented_norms(lat: GramLattice, bound: int) -> np.ndarray:
    out = np.zeros(bound + 1, dtype=bool)
    for _, _, vals in norm_blocks(lat, bound):
        out[vals] = True
    return out


def _orthogonal_split(lat: GramLattice):
    """Index i whose basis vector is orthogonal to all others, or None."""
    g = lat.gram
    if lat.rank < 2:
        return None
    for i in range(lat.rank):
        if all(g[i][j] == 0 for j in range(lat.rank) if j != i):
            return i
    return None


def primitive_coverage(lat: GramLattice, bound: int) -> np.ndarray:
    """Like ``primitive_norms`` but uses an orthogonal splitting <a> + T when present.

    With v = (x, t), t = g t' and t' primitive, v is primitive iff gcd(x, g) = 1,
    so only the primitive norms of the smaller lattice T are needed.
    """
    i = _orthogonal_split(lat)
    if i is None:
        return primitive_norms(lat, bound)
    a = lat.gram[i][i]
    rest = [j for j in range(lat.rank) if j != i]
    tern = GramLattice(tuple(tuple(lat.gram[p][q] for q in rest) for p in rest))
    pt = primitive_norms(tern, bound)
    cov = np.zeros(bound + 1, dtype=bool)
    if a <= bound:
        cov[a] = True          # t = 0, x = +-1
    xmax = isqrt(bound // a)
    g = 1
    while g * g <= bound:
        lim = bound // (g * g)
        base = np.nonzero(pt[: lim + 1])[0] * (g * g)
        if base.size:
            for xv in range(0, xmax + 1):
                if gcd(xv, g) != 1:
                    continue
                vals = base + a * xv * xv
                cov[vals[vals <= bound]] = True
        g += 1
    return cov


def exception_scan(lat: GramLattice, bound: int) -> ExceptionScan:
    """Positive integers n <= bound with no primitive representation."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    cov = primitive_coverage(lat, bound)
    missing = tuple(int(n) for n in np.nonzero(~cov[1:])[0] + 1)
    return ExceptionScan(bound, missing)


def exception_scan_slow(lat: GramLattice, lo: int, hi: int) -> tuple:
    """Per-n short-circuit search over [lo, hi]; independent of the sieve."""
    return tuple(n for n in range(lo, hi + 1) if represents_primitively(lat, n) is None)


def theta_prefix(lat: GramLattice, upto: int = 16) -> tuple:
    """Representation counts r(n) for n = 0..upto."""
    counts = np.zeros(upto + 1, dtype=np.int64)
    for _, _, vals in norm_blocks(lat, upto):
        np.add.at(counts, vals, 1)
    return tuple(int(c) for c in counts)
