"""Isometry and embedding search for small positive definite lattices.

The target Gram matrix is first size-reduced; then images of its basis
vectors are assigned one at a time from the vectors of the required norm in
the source lattice, pruning on every inner product already fixed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .enumeration import theta_prefix, vectors_with_norm
from .forms import GramLattice, discriminant
from .intmat import congruence, integer_inverse, matmul, transpose


@dataclass(frozen=True)
class IsometryWitness:
    """Integer matrix U (columns = images of the target basis) with U^T G1 U = G2."""

    matrix: tuple

    def check(self, g1: GramLattice, g2: GramLattice) -> bool:
        u = self.matrix
        return matmul(matmul(transpose(u), g1.gram), u) == g2.gram


def reduce_gram(lat: GramLattice) -> tuple:
    """Greedy pairwise size reduction.

    Returns (rows, gram) with gram = rows * G * rows^T, rows unimodular and the
    diagonal sorted ascending.
    """
    g = lat.gram
    r = lat.rank
    basis = [[int(i == j) for j in range(r)] for i in range(r)]

    def b(u, v):
        return sum(u[i] * g[i][j] * v[j] for i in range(r) for j in range(r))

    changed = True
    while changed:
        changed = False
        for i in range(r):
            qi = b(basis[i], basis[i])
            for j in range(r):
                if i == j:
                    continue
                bij = b(basis[i], basis[j])
                if 2 * abs(bij) > qi:
                    q = (2 * bij + qi) // (2 * qi)
                    basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
                    changed = True
    basis.sort(key=lambda v: (b(v, v), [-abs(x) for x in v]))
    rows = tuple(tuple(v) for v in basis)
    return rows, congruence(rows, g)


def _assignments(src: GramLattice, target: tuple) -> Iterator[list]:
    r = len(target)
    pools = {}
    for j in range(r):
        nj = target[j][j]
        if nj not in pools:
            pools[nj] = [w.coords for w in vectors_with_norm(src, nj)]
    gs = src.gram
    m = src.rank

    def gv(v):
        return [sum(v[i] * gs[i][k] for i in range(m)) for k in range(m)]

    chosen, images = [], []

    def rec(j):
        if j == r:
            yield list(chosen)
            return
        for cand in pools[target[j][j]]:
            ok = True
            for i in range(j):
                if sum(a * c for a, c in zip(images[i], cand)) != target[i][j]:
                    ok = False
                    break
            if ok:
                chosen.append(cand)
                images.append(gv(cand))
                yield from rec(j + 1)
                chosen.pop()
                images.pop()

    yield from rec(0)


def iter_embeddings(small: GramLattice, big: GramLattice) -> Iterator[IsometryWitness]:
    """All U with U^T G_big U = G_small (columns in big-lattice coordinates)."""
    rows, red = reduce_gram(small)
    inv = integer_inverse(rows)
    for x in _assignments(big, red):
        y = matmul(inv, tuple(tuple(v) for v in x))
        w = IsometryWitness(transpose(y))
        assert w.check(big, small)
        yield w


def embeds(small: GramLattice, big: GramLattice) -> Optional[IsometryWitness]:
    if small.rank > big.rank:
        return None
    for w in iter_embeddings(small, big):
        return w
    return None


def is_isometric(l1: GramLattice, l2: GramLattice) -> Optional[IsometryWitness]:
    """Witness U with U^T G1 U = G2, or None."""
    if l1.rank != l2.rank or discriminant(l1) != discriminant(l2):
        return None
    if theta_prefix(l1, 16) != theta_prefix(l2, 16):
        return None
    for w in iter_embeddings(l2, l1):
        return w
    return None
