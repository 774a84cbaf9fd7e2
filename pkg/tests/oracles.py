"""Independent brute-force oracles used by the tests."""
import itertools
import random
from fractions import Fraction
from math import isqrt

import numpy as np

from qform.forms import GramLattice
from qform.intmat import inverse


def box_radius(lat: GramLattice, n: int) -> list:
    """|x_i| <= sqrt(n (G^-1)_ii) for every x with Q(x) <= n."""
    inv = inverse(lat.gram)
    return [isqrt(int(Fraction(n) * inv[i][i])) for i in range(lat.rank)]


def box_vectors(lat: GramLattice, n: int) -> list:
    """All x with Q(x) = n by scanning the whole coordinate box, sorted."""
    rad = box_radius(lat, n)
    g = np.array(lat.gram, dtype=np.int64)
    found = []
    # one slab per value of the first coordinate keeps memory bounded
    for x0 in range(-rad[0], rad[0] + 1):
        axes = [np.array([x0])] + [np.arange(-r, r + 1) for r in rad[1:]]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, lat.rank)
        q = np.einsum("ij,jk,ik->i", grid, g, grid)
        found.extend(tuple(int(c) for c in row) for row in grid[q == n])
    return sorted(found)


def residues_mod(lat: GramLattice, p: int, k: int, primitive: bool) -> set:
    """Values of Q mod p^k over all of (Z/p^k)^r, optionally with some coordinate a unit."""
    m = p**k
    out = set()
    for x in itertools.product(range(m), repeat=lat.rank):
        if primitive and all(c % p == 0 for c in x):
            continue
        out.add(lat.q(x) % m)
    return out


def random_gram(rng: random.Random, rank: int, spread: int = 2) -> GramLattice:
    """L L^T for a random integer lower-triangular L with positive diagonal."""
    low = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        low[i][i] = rng.randint(1, 3)
        for j in range(i):
            low[i][j] = rng.randint(-spread, spread)
    g = [[sum(low[i][t] * low[j][t] for t in range(rank)) for j in range(rank)] for i in range(rank)]
    return GramLattice(tuple(map(tuple, g)))


def random_unimodular(rng: random.Random, rank: int, steps: int = 6) -> tuple:
    u = [[int(i == j) for j in range(rank)] for i in range(rank)]
    for _ in range(steps):
        i, j = rng.sample(range(rank), 2)
        c = rng.choice((-2, -1, 1, 2))
        for row in u:
            row[j] += c * row[i]
        if rng.random() < 0.3:
            for row in u:
                row[i] = -row[i]
    return tuple(map(tuple, u))


# PASS/FAIL lines collected by the acceptance tests and echoed in the terminal summary
ACCEPTANCE_LINES = []
