"""p-adic representability of integers by lattices.

Primitive representability of m over Z_p is decided by exhaustive search
modulo p^K with K = 2 v_p(2 det L) + 1.  A primitive solution x has gradient
2Gx of valuation at most v_p(2 det L) (adj(G) G x = det(G) x), so any
primitive solution modulo p^K Hensel-lifts, and conversely.  Imprimitive
solutions are p^a times primitive ones, which reduces plain representability
to the primitive question for n / p^(2a).

The search is organised along a Jordan splitting of L over Z_(p): value sets
of the orthogonal components are computed by brute force and combined by
cyclic convolution modulo p^K.  A unimodular change of basis preserves both
the value set and primitivity, so this is the same exhaustive search.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import QFormOverflowError
from .forms import GramLattice, core_lattices, discriminant


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero int or Fraction."""
    if isinstance(x, Fraction):
        return valuation(x.numerator, p) - valuation(x.denominator, p)
    x = abs(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def split_power(n: int, p: int) -> tuple:
    """(e, u) with n = p^e u and p not dividing u."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@dataclass(frozen=True)
class LocalQuery:
    p: int
    n: int
    primitive_required: bool = False

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.n < 1:
            raise ValueError("n must be positive")


# ------------------------------------------------------------ Jordan splitting

def jordan_blocks(gram, p: int) -> list:
    """Orthogonal splitting of the Z_(p)-lattice with Gram ``gram``.

    Returns a list of (v, block) where block is a 1x1 or (p = 2 only) 2x2
    Fraction matrix whose entries all have valuation >= v, with the block's
    scale exactly p^v.
    """
    g = [[Fraction(x) for x in row] for row in gram]
    blocks = []
    while g:
        n = len(g)
        entries = [(valuation(g[i][j], p), i, j) for i in range(n) for j in range(i, n) if g[i][j] != 0]
        v = min(e[0] for e in entries)
        diag = [i for i in range(n) if g[i][i] != 0 and valuation(g[i][i], p) == v]
        if not diag and p != 2:
            _, i, j = next(e for e in entries if e[0] == v)
            # e_i += e_j raises the diagonal to valuation v for odd p
            for k in range(n):
                g[i][k] += g[j][k]
            for k in range(n):
                g[k][i] += g[k][j]
            diag = [i]
        if diag:
            i = diag[0]
            _swap(g, 0, i)
            piv = g[0][0]
            for k in range(1, n):
                c = g[0][k] / piv
                if c:
                    _add_multiple(g, k, 0, -c)
            blocks.append((v, [[g[0][0]]]))
            g = [row[1:] for row in g[1:]]
            continue
        # p == 2 and the minimum sits off the diagonal: split a 2x2 block.
        _, i, j = next(e for e in entries if e[0] == v and e[1] != e[2])
        # i < j, so moving i to slot 0 leaves j in place
        _swap(g, 0, i)
        _swap(g, 1, j)
        a, b, d = g[0][0], g[0][1], g[1][1]
        det2 = a * d - b * b
        for k in range(2, n):
            r0, r1 = g[0][k], g[1][k]
            c0 = (d * r0 - b * r1) / det2
            c1 = (a * r1 - b * r0) / det2
            if c0:
                _add_multiple(g, k, 0, -c0)
            if c1:
                _add_multiple(g, k, 1, -c1)
        blocks.append((v, [[g[0][0], g[0][1]], [g[1][0], g[1][1]]]))
        g = [row[2:] for row in g[2:]]
    return blocks


def _swap(g, i, j):
    if i == j:
        return
    g[i], g[j] = g[j], g[i]
    for row in g:
        row[i], row[j] = row[j], row[i]


def _add_multiple(g, k, i, c):
    """Basis change e_k <- e_k + c e_i."""
    n = len(g)
    for m in range(n):
        g[k][m] += c * g[i][m]
    for m in range(n):
        g[m][k] += c * g[m][i]


def unimodular_rank_2adic(lat: GramLattice) -> int:
    """Rank of the unimodular Jordan component of L tensor Z_2."""
    return sum(len(b) for v, b in jordan_blocks(lat.gram, 2) if v == 0)


# ------------------------------------------------------------ residue tables

def _to_residue(x: Fraction, mod: int) -> int:
    return x.numerator * pow(x.denominator, -1, mod) % mod


def _cyclic_or(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    fa = np.fft.rfft(a.astype(np.float64))
    fb = np.fft.rfft(b.astype(np.float64))
    return np.fft.irfft(fa * fb, n=a.size) > 0.5


@lru_cache(maxsize=256)
def residue_tables(gram, p: int, k: int) -> tuple:
    """(any, prim): boolean arrays over Z/p^k of values Q(x), x arbitrary / x not in pL."""
    mod = p**k
    if mod > 1 << 16:
        raise QFormOverflowError(f"p^K = {p}^{k} too large for exhaustive residue search")
    xs = np.arange(mod, dtype=np.int64)
    unit = xs % p != 0
    acc_any = acc_prim = None
    for _, blk in jordan_blocks(gram, p):
        c_any = np.zeros(mod, dtype=bool)
        c_prim = np.zeros(mod, dtype=bool)
        if len(blk) == 1:
            a = _to_residue(blk[0][0], mod)
            vals = (a * (xs * xs % mod)) % mod
            c_any[vals] = True
            c_prim[vals[unit]] = True
        else:
            a = _to_residue(blk[0][0], mod)
            b2 = _to_residue(2 * blk[0][1], mod)
            c = _to_residue(blk[1][1], mod)
            cy = (c * (xs * xs % mod)) % mod
            for x in range(mod):
                vals = (a * x * x + (b2 * x % mod) * xs + cy) % mod
                c_any[vals] = True
                if x % p:
                    c_prim[vals] = True
                else:
                    c_prim[vals[unit]] = True
        if acc_any is None:
            acc_any, acc_prim = c_any, c_prim
        else:
            new_prim = _cyclic_or(acc_prim, c_any) | _cyclic_or(acc_any, c_prim)
            acc_any = _cyclic_or(acc_any, c_any)
            acc_prim = new_prim
    return acc_any, acc_prim


def default_modulus_exponent(lat: GramLattice, p: int) -> int:
    return 2 * valuation(2 * discriminant(lat), p) + 1


def primitively_represented_over_zp(lat: GramLattice, n: int, p: int, k: Optional[int] = None) -> bool:
    LocalQuery(p, n, True)
    if k is None:
        k = default_modulus_exponent(lat, p)
    _, prim = residue_tables(lat.gram, p, k)
    return bool(prim[n % p**k])


def represented_over_zp(lat: GramLattice, n: int, p: int, k: Optional[int] = None) -> bool:
    LocalQuery(p, n)
    m = n
    while True:
        if primitively_represented_over_zp(lat, m, p, k):
            return True
        if m % (p * p):
            return False
        m //= p * p


def _local_primes(lat: GramLattice, n: int) -> list:
    ps = set(prime_factors(2 * discriminant(lat)))
    if lat.rank <= 2:
        # unimodular binary and unary lattices can be anisotropic at primes dividing n
        ps |= set(prime_factors(n))
    return sorted(ps)


def genus_represents(lat: GramLattice, n: int) -> bool:
    """n in Q(gen(L)): represented over Z_p for every p.

    For rank >= 3 only p | 2 det L can obstruct (a unimodular Z_p-lattice of
    rank >= 3, p odd, represents every p-adic integer).  For rank <= 2 the
    primes dividing n are checked as well.
    """
    return all(represented_over_zp(lat, n, p) for p in _local_primes(lat, n))


def genus_represents_primitively(lat: GramLattice, n: int) -> bool:
    """Primitive representability over every Z_p (rank >= 3 off 2 det L is automatic
    except at primes dividing n, which are included)."""
    ps = set(_local_primes(lat, n)) | set(prime_factors(n))
    return all(primitively_represented_over_zp(lat, n, p) for p in sorted(ps))


# ------------------------------------------------------------ named cores

@dataclass(frozen=True)
class ExcludedFamily:
    """Integers n = p^e u (p not dividing u) with e matching ``exponent`` and
    u mod ``modulus`` in ``residues``.  ``exponent`` is "odd", "even" or an int."""

    p: int
    exponent: object
    modulus: int
    residues: frozenset

    def matches(self, n: int) -> bool:
        e, u = split_power(n, self.p)
        if self.exponent == "odd":
            ok = e % 2 == 1
        elif self.exponent == "even":
            ok = e % 2 == 0
        else:
            ok = e == self.exponent
        return ok and u % self.modulus in self.residues


@dataclass(frozen=True)
class GenusPredicate:
    core_label: str
    excluded: tuple

    def __contains__(self, n: int) -> bool:
        return n >= 1 and not any(f.matches(n) for f in self.excluded)


def _fam(p, exponent, modulus, residues):
    return ExcludedFamily(p, exponent, modulus, frozenset(residues))


# For the rank-3 core with discriminant 34 the excluded n = 2m have m = 17^(2s+1) m'
# with m' a nonzero square mod 17.  Since 2 is a square mod 17 the test can be
# applied to the unit part of n instead of m.
_QR17 = {r for r in range(1, 17) if legendre(r, 17) == 1}

GENUS_PREDICATES = {
    "N1": GenusPredicate("N1", (_fam(2, "odd", 8, {7}),)),
    "N2": GenusPredicate("N2", (_fam(3, "odd", 3, {2}),)),
    "N3": GenusPredicate("N3", (_fam(2, "odd", 8, {5}),)),
    "N4": GenusPredicate("N4", (_fam(7, "odd", 7, {3, 5, 6}),)),
    "N5": GenusPredicate("N5", (_fam(2, "odd", 8, {7}),)),
    "N6": GenusPredicate("N6", (_fam(2, "even", 8, {7}),)),
    "N7": GenusPredicate("N7", (_fam(5, "odd", 5, {2, 3}),)),
    "N8": GenusPredicate("N8", (_fam(2, "even", 8, {5}),)),
    "N9": GenusPredicate("N9", (_fam(2, 0, 1, {0}), _fam(17, "odd", 17, _QR17))),
    "N10": GenusPredicate("N10", (_fam(3, 1, 3, {1, 2}), _fam(5, "odd", 5, {1, 4}))),
}


def core_gen_predicate(label: str, n: int) -> bool:
    """Membership of n in Q(gen(N_label)) by trial division."""
    if label not in GENUS_PREDICATES:
        raise KeyError(f"unknown core {label}")
    return n in GENUS_PREDICATES[label]


def core_lattice(label: str) -> GramLattice:
    return core_lattices()[label]
