"""Even sublattice and its rescaling, orthogonal complements, core decompositions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CoreNotFound
from .forms import FormRecord, GramLattice, core_lattices, discriminant
from .intmat import (complete_basis, congruence, det, hnf, integer_kernel,
                     is_primitive_sublattice, matmul, transpose)
from .isometry import is_isometric, iter_embeddings


@dataclass(frozen=True)
class Sublattice:
    ambient: GramLattice
    basis: tuple        # rows, in ambient coordinates (HNF where canonicalised)

    @property
    def basis_matrix(self) -> tuple:
        """Columns are the basis vectors."""
        return transpose(self.basis)

    @property
    def gram(self) -> GramLattice:
        return GramLattice(congruence(self.basis, self.ambient.gram))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self) -> int:
        """[ambient : self] for full-rank sublattices."""
        return abs(det(self.basis))


@dataclass(frozen=True)
class CoreDecomposition:
    core: Sublattice
    label: str
    complement_generator: tuple
    complement_norm: int


def lambda2_sublattice(lat: GramLattice) -> Sublattice:
    """{x : Q(x) even}: kernel of x -> sum x_i Q(e_i) mod 2."""
    r = lat.rank
    par = [d % 2 for d in lat.diag]
    eye = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    if not any(par):
        return Sublattice(lat, hnf(eye))
    i0 = par.index(1)
    gens = [tuple(2 * x for x in eye[i0])]
    for j in range(r):
        if j == i0:
            continue
        if par[j]:
            gens.append(tuple(a + b for a, b in zip(eye[j], eye[i0])))
        else:
            gens.append(eye[j])
    return Sublattice(lat, hnf(gens))


def two_content(gram) -> int:
    v = None
    for row in gram:
        for x in row:
            if x:
                k = (x & -x).bit_length() - 1
                v = k if v is None else min(v, k)
    return v or 0


def lambda2(lat: GramLattice) -> GramLattice:
    g = lambda2_sublattice(lat).gram.gram
    s = 2 ** two_content(g)
    return GramLattice(tuple(tuple(x // s for x in row) for row in g))


def orthogonal_complement(lat: GramLattice, sub: Sublattice) -> Sublattice:
    rows = matmul(sub.basis, lat.gram)
    if not sub.basis:
        rows = ()
    return Sublattice(lat, integer_kernel(rows, ncols=lat.rank))


def _coordinate_spans(rank, k):
    from itertools import combinations

    for cols in combinations(range(rank), k):
        yield tuple(tuple(int(i == c) for i in range(rank)) for c in cols)


def find_core(lat: GramLattice, core: GramLattice) -> Sublattice:
    """A primitive sublattice of ``lat`` isometric to ``core``.

    Coordinate spans are tried first (the form's own basis vectors), then a
    general embedding search.  The returned basis maps the core's basis.
    """
    k = core.rank
    for rows in _coordinate_spans(lat.rank, k):
        if Sublattice(lat, rows).gram == core:
            return Sublattice(lat, rows)
    for rows in _coordinate_spans(lat.rank, k):
        sub = Sublattice(lat, rows)
        w = is_isometric(sub.gram, core)
        if w is not None:
            # columns of w express core basis in the span's basis
            basis = matmul(transpose(w.matrix), rows)
            return Sublattice(lat, basis)
    for w in iter_embeddings(core, lat):
        basis = transpose(w.matrix)
        if is_primitive_sublattice(basis):
            return Sublattice(lat, basis)
    raise CoreNotFound(f"no primitive sublattice isometric to {core} in {lat}")


def core_decomposition(record: FormRecord) -> CoreDecomposition:
    if record.core is None:
        raise CoreNotFound(f"{record.id} has no core label")
    lat = record.lattice
    if record.core == "unit_perp":
        sub = Sublattice(lat, ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    else:
        sub = find_core(lat, core_lattices()[record.core])
    perp = orthogonal_complement(lat, sub)
    if perp.rank != 1:
        raise CoreNotFound(f"{record.id}: complement of the core has rank {perp.rank}")
    gen = perp.basis[0]
    return CoreDecomposition(sub, record.core, gen, lat.q(gen))


def recombination_lattice(dec: CoreDecomposition) -> Sublattice:
    """core + Z*complement, of finite index in the ambient lattice."""
    return Sublattice(dec.core.ambient, tuple(dec.core.basis) + (dec.complement_generator,))


def complete_to_basis(lat: GramLattice, rows) -> tuple:
    """Unimodular basis of ``lat`` starting with the given primitive rows."""
    return complete_basis(rows)
