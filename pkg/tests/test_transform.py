import itertools
import random

from hypothesis import given
from hypothesis import strategies as st

from oracles import random_gram
from qform.forms import corpus_index, default_corpus, discriminant
from qform.intmat import det, matmul
from qform.isometry import is_isometric
from qform.local import core_lattice
from qform.transform import (complete_to_basis, core_decomposition, lambda2, lambda2_sublattice,
                             orthogonal_complement, recombination_lattice, two_content)


def _record(form_id):
    return corpus_index(default_corpus())[form_id]


def test_lambda2_q24_1_hnf():
    sub = lambda2_sublattice(_record("Q24^1").lattice)
    assert sub.basis == ((1, 1, 0, 0), (0, 2, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    assert sub.index() == 2


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_lambda2_is_the_even_sublattice(seed, rank):
    lat = random_gram(random.Random(seed), rank)
    sub = lambda2_sublattice(lat)
    assert all(d % 2 == 0 for d in sub.gram.diag)
    odd = any(d % 2 for d in lat.diag)
    assert sub.index() == (2 if odd else 1)
    # every even-norm vector in a small box lies in the sublattice (index-2 kernel)
    for x in itertools.product(range(-1, 2), repeat=rank):
        if lat.q(x) % 2 == 0 and odd:
            par = [d % 2 for d in lat.diag]
            assert sum(p * c for p, c in zip(par, x)) % 2 == 0


def test_lambda2_rescaling_is_primitive():
    for rec in default_corpus()[:40]:
        g = lambda2(rec.lattice).gram
        assert two_content(g) == 0


def test_two_content():
    assert two_content(((4, 2), (2, 8))) == 1
    assert two_content(((3, 0), (0, 4))) == 0


def test_lambda2_discriminant_scales():
    lat = _record("Q24^6").lattice
    sub = lambda2_sublattice(lat)
    assert discriminant(sub.gram) == discriminant(lat) * sub.index() ** 2


def test_core_decomposition_orthogonal():
    for form_id in ("Q34^3", "Q45^1", "Q27^3"):
        rec = _record(form_id)
        dec = core_decomposition(rec)
        assert is_isometric(dec.core.gram, core_lattice(rec.core)) is not None
        g = rec.lattice.gram
        for row in dec.core.basis:
            assert matmul((row,), matmul(g, tuple((c,) for c in dec.complement_generator)))[0][0] == 0
        assert dec.complement_norm == rec.lattice.q(dec.complement_generator)
        assert recombination_lattice(dec).index() >= 1


def test_orthogonal_complement_rank():
    rec = _record("Q34^3")
    dec = core_decomposition(rec)
    assert orthogonal_complement(rec.lattice, dec.core).rank == 1


def test_complete_to_basis_is_unimodular():
    rows = ((1, 2, 3, 0), (0, 1, 1, 1))
    full = complete_to_basis(_record("Q34^3").lattice, rows)
    assert tuple(full[:2]) == rows
    assert abs(det(full)) == 1
