import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import random_gram, residues_mod
from qform.enumeration import represented_norms
from qform.errors import QFormOverflowError
from qform.forms import GramLattice
from qform.local import (GENUS_PREDICATES, LocalQuery, core_gen_predicate, core_lattice,
                         default_modulus_exponent, genus_represents, jordan_blocks, legendre,
                         primitively_represented_over_zp, represented_over_zp, residue_tables,
                         split_power, unimodular_rank_2adic, valuation)

CLASS_NUMBER_ONE = ("N1", "N2", "N3", "N5", "N6", "N7", "N8")


def test_small_helpers():
    assert valuation(48, 2) == 4
    assert split_power(75, 5) == (2, 3)
    assert legendre(2, 17) == 1 and legendre(3, 17) == -1
    with pytest.raises(ValueError):
        LocalQuery(4, 3)


def test_documented_local_examples():
    assert not represented_over_zp(GramLattice.diagonal(1, 2, 5), 10, 5)
    assert not represented_over_zp(GramLattice.diagonal(1, 1, 2), 14, 2)
    assert not primitively_represented_over_zp(GramLattice.diagonal(1, 1), 4, 2)
    assert represented_over_zp(GramLattice.diagonal(1, 1), 4, 2)


@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]), st.integers(1, 3))
def test_tables_match_brute_force(seed, p, k):
    lat = random_gram(random.Random(seed), random.Random(seed).randint(1, 3))
    if p**(k * lat.rank) > 5000:
        k = 1
    anyt, prim = residue_tables(lat.gram, p, k)
    assert set(np.nonzero(anyt)[0].tolist()) == residues_mod(lat, p, k, False)
    assert set(np.nonzero(prim)[0].tolist()) == residues_mod(lat, p, k, True)


def test_jordan_blocks_reassemble_discriminant():
    lat = GramLattice(((1, 0, 0, 0), (0, 2, 1, 0), (0, 1, 4, 2), (0, 0, 2, 6)))
    for p in (2, 17):
        blocks = jordan_blocks(lat.gram, p)
        assert sum(len(b) for _, b in blocks) == 4
    with pytest.raises(QFormOverflowError):
        residue_tables(lat.gram, 2, 40)


@given(st.integers(0, 10**6), st.integers(1, 4000), st.sampled_from([2, 3, 5, 7]))
def test_hensel_bound_is_stable(seed, n, p):
    rng = random.Random(seed)
    lat = random_gram(rng, rng.randint(1, 4))
    k = default_modulus_exponent(lat, p)
    if p ** (k + 1) > 2**16:
        return
    for fn in (represented_over_zp, primitively_represented_over_zp):
        assert fn(lat, n, p, k) == fn(lat, n, p, k + 1)


@pytest.mark.parametrize("label", sorted(GENUS_PREDICATES, key=lambda s: int(s[1:])))
def test_predicate_matches_genus(label):
    lat = core_lattice(label)
    for n in range(1, 3001):
        assert core_gen_predicate(label, n) == genus_represents(lat, n), n


@pytest.mark.parametrize("label", CLASS_NUMBER_ONE)
def test_class_number_one_cores_represent_whole_genus(label):
    rep = represented_norms(core_lattice(label), 3000)
    for n in range(1, 3001):
        assert bool(rep[n]) == core_gen_predicate(label, n), n


def test_core_examples():
    assert not core_gen_predicate("N9", 34)
    assert core_gen_predicate("N9", 102)
    assert not core_gen_predicate("N10", 6)
    assert not core_gen_predicate("N5", 14)
    # 10 = 2 * 5 with 5 = 5 mod 8 is excluded, and x^2+2y^2+3z^2 = 10 has no solution
    assert not core_gen_predicate("N3", 10)
    assert core_gen_predicate("N3", 6)
    assert not core_gen_predicate("N9", 3)
    with pytest.raises(KeyError):
        core_gen_predicate("N11", 1)


def test_n9_represents_its_genus_for_small_n():
    rep = represented_norms(core_lattice("N9"), 3000)
    misses = [n for n in range(1, 3001) if core_gen_predicate("N9", n) and not rep[n]]
    assert misses == []


def test_sum_of_four_squares_is_locally_universal():
    lat = GramLattice.diagonal(1, 1, 1, 1)
    assert all(genus_represents(lat, n) for n in range(1, 500))


def test_unimodular_ranks():
    expected = {"N5": 1, "N1": 2, "N3": 2, "N7": 2, "N9": 2, "N2": 3, "N4": 3, "N6": 3, "N8": 3, "N10": 3}
    for label, r in expected.items():
        assert unimodular_rank_2adic(core_lattice(label)) == r


@given(st.sampled_from(["N2", "N4", "N6", "N8", "N10"]), st.integers(1, 5000), st.sampled_from([11, 13, 19, 23]))
def test_rank3_represents_everything_at_good_primes(label, n, p):
    lat = core_lattice(label)
    if n % p == 0:
        return
    assert represented_over_zp(lat, n, p)
    assert primitively_represented_over_zp(lat, n, p)
