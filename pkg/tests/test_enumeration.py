import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import box_vectors, random_gram
from qform.enumeration import (exception_scan, exception_scan_slow, iter_vectors, primitive_coverage,
                               primitive_norms, represented_norms, represents_primitively,
                               theta_prefix, vectors_with_norm)
from qform.errors import QFormOverflowError
from qform.forms import GramLattice, corpus_index, default_corpus, gram_from_sextuple, parse_sextuple

sextuples = st.tuples(st.integers(1, 6), st.integers(1, 8), st.integers(1, 10),
                      st.integers(-3, 3), st.integers(-2, 2), st.integers(-2, 2))


def _lattice(t):
    a, b, c, d, e, f = t
    g = ((1, 0, 0, 0), (0, 2 * a, f, e), (0, f, 2 * b, d), (0, e, d, 2 * c))
    try:
        return GramLattice(g)
    except Exception:
        return None


@given(sextuples, st.integers(0, 60))
def test_matches_box_oracle(t, n):
    lat = _lattice(t)
    if lat is None:
        return
    assert [w.coords for w in vectors_with_norm(lat, n)] == box_vectors(lat, n)


@given(st.integers(0, 10**6), st.integers(2, 4), st.integers(1, 80))
def test_matches_box_oracle_other_ranks(seed, rank, n):
    lat = random_gram(random.Random(seed), rank)
    assert [w.coords for w in vectors_with_norm(lat, n)] == box_vectors(lat, n)


def test_output_is_lexicographic_and_correct():
    lat = gram_from_sextuple(parse_sextuple("2 4 6 4 0 2"))
    vecs = list(iter_vectors(lat, 30))
    assert vecs == sorted(vecs)
    assert all(lat.q(v) == 30 for v in vecs)


def test_zero_norm():
    lat = GramLattice.diagonal(1, 1, 1, 1)
    ws = vectors_with_norm(lat, 0)
    assert [w.coords for w in ws] == [(0, 0, 0, 0)]
    assert not ws[0].primitive


def test_sum_of_four_squares_counts():
    # Jacobi: r_4(n) = 8 * sum of divisors not divisible by 4
    lat = GramLattice.diagonal(1, 1, 1, 1)
    theta = theta_prefix(lat, 30)
    for n in range(1, 31):
        assert theta[n] == 8 * sum(d for d in range(1, n + 1) if n % d == 0 and d % 4)


def test_primitive_flag():
    lat = GramLattice.diagonal(1, 1, 1, 1)
    w = represents_primitively(lat, 4)
    assert w is not None and w.primitive
    assert all(not w.primitive for w in vectors_with_norm(GramLattice.diagonal(1, 1), 4))


@given(st.integers(0, 10**6))
def test_sieve_matches_per_n_search(seed):
    rng = random.Random(seed)
    lat = random_gram(rng, rng.randint(2, 4))
    bound = 120
    slow = exception_scan_slow(lat, 1, bound)
    assert exception_scan(lat, bound).missing == slow
    prim = primitive_norms(lat, bound)
    assert primitive_coverage(lat, bound).tolist() == prim.tolist()
    rep = represented_norms(lat, bound)
    assert all(rep[n] == bool(box_vectors(lat, n)) for n in range(1, 40))


def test_known_exception_sets():
    idx = corpus_index(default_corpus())
    for form_id in ("Q80^3", "Q63^2", "Q34^3", "Q24^6"):
        rec = idx[form_id]
        got = exception_scan(rec.lattice, 300).missing
        assert got == tuple(n for n in sorted(rec.exceptions) if n <= 300)


def test_theta_agrees_with_box():
    lat = gram_from_sextuple(parse_sextuple("1 2 3 2 0 2"))
    theta = theta_prefix(lat, 16)
    assert list(theta) == [len(box_vectors(lat, n)) for n in range(17)]


def test_overflow_guard():
    lat = GramLattice.diagonal(1, 1, 1, 1)
    with pytest.raises(QFormOverflowError):
        vectors_with_norm(lat, 2**64)


def test_bad_bound():
    with pytest.raises(ValueError):
        exception_scan(GramLattice.diagonal(1, 1, 1, 1), 0)
