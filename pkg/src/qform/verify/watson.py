"""Checks of the even-sublattice transformation on the listed pairs."""
from __future__ import annotations

import numpy as np

from ..enumeration import primitive_coverage
from ..forms import corpus_index, default_corpus
from ..isometry import is_isometric
from ..local import unimodular_rank_2adic
from ..transform import lambda2, lambda2_sublattice
from .report import VerificationReport, timed

# (L, target) with lambda_2(L) isometric to target.
WATSON_PAIRS = (
    ("Q24^6", "Q6^3"), ("Q40^2", "Q10^2"), ("Q40^1", "Q10^3"), ("Q52^3", "Q13^2"),
    ("Q56^1", "Q14^3"), ("Q68^3", "Q17^3"), ("Q72^1", "Q18^3"), ("Q72^3", "Q18^5"),
    ("Q80^3", "Q20^4"), ("Q88^1", "Q22^2"), ("Q88^3", "Q22^4"), ("Q92^2", "Q23^2"),
    ("Q96^2", "Q24^3"), ("Q104^1", "Q26^2"),
    ("Q24^1", "Q6^1"), ("Q28^1", "Q7^1"), ("Q60^1", "Q15^3"), ("Q80^1", "Q20^2"),
)


def check_watson_lemma(source: str, target: str, bound: int = 2000, records=None) -> VerificationReport:
    """(a) lambda_2(L) isometric to the target, with a witness;
    (b) 2m primitively represented by L implies m primitively represented by lambda_2(L), m <= bound;
    (c) the unimodular 2-adic Jordan component of L has rank <= 2."""
    index = corpus_index(records if records is not None else default_corpus())
    rep = VerificationReport(f"watson_{source}_{target}", {"source": source, "target": target, "bound": bound})
    with timed(rep):
        lat = index[source].lattice
        tgt = index[target].lattice
        lam = lambda2(lat)
        w = is_isometric(lam, tgt)
        if w is None:
            rep.fail(0, step="a", reason=f"lambda_2({source}) = {lam} is not isometric to {target}")
            return rep
        rep.params["lambda2_basis"] = [list(r) for r in lambda2_sublattice(lat).basis]
        rep.params["witness"] = [list(r) for r in w.matrix]

        cov_l = primitive_coverage(lat, 2 * bound)
        cov_lam = primitive_coverage(lam, bound)
        ms = np.arange(1, bound + 1)
        bad = ms[cov_l[2 * ms] & ~cov_lam[1:]]
        for m in bad:
            rep.fail(int(m), step="b", reason="2m primitively represented by L, m not by lambda_2(L)")
        rep.params["lambda2_exceptions"] = [int(m) for m in ms[~cov_lam[1:]]]
        rep.params["source_exceptions_halved"] = [int(m) for m in ms[~cov_l[2 * ms]]]

        u = unimodular_rank_2adic(lat)
        rep.params["unimodular_rank_2adic"] = u
        if u > 2:
            rep.fail(0, step="c", reason=f"unimodular 2-adic component has rank {u}")
    return rep


def run_watson(bound: int = 2000, records=None) -> list:
    return [check_watson_lemma(s, t, bound, records) for s, t in WATSON_PAIRS]
