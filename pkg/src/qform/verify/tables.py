"""Reproduction of the primitively (almost) universal classification tables."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from ..enumeration import exception_scan, represents_primitively, vectors_with_norm
from ..forms import FormRecord, default_corpus
from .report import VerificationReport, timed


def _scan_one(args) -> tuple:
    record, bound = args
    return record.id, exception_scan(record.lattice, bound).missing


def _transcript(record: FormRecord, n: int) -> dict:
    """Diagnostic for an unexpected exception: every vector of norm n (all imprimitive)."""
    vecs = vectors_with_norm(record.lattice, n)
    return {"vectors_of_norm_n": [list(w.coords) for w in vecs[:50]], "count": len(vecs),
            "primitive_count": sum(w.primitive for w in vecs)}


def map_ordered(fn, jobs, workers: int = 1) -> list:
    """fn over jobs, results in job order; a process pool when workers > 1."""
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=1))


def reproduce_tables(bound: int = 10000, workers: int = 1, records=None, forms=None) -> VerificationReport:
    """PU records: no exceptions up to bound.  APU records: exceptions up to bound
    equal the listed set intersected with [1, bound]."""
    records = list(records if records is not None else default_corpus())
    if forms:
        wanted = set(forms)
        records = [r for r in records if r.id in wanted]
    rep = VerificationReport("tables", {"bound": bound, "forms": len(records)})
    with timed(rep):
        results = map_ordered(_scan_one, [(r, bound) for r in records], workers)
        by_id = {r.id: r for r in records}
        observed = {}
        for form_id, missing in results:
            rec = by_id[form_id]
            expected = tuple(sorted(n for n in rec.exceptions if n <= bound))
            observed[form_id] = list(missing)
            if tuple(missing) == expected:
                continue
            for n in sorted(set(missing) - set(expected)):
                rep.fail(n, form=form_id, reason="unexpected exception", **_transcript(rec, n))
            for n in sorted(set(expected) - set(missing)):
                w = represents_primitively(rec.lattice, n)
                rep.fail(n, form=form_id, reason="listed exception is represented",
                         witness=list(w.coords) if w else None)
        rep.params["observed_exceptions"] = {k: v for k, v in observed.items() if v}
        agree = sum(1 for r in records if not any(c["form"] == r.id for c in rep.counterexamples))
        rep.notes.append(f"{agree}/{len(records)} forms agree")
    return rep
