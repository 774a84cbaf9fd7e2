"""Named verification suites; checks run as independent jobs in a fixed order."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import lemmas, recipes, watson
from .tables import map_ordered, reproduce_tables

SUITES = ("watson", "lemmas", "recipes", "tables", "all")

DEFAULT_BOUNDS = {"watson": 2000, "lemmas": 3000, "tables": 10000}
DEFAULT_WINDOW = (recipes.DEFAULT_THRESHOLD, recipes.DEFAULT_THRESHOLD + 500)
THM124_SPAN = 200
ANALOGOUS_SPAN = 100


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    bound: Optional[int] = None
    window: Optional[tuple] = None
    workers: int = 1
    analogous: bool = False

    def bound_for(self, suite: str) -> int:
        return self.bound if self.bound is not None else DEFAULT_BOUNDS[suite]


def _run_job(job):
    kind, args = job
    if kind == "watson":
        return [watson.check_watson_lemma(*args)]
    if kind == "lemma":
        name, bound = args
        out = getattr(lemmas, name)(bound)
        return out if isinstance(out, list) else [out]
    if kind == "control":
        return [lemmas.out_of_scope_control(*args)]
    if kind == "recipe":
        form_id, lo, hi = args
        recipe = _recipe_by_id(form_id)
        rec = _record(form_id)
        rep = recipes.check_theorem_recipe(recipe, lo, hi, rec)
        if recipe.analogous:
            rep.informational = True
        return [rep]
    if kind == "partition":
        form_id, lo, hi = args
        return [recipes.check_guard_partition(_recipe_by_id(form_id), lo, hi)]
    if kind == "tables":
        bound, workers = args
        return [reproduce_tables(bound, workers)]
    raise ValueError(kind)


def _record(form_id):
    from ..forms import corpus_index, default_corpus

    return corpus_index(default_corpus()).get(form_id)


def _recipe_by_id(form_id):
    if form_id in recipes.TRANSCRIBED:
        return recipes.TRANSCRIBED[form_id]()
    for r in recipes.thm124_instances():
        if r.form_id == form_id:
            return r
    return recipes.analogous_recipe(_record(form_id))


LEMMA_CHECKS = ("check_lemma_core1", "check_lemma_core2", "check_lemma_123", "check_lemma_124",
                "check_lemma_125", "check_oy_substitution")


def plan(cfg: SuiteConfig) -> list:
    names = ("watson", "lemmas", "recipes", "tables") if cfg.suite == "all" else (cfg.suite,)
    jobs = []
    for name in names:
        if name == "watson":
            b = cfg.bound_for("watson")
            jobs += [("watson", (s, t, b)) for s, t in watson.WATSON_PAIRS]
        elif name == "lemmas":
            b = cfg.bound_for("lemmas")
            jobs += [("lemma", (f, b)) for f in LEMMA_CHECKS]
            jobs.append(("control", ("N4", ((3, 1),), b)))
        elif name == "recipes":
            lo, hi = cfg.window or DEFAULT_WINDOW
            for form_id in recipes.TRANSCRIBED:
                jobs.append(("partition", (form_id, lo, lo + 10000)))
                jobs.append(("recipe", (form_id, lo, hi)))
            for r in recipes.thm124_instances():
                t = r.threshold
                jobs.append(("recipe", (r.form_id, t, t + THM124_SPAN)))
            if cfg.analogous:
                for r in recipes.analogous_recipes():
                    jobs.append(("recipe", (r.form_id, lo, lo + ANALOGOUS_SPAN)))
        elif name == "tables":
            # the table scan parallelises internally over forms
            jobs.append(("tables", (cfg.bound_for("tables"), cfg.workers)))
    return jobs


def run_suite(cfg: SuiteConfig) -> list:
    if cfg.suite not in SUITES:
        raise ValueError(f"unknown suite {cfg.suite!r}")
    jobs = plan(cfg)
    inner = [j for j in jobs if j[0] != "tables"]
    results = map_ordered(_run_job, inner, cfg.workers)
    reports = [r for batch in results for r in batch]
    for j in jobs:
        if j[0] == "tables":
            reports += _run_job(j)
    return reports
