"""Branch tables of the core-plus-complement arguments, and a checker for them.

A recipe fixes a basis of the quaternary lattice in which a ternary core
sublattice C and the generator w of its orthogonal complement are explicit.
For a target n the branch selected by n's residues names multipliers a;
then n - Q(w) a^2 must be the norm of a core vector c with c + a w (or
c - a w) primitive in L.  Checking a recipe on a window of n means finding
such a c for every n by filtered enumeration of the core.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from ..enumeration import find_vector
from ..errors import RecipeError
from ..forms import FormRecord, GramLattice, corpus_index, core_lattices, default_corpus
from ..intmat import complete_basis, congruence, vector_gcd
from ..isometry import is_isometric
from ..local import GENUS_PREDICATES, genus_represents
from ..transform import core_decomposition, find_core
from .report import VerificationReport, timed

DEFAULT_THRESHOLD = 10**5


@dataclass(frozen=True)
class Guard:
    """Union of clauses; a clause is a conjunction of (modulus, residues) pairs."""

    clauses: tuple

    def __call__(self, n: int) -> bool:
        return any(all(n % m in rs for m, rs in clause) for clause in self.clauses)

    def describe(self) -> str:
        parts = []
        for clause in self.clauses:
            parts.append(" and ".join(f"n mod {m} in {sorted(rs)}" for m, rs in clause))
        return " or ".join(f"({p})" for p in parts)


def when(*pairs) -> Guard:
    """Single-clause guard from (modulus, residues) pairs."""
    return Guard((tuple((m, frozenset(rs)) for m, rs in pairs),))


def any_of(*guards) -> Guard:
    return Guard(tuple(c for g in guards for c in g.clauses))


def nonzero(m):
    return (m, range(1, m))


@dataclass(frozen=True)
class Branch:
    guard: Guard
    multipliers: tuple       # candidates; the first that assembles primitively wins
    note: str = ""


@dataclass(frozen=True)
class TheoremRecipe:
    form_id: str
    core_label: str
    gram: GramLattice          # the lattice in the basis the argument uses
    core_rows: tuple           # core basis, rows in that basis
    complement: tuple          # generator of the orthogonal complement of the core
    branches: tuple
    threshold: int = DEFAULT_THRESHOLD
    analogous: bool = False
    exceptions: frozenset = field(default_factory=frozenset)

    @property
    def complement_norm(self) -> int:
        return self.gram.q(self.complement)

    @property
    def core_gram(self) -> GramLattice:
        return GramLattice(congruence(self.core_rows, self.gram.gram))

    def branch_for(self, n: int) -> int:
        hits = [i for i, b in enumerate(self.branches) if b.guard(n)]
        if len(hits) != 1:
            raise RecipeError(f"{self.form_id}: n = {n} matches {len(hits)} branches")
        return hits[0]


@dataclass(frozen=True)
class Assembly:
    n: int
    branch: int
    multiplier: int
    reduced: int               # n - k a^2
    core_coords: tuple
    vector: tuple              # in the recipe basis


def _core_candidates_ok(recipe: TheoremRecipe, m: int) -> bool:
    """Cheap necessary condition: m is represented by the genus of the core."""
    if m == 0:
        return True
    pred = GENUS_PREDICATES.get(recipe.core_label)
    if pred is not None:
        return m in pred
    return genus_represents(recipe.core_gram, m)


def assemble(recipe: TheoremRecipe, n: int) -> Optional[Assembly]:
    """Primitive vector of norm n built the way the selected branch prescribes, or None."""
    i = recipe.branch_for(n)
    k = recipe.complement_norm
    core = recipe.core_gram
    rows = recipe.core_rows
    w = recipe.complement
    dim = recipe.gram.rank
    for a in recipe.branches[i].multipliers:
        m = n - k * a * a
        if m < 0 or not _core_candidates_ok(recipe, m):
            continue
        for sign in ((1, -1) if a else (1,)):
            shift = [sign * a * x for x in w]

            def lift(c):
                return tuple(shift[j] + sum(c[t] * rows[t][j] for t in range(len(rows))) for j in range(dim))

            c = find_vector(core, m, lambda c: vector_gcd(lift(c)) == 1)
            if c is not None:
                v = lift(c)
                assert recipe.gram.q(v) == n
                return Assembly(n, i, sign * a, m, c, v)
    return None


def check_guard_partition(recipe: TheoremRecipe, lo: int, hi: int) -> VerificationReport:
    rep = VerificationReport(f"partition_{recipe.form_id}", {"form": recipe.form_id, "range": [lo, hi]})
    with timed(rep):
        for n in range(lo, hi + 1):
            hits = [i for i, b in enumerate(recipe.branches) if b.guard(n)]
            if len(hits) != 1:
                rep.fail(n, branches=hits)
    return rep


def check_recipe_setup(recipe: TheoremRecipe, record: Optional[FormRecord] = None) -> list:
    """Structural facts the branch table relies on; returns a list of problems."""
    problems = []
    cores = core_lattices()
    if recipe.core_label in cores and is_isometric(recipe.core_gram, cores[recipe.core_label]) is None:
        problems.append(f"core rows span {recipe.core_gram}, not {recipe.core_label}")
    for r in recipe.core_rows:
        if recipe.gram.b(r, recipe.complement) != 0:
            problems.append(f"complement not orthogonal to core row {r}")
    if record is not None and is_isometric(recipe.gram, record.lattice) is None:
        problems.append(f"recipe Gram {recipe.gram} is not isometric to {record.id}")
    return problems


def check_theorem_recipe(recipe: TheoremRecipe, lo: int, hi: int, record: Optional[FormRecord] = None) -> VerificationReport:
    """Every n in [lo, hi] selects exactly one branch and assembles primitively.

    Raises RecipeError when the guards do not partition the window.
    """
    tag = "analogous" if recipe.analogous else "recipe"
    rep = VerificationReport(f"{tag}_{recipe.form_id}", {
        "form": recipe.form_id, "core": recipe.core_label, "window": [lo, hi],
        "complement": list(recipe.complement), "complement_norm": recipe.complement_norm,
        "threshold": recipe.threshold,
    })
    with timed(rep):
        for problem in check_recipe_setup(recipe, record):
            rep.fail(0, reason=problem)
        certified = []
        used = {}
        for n in range(lo, hi + 1):
            asm = assemble(recipe, n)
            if asm is None:
                if n in recipe.exceptions:
                    certified.append(n)
                else:
                    b = recipe.branches[recipe.branch_for(n)]
                    k = recipe.complement_norm
                    rep.fail(n, branch=recipe.branch_for(n),
                             reduced=[n - k * a * a for a in b.multipliers],
                             reason="no primitive assembly for any listed multiplier")
            else:
                used[asm.multiplier] = used.get(asm.multiplier, 0) + 1
        if certified:
            rep.params["certified_exceptions"] = certified
        rep.notes.append("multipliers used: " + ", ".join(f"{a}:{c}" for a, c in sorted(used.items())))
    return rep


# ------------------------------------------------------------ transcribed tables

def _g(rows) -> GramLattice:
    return GramLattice(tuple(map(tuple, rows)))


E1, E2, E3, E4 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)


def _q34_3() -> TheoremRecipe:
    odd, nz17 = (2, {1}), nonzero(17)
    mid = (8, {2, 4, 6})
    branches = (
        Branch(when(odd, (17, {0})), (1,)),
        Branch(when(odd, nz17), (17,)),
        Branch(when((8, {0}), (17, set(range(17)) - {4})), (2,)),
        Branch(when((8, {0}), (17, {4})), (34,)),
        Branch(when(mid, (17, set(range(17)) - {16})), (4,)),
        Branch(when(mid, (17, {16})), (8,)),
    )
    gram = _g([[1, 0, 0, 0], [0, 2, 1, 0], [0, 1, 4, 2], [0, 0, 2, 6]])
    return TheoremRecipe("Q34^3", "N9", gram, (E2, E3, E4), E1, branches)


def _q45_1() -> TheoremRecipe:
    branches = (
        Branch(when((3, {0})), (1, 5)),
        Branch(when((3, {2})), (3, 9)),
        Branch(when((12, {1})), (3, 9)),
        Branch(when((12, {4})), (3, 9)),
        Branch(when((12, {7})), (6, 12)),
        Branch(when((36, {10})), (8, 64)),
        Branch(when((36, {22})), (2, 16)),
        Branch(when((36, {34})), (4, 32)),
    )
    gram = _g([[1, 0, 0, 0], [0, 2, 1, 1], [0, 1, 4, 0], [0, 1, 0, 7]])
    return TheoremRecipe("Q45^1", "N10", gram, (E2, E3, E4), E1, branches)


def _q15_1() -> TheoremRecipe:
    branches = (
        Branch(when((2, {1})), (1,)),
        Branch(when((8, {2})), (1,)),
        Branch(when((8, {0})), (1,)),
        Branch(when((8, {4})), (2,)),
        Branch(when((16, {14})), (2,)),
        Branch(when((16, {6})), (4,)),
    )
    gram = _g([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 1], [0, 0, 1, 8]])
    return TheoremRecipe("Q15^1", "N1", gram, (E1, E2, E3), (0, 0, 1, -2), branches)


def _q19_2() -> TheoremRecipe:
    branches = (
        Branch(when((2, {1})), (1,)),
        Branch(when((8, {0})), (1,)),
        Branch(when((8, {4})), (2,)),
        Branch(when((8, {6})), (1,)),
        Branch(when((16, {10})), (2,)),
        Branch(when((16, {2})), (4,)),
    )
    gram = _g([[1, 0, 0, 0], [0, 2, 0, 1], [0, 0, 3, 1], [0, 1, 1, 4]])
    return TheoremRecipe("Q19^2", "N3", gram, (E1, E2, E3), (0, 3, 2, -6), branches)


def _q47_1() -> TheoremRecipe:
    def sevens(*ks):
        return (49, {7 * k % 49 for k in ks})

    one, other = (3, {1}), (3, {0, 2})
    branches = (
        Branch(when(one, nonzero(7)), (1,)),
        Branch(when(one, sevens(0, 2, 6)), (1,)),
        Branch(when(one, sevens(1, 3)), (2,)),
        Branch(when(one, sevens(4, 5)), (4,)),
        Branch(when(other, nonzero(7)), (3,)),
        Branch(when(other, sevens(0, 4, 5)), (3,)),
        Branch(when(other, sevens(2, 6)), (6,)),
        Branch(when(other, sevens(1, 3)), (12,)),
    )
    gram = _g([[1, 0, 0, 0], [0, 2, 1, 0], [0, 1, 4, 1], [0, 0, 1, 7]])
    return TheoremRecipe("Q47^1", "N4", gram, (E1, E2, E3), (0, 1, -2, 7), branches)


def _q80_1() -> TheoremRecipe:
    branches = (
        Branch(when((2, {1})), (0,)),
        Branch(when((16, {2, 6, 10})), (0,)),
        Branch(when((16, {14})), (2,)),
        Branch(when((8, {4})), (2,)),
        Branch(when((32, {0})), (1,)),
        Branch(when((32, {24})), (2,)),
        Branch(when((32, {8, 16})), (4,)),
    )
    gram = GramLattice.diagonal(1, 2, 4, 10)
    return TheoremRecipe("Q80^1", "N5", gram, (E1, E2, E3), E4, branches, exceptions=frozenset({24}))


def _q31_2() -> TheoremRecipe:
    branches = (
        Branch(when((4, {0})), (1,)),
        Branch(when((4, {1})), (1,)),
        Branch(when((4, {2})), (2,)),
        Branch(when((8, {3})), (4,)),
        Branch(when((8, {7})), (2,)),
    )
    gram = _g([[1, 0, 0, 0], [0, 2, 1, 1], [0, 1, 4, 0], [0, 1, 0, 5]])
    return TheoremRecipe("Q31^2", "N6", gram, (E1, E2, E4), (0, 5, -9, -1), branches)


def _q27_3() -> TheoremRecipe:
    def fives(*ks):
        return (25, {5 * k % 25 for k in ks})

    not8, is8 = nonzero(8), (8, {0})
    table = (
        (nonzero(5), 1, 2),
        (fives(0), 1, 2),
        (fives(1, 4), 5, 10),
        (fives(2), 3, 2),
        (fives(3), 1, 6),
    )
    branches = []
    for cond, a_off, a_on in table:
        branches.append(Branch(when(cond, not8), (a_off,)))
        branches.append(Branch(when(cond, is8), (a_on,)))
    gram = _g([[1, 0, 0, 0], [0, 2, 0, 1], [0, 0, 5, 2], [0, 1, 2, 4]])
    return TheoremRecipe("Q27^3", "N7", gram, (E1, E2, E3), (0, 5, 4, -10), tuple(branches))


TRANSCRIBED = {
    "Q34^3": _q34_3, "Q45^1": _q45_1, "Q15^1": _q15_1, "Q19^2": _q19_2, "Q47^1": _q47_1,
    "Q80^1": _q80_1, "Q31^2": _q31_2, "Q27^3": _q27_3,
}


def transcribed_recipes() -> list:
    return [f() for f in TRANSCRIBED.values()]


# ------------------------------------------------------------ the N5 family

THM124_ONE = any_of(when((2, {1})), when((8, {0})), when((16, {14})))
THM124_TWO = any_of(when((8, {2})), when((8, {4})), when((16, {6})))


def thm124_gram(a: int, b: int, c: int) -> GramLattice:
    return _g([[1, 0, 0, 0], [0, 2, 0, a], [0, 0, 4, b], [0, a, b, c]])


def thm124_scale(a: int, b: int, c: int) -> Optional[int]:
    """s = 2 when b is odd, s = 1 when a, c are even and b = 2 mod 4, else None."""
    if b % 2:
        return 2
    if a % 2 == 0 and c % 2 == 0 and b % 4 == 2:
        return 1
    return None


def thm124_recipe(a: int, b: int, c: int, form_id: str = "") -> TheoremRecipe:
    s = thm124_scale(a, b, c)
    if s is None:
        raise RecipeError(f"(a,b,c) = ({a},{b},{c}) satisfies neither hypothesis")
    t = 4 * c - 2 * a * a - b * b
    w = (0, a * s, b * s // 2, -2 * s)
    branches = (Branch(THM124_ONE, (1,)), Branch(THM124_TWO, (2,)))
    return TheoremRecipe(form_id or f"thm124({a},{b},{c})", "N5", thm124_gram(a, b, c),
                         (E1, E2, E3), w, branches, threshold=4 * s * s * t + 1)


def thm124_parameters(lat: GramLattice) -> Optional[tuple]:
    """(a, b, c, rows) with rows G rows^T = thm124_gram(a, b, c), from an N5 embedding."""
    core = find_core(lat, core_lattices()["N5"])
    r1, r2, r3 = [list(r) for r in core.basis]
    w = list(complete_basis(core.basis)[3])

    def sub(v, q, r):
        return [x - q * y for x, y in zip(v, r)]

    w = sub(w, lat.b(r1, w), r1)
    w = sub(w, lat.b(r2, w) // 2, r2)
    if lat.b(r3, w) % 4 == 3:
        r3 = [-x for x in r3]
    w = sub(w, lat.b(r3, w) // 4, r3)
    a, b, c = lat.b(r2, w), lat.b(r3, w), lat.q(w)
    rows = (tuple(r1), tuple(r2), tuple(r3), tuple(w))
    assert congruence(rows, lat.gram) == thm124_gram(a, b, c).gram
    return a, b, c, rows


@lru_cache(maxsize=None)
def thm124_instances(corpus_key=None) -> tuple:
    """thm124 recipes for every primitively universal corpus form whose core is N5."""
    out = []
    for rec in default_corpus(corpus_key):
        if rec.core != "N5" or not rec.primitively_universal:
            continue
        a, b, c, _ = thm124_parameters(rec.lattice)
        out.append(thm124_recipe(a, b, c, rec.id))
    return tuple(out)


# ------------------------------------------------------------ analogous forms

ANALOGOUS_MULTIPLIERS = tuple(range(1, 13)) + (0,)


def analogous_recipe(record: FormRecord) -> TheoremRecipe:
    """Same-core reuse for forms without a written-out table: one branch, small multipliers."""
    dec = core_decomposition(record)
    branches = (Branch(when((1, {0})), ANALOGOUS_MULTIPLIERS, "all n"),)
    return TheoremRecipe(record.id, dec.label, record.lattice, tuple(dec.core.basis),
                         tuple(dec.complement_generator), branches, analogous=True,
                         exceptions=record.exceptions)


def analogous_recipes(records=None) -> list:
    records = records if records is not None else default_corpus()
    covered = set(TRANSCRIBED) | {r.form_id for r in thm124_instances()}
    return [analogous_recipe(r) for r in records if r.core and r.id not in covered]


def run_recipes(lo: int = DEFAULT_THRESHOLD, hi: int = DEFAULT_THRESHOLD + 500,
                thm124_span: int = 200, include_analogous: bool = False, records=None) -> list:
    index = corpus_index(records if records is not None else default_corpus())
    reports = []
    for recipe in transcribed_recipes():
        reports.append(check_theorem_recipe(recipe, lo, hi, index.get(recipe.form_id)))
    for recipe in thm124_instances():
        t = recipe.threshold
        reports.append(check_theorem_recipe(recipe, t, t + thm124_span, index.get(recipe.form_id)))
    if include_analogous:
        for recipe in analogous_recipes(records):
            rep = check_theorem_recipe(recipe, lo, hi, index.get(recipe.form_id))
            rep.informational = True
            reports.append(rep)
    return reports
