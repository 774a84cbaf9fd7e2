"""Lattice and form data types, sextuple parsing, basic invariants, corpus I/O."""
from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from importlib import resources
from math import gcd
from typing import Iterable, Optional

from .errors import CorpusError, InvalidForm, ParseError, QFormOverflowError
from .intmat import det, leading_minors

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class GramLattice:
    """Positive definite integral lattice given by its Gram matrix."""

    gram: tuple

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if not 1 <= n <= 6 or any(len(row) != n for row in g):
            raise InvalidForm(f"Gram matrix must be square of size 1..6, got {n}")
        if any(abs(x) > INT64_MAX for row in g for x in row):
            raise QFormOverflowError("Gram entry exceeds 64-bit range")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise InvalidForm("Gram matrix is not symmetric")
        if any(m <= 0 for m in leading_minors(g)):
            raise InvalidForm("Gram matrix is not positive definite")

    @classmethod
    def diagonal(cls, *entries):
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def diag(self) -> tuple:
        return tuple(self.gram[i][i] for i in range(self.rank))

    def b(self, u, v) -> int:
        g = self.gram
        return sum(u[i] * g[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))

    def q(self, v) -> int:
        return self.b(v, v)

    def __str__(self):
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.gram) + "]"


@dataclass(frozen=True)
class Sextuple:
    """(a,b,c,d,e,f) for x^2 + a y^2 + b z^2 + c w^2 + d zw + e yw + f yz."""

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) <= 0:
            raise InvalidForm("a, b, c must be positive")
        if any(x < 0 for x in (self.d, self.e, self.f)):
            raise InvalidForm("d, e, f must be nonnegative")
        if any(x % 2 for x in (self.d, self.e, self.f)):
            raise InvalidForm("cross terms d, e, f must be even")
        try:
            gram_from_sextuple(self)
        except InvalidForm as exc:
            raise InvalidForm(f"{self.as_tuple()} is not positive definite") from exc

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def render(self) -> str:
        return " ".join(map(str, self.as_tuple()))


_SEP = re.compile(r"[\s,]+")


def parse_sextuple(text: str) -> Sextuple:
    parts = [p for p in _SEP.split(text.strip().strip("()[]")) if p]
    if len(parts) != 6:
        raise ParseError(f"expected six integers, got {text!r}")
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"non-integer entry in {text!r}") from None
    if any(v < 0 for v in vals):
        raise ParseError(f"negative entry in {text!r}")
    return Sextuple(*vals)


def gram_from_sextuple(s: Sextuple) -> GramLattice:
    a, b, c, d, e, f = s.as_tuple()
    return GramLattice((
        (1, 0, 0, 0),
        (0, a, f // 2, e // 2),
        (0, f // 2, b, d // 2),
        (0, e // 2, d // 2, c),
    ))


def discriminant(lat: GramLattice) -> int:
    return det(lat.gram)


def scale_and_norm(lat: GramLattice) -> tuple:
    """Generators of the scale ideal and the norm ideal."""
    s = 0
    for row in lat.gram:
        for x in row:
            s = gcd(s, x)
    n = 2 * s
    for x in lat.diag:
        n = gcd(n, x)
    return s, n


@dataclass(frozen=True)
class ResidueClass:
    """The progression {u k + r : k >= 0}."""

    u: int
    r: int

    def __post_init__(self):
        if self.u < 1 or not 0 <= self.r < self.u:
            raise ValueError(f"bad residue class A_{{{self.u},{self.r}}}")

    def __contains__(self, n: int) -> bool:
        return n >= self.r and (n - self.r) % self.u == 0


def in_classes(n: int, *classes) -> bool:
    """Membership in a union of A_{u,r}, classes given as (u, r) pairs."""
    return any(n in ResidueClass(u, r) for u, r in classes)


# ---------------------------------------------------------------- corpus

STATUSES = ("PU_known", "PU_type0", "PU_type1", "PU_type2", "APU_type0", "APU_type2")
CORE_LABELS = tuple(f"N{i}" for i in range(1, 11)) + ("unit_perp", "unit_extension")

_ID = re.compile(r"^Q(\d+)\^(\d+)$")


def parse_form_id(text: str) -> tuple:
    m = _ID.match(text.strip())
    if not m:
        raise ParseError(f"bad form identifier {text!r}")
    return int(m.group(1)), int(m.group(2))


@dataclass(frozen=True)
class FormRecord:
    d: int
    k: int
    sextuple: Sextuple
    status: str
    core: Optional[str] = None
    exceptions: frozenset = field(default_factory=frozenset)

    @property
    def id(self) -> str:
        return f"Q{self.d}^{self.k}"

    @property
    def lattice(self) -> GramLattice:
        return gram_from_sextuple(self.sextuple)

    @property
    def primitively_universal(self) -> bool:
        return self.status.startswith("PU")

    @property
    def type(self) -> Optional[int]:
        if self.status == "PU_known":
            return None
        return int(self.status[-1])

    def to_json(self) -> str:
        return json.dumps({
            "id": self.id, "d": self.d, "k": self.k,
            "sextuple": list(self.sextuple.as_tuple()),
            "status": self.status, "core": self.core,
            "exceptions": sorted(self.exceptions),
        }, separators=(",", ":"))


REQUIRED_KEYS = ("id", "d", "k", "sextuple", "status", "exceptions")


def _record_from_obj(obj) -> FormRecord:
    if not isinstance(obj, dict) or any(key not in obj for key in REQUIRED_KEYS):
        raise CorpusError(f"record must be an object with keys {', '.join(REQUIRED_KEYS)}: {obj!r}")
    try:
        d, k = parse_form_id(obj["id"])
    except ParseError as exc:
        raise CorpusError(str(exc)) from exc
    if (d, k) != (obj["d"], obj["k"]):
        raise CorpusError(f"id {obj['id']} disagrees with d/k fields")
    if obj["status"] not in STATUSES:
        raise CorpusError(f"{obj['id']}: unknown status {obj['status']!r}")
    if obj.get("core") is not None and obj["core"] not in CORE_LABELS:
        raise CorpusError(f"{obj['id']}: unknown core {obj['core']!r}")
    try:
        sx = Sextuple(*obj["sextuple"])
    except (InvalidForm, TypeError) as exc:
        raise CorpusError(f"{obj['id']}: {exc}") from exc
    rec = FormRecord(d, k, sx, obj["status"], obj.get("core"), frozenset(obj["exceptions"]))
    disc = discriminant(rec.lattice)
    if disc != d:
        raise CorpusError(f"{rec.id}: discriminant of {sx.as_tuple()} is {disc}, not {d}")
    if rec.primitively_universal and rec.exceptions:
        raise CorpusError(f"{rec.id}: primitively universal record lists exceptions")
    if not rec.primitively_universal and not rec.exceptions:
        raise CorpusError(f"{rec.id}: almost universal record without exceptions")
    return rec


def load_corpus(source: Iterable, check_counts: bool = True) -> list:
    """Parse and validate JSON-lines corpus data (bytes or str lines)."""
    records = []
    for lineno, line in enumerate(source, 1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {lineno}: {exc}") from exc
        records.append(_record_from_obj(obj))
    ids = [r.id for r in records]
    if len(set(ids)) != len(ids):
        raise CorpusError("duplicate form identifiers")
    if check_counts:
        pu = sum(r.primitively_universal for r in records)
        if (pu, len(records) - pu) != (107, 45):
            raise CorpusError(f"expected 107 PU + 45 APU records, got {pu} + {len(records) - pu}")
    return records


def corpus_path() -> str:
    env = os.environ.get("QFORM_CORPUS")
    if env:
        return env
    return str(resources.files("qform") / "data" / "corpus.jsonl")


_CACHE: dict = {}


def default_corpus(path: Optional[str] = None) -> list:
    path = path or corpus_path()
    if path not in _CACHE:
        with open(path, "rb") as fh:
            _CACHE[path] = load_corpus(fh)
    return _CACHE[path]


def corpus_index(records) -> dict:
    return {r.id: r for r in records}


def core_lattices() -> dict:
    """Gram matrices of the named ternary cores N1..N10 (plus the Q96^2 unit extension)."""
    raw = json.loads((resources.files("qform") / "data" / "cores.json").read_text())
    return {k: GramLattice(tuple(map(tuple, v))) for k, v in raw.items()}


def resolve_form(spec: str, records=None) -> GramLattice:
    """A corpus identifier (``Q34^3``), a core label (``N7``), a JSON Gram matrix
    (``[[1,0],[0,2]]``) or a raw sextuple (``2,4,6,4,0,2``)."""
    spec = spec.strip()
    if spec.startswith("Q"):
        index = corpus_index(records if records is not None else default_corpus())
        if spec not in index:
            raise ParseError(f"unknown form {spec}")
        return index[spec].lattice
    if spec.startswith("[["):
        try:
            rows = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad Gram matrix {spec!r}") from exc
        return GramLattice(tuple(map(tuple, rows)))
    cores = core_lattices()
    if spec in cores:
        return cores[spec]
    return gram_from_sextuple(parse_sextuple(spec))
