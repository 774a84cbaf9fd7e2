"""Command-line interface: ``qform <command> [options]``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from collections import Counter
from dataclasses import dataclass, field

from .enumeration import exception_scan, vectors_with_norm
from .errors import CorpusError, ParseError, QFormError, RecipeError
from .forms import default_corpus, discriminant, resolve_form
from .isometry import is_isometric
from .local import primitively_represented_over_zp, represented_over_zp
from .transform import lambda2, lambda2_sublattice
from .verify import SUITES, SuiteConfig, all_passed, run_suite, summary_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CORPUS, EXIT_OVERFLOW = 0, 1, 2, 3, 4


@dataclass
class CliConfig:
    command: str
    options: dict = field(default_factory=dict)
    output_format: str = "json"
    workers: int = 1
    corpus: str = ""


@dataclass
class Result:
    payload: dict
    rows: list           # CSV rows, header first
    text: str
    ok: bool = True


def _matrix_text(m) -> str:
    return "\n".join("  " + " ".join(f"{x:>4}" for x in row) for row in m)


def cmd_enumerate(o) -> Result:
    lat = resolve_form(o["form"])
    ws = vectors_with_norm(lat, o["n"])
    if o.get("primitive"):
        ws = [w for w in ws if w.primitive]
    vecs = [{"coords": list(w.coords), "primitive": w.primitive} for w in ws]
    rows = [["coords", "primitive"]] + [[" ".join(map(str, v["coords"])), int(v["primitive"])] for v in vecs]
    text = f"{len(vecs)} vectors of norm {o['n']}\n" + "\n".join(
        f"  {tuple(v['coords'])}{'' if v['primitive'] else '  (imprimitive)'}" for v in vecs)
    return Result({"form": o["form"], "n": o["n"], "count": len(vecs), "vectors": vecs}, rows, text)


def cmd_exceptions(o) -> Result:
    scan = exception_scan(resolve_form(o["form"]), o["bound"])
    missing = list(scan.missing)
    rows = [["n"]] + [[n] for n in missing]
    text = f"E({o['form']}) up to {o['bound']}: {{{', '.join(map(str, missing))}}}"
    return Result({"form": o["form"], "bound": o["bound"], "missing": missing}, rows, text)


def cmd_lambda2(o) -> Result:
    lat = resolve_form(o["form"])
    sub = lambda2_sublattice(lat)
    lam = lambda2(lat)
    payload = {"form": o["form"], "basis": [list(r) for r in sub.basis], "gram": [list(r) for r in lam.gram]}
    text = f"Lambda_2 basis (rows):\n{_matrix_text(sub.basis)}\nlambda_2 Gram:\n{_matrix_text(lam.gram)}"
    ok = True
    if o.get("check_isometric"):
        w = is_isometric(lam, resolve_form(o["check_isometric"]))
        ok = w is not None
        payload["target"] = o["check_isometric"]
        payload["isometric"] = ok
        payload["witness"] = [list(r) for r in w.matrix] if w else None
        text += f"\nisometric to {o['check_isometric']}: {'yes' if ok else 'no'}"
        if w:
            text += "\nwitness U (U^T G1 U = G2):\n" + _matrix_text(w.matrix)
    rows = [["row", "basis"]] + [[i, " ".join(map(str, r))] for i, r in enumerate(sub.basis)]
    return Result(payload, rows, text, ok)


def cmd_isometric(o) -> Result:
    l1, l2 = resolve_form(o["form"]), resolve_form(o["form2"])
    w = is_isometric(l1, l2)
    payload = {"form": o["form"], "form2": o["form2"], "isometric": w is not None,
               "witness": [list(r) for r in w.matrix] if w else None}
    text = f"{o['form']} ~ {o['form2']}: {'yes' if w else 'no'}"
    if w:
        text += "\n" + _matrix_text(w.matrix)
    rows = [["form", "form2", "isometric"], [o["form"], o["form2"], int(w is not None)]]
    return Result(payload, rows, text, w is not None)


def cmd_localrep(o) -> Result:
    lat = resolve_form(o["form"])
    fn = primitively_represented_over_zp if o.get("primitive") else represented_over_zp
    ans = fn(lat, o["n"], o["p"])
    kind = "primitively represented" if o.get("primitive") else "represented"
    payload = {"form": o["form"], "n": o["n"], "p": o["p"], "primitive": bool(o.get("primitive")), "represented": ans}
    rows = [["form", "n", "p", "primitive", "represented"],
            [o["form"], o["n"], o["p"], int(bool(o.get("primitive"))), int(ans)]]
    text = f"{o['n']} is {'' if ans else 'not '}{kind} over Z_{o['p']}"
    return Result(payload, rows, text)


def cmd_verify(o, workers) -> Result:
    window = None
    if o.get("window"):
        window = _parse_window(o["window"])
    cfg = SuiteConfig(o["suite"], o.get("bound"), window, workers, bool(o.get("analogous")))
    reports = run_suite(cfg)
    ok = all_passed(reports)
    payload = {"suite": o["suite"], "passed": ok, "reports": [r.to_dict() for r in reports]}
    rows = [["check_id", "passed", "informational", "counterexamples", "wall_time_ms"]]
    rows += [[r.check_id, int(r.passed), int(r.informational), len(r.counterexamples), round(r.wall_time_ms)] for r in reports]
    text = summary_table(reports)
    failing = [r for r in reports if not r.passed and not r.informational]
    for r in failing:
        text += f"\n{r.check_id}: first counterexamples {r.counterexamples[:3]}"
    return Result(payload, rows, text, ok)


def cmd_corpus(o) -> Result:
    records = default_corpus()
    by_status = Counter(r.status for r in records)
    by_core = Counter(r.core or "-" for r in records)
    by_exc = Counter(",".join(map(str, sorted(r.exceptions))) for r in records if r.exceptions)
    pu = sum(r.primitively_universal for r in records)
    payload = {
        "records": len(records), "primitively_universal": pu, "almost_universal": len(records) - pu,
        "by_status": dict(sorted(by_status.items())), "by_core": dict(sorted(by_core.items())),
        "exception_sets": dict(sorted(by_exc.items())),
        "discriminants": sorted({discriminant(r.lattice) for r in records}),
    }
    rows = [["key", "value", "count"]]
    for key in ("by_status", "by_core", "exception_sets"):
        rows += [[key, k, v] for k, v in payload[key].items()]
    text = (f"{len(records)} forms: {pu} primitively universal, {len(records) - pu} almost universal\n"
            + "\n".join(f"  {k}: {v}" for k, v in payload["by_status"].items())
            + "\ncores:\n" + "\n".join(f"  {k}: {v}" for k, v in payload["by_core"].items())
            + "\nexception sets:\n" + "\n".join(f"  {{{k}}}: {v}" for k, v in payload["exception_sets"].items()))
    return Result(payload, rows, text)


def _parse_window(text: str) -> tuple:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise ParseError(f"window must look like LO:HI, got {text!r}") from None
    if not 1 <= lo <= hi:
        raise ParseError(f"bad window {text!r}")
    return lo, hi


def _emit(res: Result, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(res.payload, sort_keys=True) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(res.rows)
        out.write(buf.getvalue())
    else:
        out.write(res.text.rstrip() + "\n")


def run(config: CliConfig, out=None) -> int:
    out = out or sys.stdout
    # worker processes inherit the corpus choice through the environment
    saved = os.environ.get("QFORM_CORPUS")
    if config.corpus:
        os.environ["QFORM_CORPUS"] = config.corpus
    try:
        return _dispatch(config, out)
    finally:
        if saved is None:
            os.environ.pop("QFORM_CORPUS", None)
        else:
            os.environ["QFORM_CORPUS"] = saved


def _dispatch(config: CliConfig, out) -> int:
    o = config.options
    try:
        default_corpus()
        if config.command == "enumerate":
            res = cmd_enumerate(o)
        elif config.command == "exceptions":
            res = cmd_exceptions(o)
        elif config.command == "lambda2":
            res = cmd_lambda2(o)
        elif config.command == "isometric":
            res = cmd_isometric(o)
        elif config.command == "localrep":
            res = cmd_localrep(o)
        elif config.command == "verify":
            res = cmd_verify(o, config.workers)
        elif config.command == "corpus":
            res = cmd_corpus(o)
        else:
            raise ParseError(f"unknown command {config.command}")
    except (CorpusError, OSError) as exc:
        print(f"qform: corpus error: {exc}", file=sys.stderr)
        return EXIT_CORPUS
    except OverflowError as exc:
        print(f"qform: overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (ParseError, ValueError) as exc:
        print(f"qform: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RecipeError, QFormError) as exc:
        print(f"qform: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(res, config.output_format, out)
    return EXIT_OK if res.ok else EXIT_FAIL


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--workers", type=_positive, default=argparse.SUPPRESS)
    common.add_argument("--corpus", default=argparse.SUPPRESS, help="corpus JSON-lines file")

    p = argparse.ArgumentParser(prog="qform", description="Primitive representations by quaternary quadratic forms.")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--corpus", default="")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("enumerate", parents=[common], help="vectors of a given norm")
    s.add_argument("--form", required=True, help="Q34^3 or a sextuple like 2,4,6,4,0,2")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--primitive", action="store_true")

    s = sub.add_parser("exceptions", parents=[common], help="integers up to a bound not primitively represented")
    s.add_argument("--form", required=True)
    s.add_argument("--bound", type=_positive, required=True)

    s = sub.add_parser("lambda2", parents=[common], help="even sublattice and its rescaling")
    s.add_argument("--form", required=True)
    s.add_argument("--check-isometric", dest="check_isometric")

    s = sub.add_parser("isometric", parents=[common], help="isometry test with witness")
    s.add_argument("--form", required=True)
    s.add_argument("--form2", required=True)

    s = sub.add_parser("localrep", parents=[common], help="representation over Z_p")
    s.add_argument("--form", required=True)
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--primitive", action="store_true")

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("--suite", choices=SUITES, required=True)
    s.add_argument("--bound", type=_positive)
    s.add_argument("--window", help="LO:HI window for recipe checks")
    s.add_argument("--analogous", action="store_true", help="also run same-core recipes (informational)")

    s = sub.add_parser("corpus", parents=[common], help="corpus summary")
    s.add_argument("--stats", action="store_true")
    return p


def parse_config(argv=None) -> CliConfig:
    ns = vars(build_parser().parse_args(argv))
    fmt = ns.pop("format")
    workers = ns.pop("workers")
    corpus = ns.pop("corpus") or ""
    command = ns.pop("command")
    return CliConfig(command, ns, fmt, workers, corpus)


def main(argv=None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
