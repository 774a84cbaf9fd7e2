"""Scan every corpus form up to a bound and compare with the listed exception sets.

    python3 scripts/reproduce_tables.py --bound 100000 --workers 8 --out tables_1e5.json

The default bound matches the acceptance suite; 10^5 is the extended run.
"""
import argparse
import json
import time

from qform.verify import reproduce_tables


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=10000)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--forms", nargs="*", help="restrict to these identifiers")
    ap.add_argument("--out", help="write the full report as JSON")
    args = ap.parse_args()

    t0 = time.perf_counter()
    rep = reproduce_tables(args.bound, args.workers, forms=args.forms)
    print(f"bound {args.bound}: {rep.notes[-1]} in {time.perf_counter() - t0:.1f}s")
    for form_id, missing in sorted(rep.params["observed_exceptions"].items()):
        print(f"  {form_id:8s} {{{', '.join(map(str, missing))}}}")
    for c in rep.counterexamples[:20]:
        print("  MISMATCH", c)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rep.to_json() + "\n")
    raise SystemExit(0 if rep.passed else 1)


if __name__ == "__main__":
    main()
