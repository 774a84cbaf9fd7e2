"""Print each even-sublattice relation with its witness and the exception sets on both sides."""
import argparse

from qform.verify import run_watson


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=2000)
    ap.add_argument("--witness", action="store_true", help="also print the unimodular witnesses")
    args = ap.parse_args()

    reports = run_watson(args.bound)
    print(f"{'source':8s} {'target':8s} {'ok':3s} {'u2':2s}  E(L)/2 -> E(lambda2)")
    for r in reports:
        p = r.params
        print(f"{p['source']:8s} {p['target']:8s} {'yes' if r.passed else 'NO':3s} "
              f"{p.get('unimodular_rank_2adic', '-')!s:2s}  "
              f"{p.get('source_exceptions_halved')} -> {p.get('lambda2_exceptions')}")
        if args.witness and "witness" in p:
            for row in p["witness"]:
                print("      ", row)
    raise SystemExit(0 if all(r.passed for r in reports) else 1)


if __name__ == "__main__":
    main()
