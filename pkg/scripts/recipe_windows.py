"""Slide windows of integers through the assembly recipes and report multiplier usage.

Useful for probing how far above the default threshold the recipes keep
working, and for the same-core forms whose recipes are inferred rather than
transcribed (``--analogous``).
"""
import argparse

from qform.verify.recipes import analogous_recipes, check_theorem_recipe, thm124_instances, transcribed_recipes


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--start", type=int, default=100000)
    ap.add_argument("--width", type=int, default=200)
    ap.add_argument("--windows", type=int, default=3)
    ap.add_argument("--stride", type=int, default=10**6)
    ap.add_argument("--analogous", action="store_true")
    args = ap.parse_args()

    recipes = list(transcribed_recipes()) + list(thm124_instances())
    if args.analogous:
        recipes += analogous_recipes()
    failures = 0
    for i in range(args.windows):
        lo = args.start + i * args.stride
        hi = lo + args.width
        for recipe in recipes:
            floor = 1 if recipe.analogous else recipe.threshold
            rep = check_theorem_recipe(recipe, max(lo, floor), hi)
            failures += 0 if rep.passed else 1
            flag = "ok  " if rep.passed else "FAIL"
            print(f"[{lo}, {hi}] {flag} {recipe.form_id:18s} {rep.notes[-1]}")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
