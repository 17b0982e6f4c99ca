"""Tabulate the cubic forms with zero set exactly F, optionally listing them."""

import argparse

from cayley import census
from cayley.fields import GF
from cayley.surface import SurfaceModel


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 5, 7, 8, 9])
    ap.add_argument("--list", action="store_true", help="print one representative per class")
    args = ap.parse_args()
    print(f"{'q':>3} {'dim V':>6} {'forms':>6} {'classes':>8}")
    for q in args.q:
        m = SurfaceModel(GF(q))
        dim = len(census.vanishing_space(m.field, m.points))
        forms = census.exact_census(m)
        classes = census.proportionality_classes(forms)
        print(f"{q:>3} {dim:>6} {len(forms):>6} {len(classes):>8}")
        if args.list:
            for c in classes[:8]:
                print(f"      {c[0].normalized()}")
            if len(classes) > 8:
                print(f"      ... {len(classes) - 8} more")


if __name__ == "__main__":
    main()
