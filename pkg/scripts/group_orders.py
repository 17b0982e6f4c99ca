"""Print the sizes of G(F), the point stabilizer and the extended group for each small field."""

import argparse
import time

from cayley import collineations as coll
from cayley.fields import GF
from cayley.surface import SurfaceModel


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 5, 7, 8, 9])
    ap.add_argument("--full-scan", action="store_true", help="also run the unstructured scan for q <= 3")
    args = ap.parse_args()
    print(f"{'q':>3} {'|G|':>6} {'|Stab|':>7} {'|G_ext|':>8} {'full scan':>10} {'seconds':>8}")
    for q in args.q:
        start = time.perf_counter()
        m = SurfaceModel(GF(q))
        G = coll.group_G(m.field)
        stab = coll.stabilizer_shaped_search(m)
        ext = coll.extended_group_factored(m)
        scan = len(coll.full_scan(m)) if args.full_scan and q <= 3 else "-"
        print(f"{q:>3} {len(G):>6} {len(stab):>7} {len(ext):>8} {scan!s:>10} {time.perf_counter() - start:>8.1f}")


if __name__ == "__main__":
    main()
