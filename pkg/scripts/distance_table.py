"""Write the distance table over GF(q) as CSV ("inf" for parallel pairs) and print summary counts."""

import argparse
import csv
import sys
from collections import Counter

from cayley.fields import GF
from cayley.metric import DistanceSpace
from cayley.surface import SurfaceModel


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=4)
    ap.add_argument("--out", help="CSV path; omitted means counts only")
    args = ap.parse_args()
    m = SurfaceModel(GF(args.q))
    S = DistanceSpace(m)
    rows = S.export_table()
    labels = [str(P) for P in m.affine_points]
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow([""] + labels)
            for lab, row in zip(labels, rows):
                w.writerow([lab] + row)
        print(f"wrote {len(rows)}x{len(rows)} table to {args.out}", file=sys.stderr)
    counts = Counter(x for row in rows for x in row)
    for value, n in sorted(counts.items(), key=lambda kv: (kv[0] == "inf", kv[0])):
        print(f"{value:>6} {n:>7}")


if __name__ == "__main__":
    main()
