"""Run every suite on the default fields plus the rationals and save JSON and text reports."""

import argparse
import pathlib
import sys

from cayley import cli


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="reports")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    common = ["verify", "--field", "all,rational", "--jobs", str(args.jobs)]
    code = cli.main(common + ["--format", "json", "--out", str(out / "report.json")])
    cli.main(common + ["--timing", "--out", str(out / "report.txt")])
    return code


if __name__ == "__main__":
    sys.exit(main())
