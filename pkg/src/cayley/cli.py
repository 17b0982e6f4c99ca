"""``cayley verify``: run verification suites per field and report.

Exit status is 0 when every suite passes or skips, 1 when any suite fails and
2 on usage errors.  JSON output is byte-stable: elapsed times are ``null``
unless ``--timing`` is given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .errors import CayleyError, UnknownSuite
from .fields import FieldSpec, get_field
from .suites import REGISTRY, Options, run_suite
from .surface import SurfaceModel

DEFAULT_FIELDS = ("q2", "q3", "q4", "q5", "q7", "q8", "q9")


@dataclass
class SuiteReport:
    suite: str
    field: str
    status: str
    expected: object
    actual: object
    elapsed_ms: float | None
    artifact: object = None

    @property
    def failed(self) -> bool:
        return self.status == "fail"


def run_one(field: str, suite: str, opts: Options, timing: bool = False) -> SuiteReport:
    model = SurfaceModel(get_field(field))
    start = time.perf_counter()
    status, expected, actual, artifact = run_suite(suite, model, opts)
    elapsed = round((time.perf_counter() - start) * 1000, 1) if timing else None
    return SuiteReport(suite, field, status, expected, actual, elapsed, artifact)


def _job(args: tuple) -> SuiteReport:
    return run_one(*args)


def resolve_fields(text: str, max_q: int) -> list[str]:
    names: list[str] = []
    for t in text.split(","):
        t = t.strip()
        names += DEFAULT_FIELDS if t == "all" else [t]
    specs = [FieldSpec.parse(n, max_q) for n in names]
    return list(dict.fromkeys(str(s) for s in specs))


def resolve_suites(text: str) -> list[str]:
    if text == "all":
        return sorted(REGISTRY)
    names = [t.strip() for t in text.split(",")]
    for n in names:
        if n not in REGISTRY:
            raise UnknownSuite(f"unknown suite {n!r}; choose from {', '.join(sorted(REGISTRY))}")
    return sorted(set(names))


def _field_key(name: str) -> tuple:
    spec = FieldSpec.parse(name, max_q=None)
    return (0, spec.order) if spec.is_finite else (1, 0)


def run(fields: list[str], suites: list[str], opts: Options, jobs: int = 1, timing: bool = False) -> list[SuiteReport]:
    tasks = [(f, s, opts, timing) for f in fields for s in suites]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_job, tasks))
    else:
        reports = [_job(t) for t in tasks]
    return sorted(reports, key=lambda r: (_field_key(r.field), r.suite))


def _color(text: str, code: str, enabled: bool) -> str:
    return f"\x1b[{code}m{text}\x1b[0m" if enabled else text


def _brief(value: object) -> str:
    if not isinstance(value, dict):
        return json.dumps(value)
    parts = []
    for k, v in value.items():
        if isinstance(v, list) and (len(v) > 6 or any(isinstance(x, list) for x in v)):
            v = f"[{len(v)} items]"
        parts.append(f"{k}={v}")
    return ", ".join(parts)


def format_text(reports: list[SuiteReport], color: bool) -> str:
    lines = []
    for r in reports:
        skipped = r.status.startswith("skipped")
        tag = "SKIP" if skipped else r.status.upper()
        code = {"PASS": "32", "FAIL": "31"}.get(tag, "33")
        head = f"{_color(f'{tag:<5}', code, color)} {r.field:<9} {r.suite:<15}"
        if r.elapsed_ms is not None:
            head += f" {r.elapsed_ms:>9.1f} ms"
        lines.append(head.rstrip())
        if r.status == "fail":
            lines.append(f"      expected: {_brief(r.expected)}")
            lines.append(f"      actual:   {_brief(r.actual)}")
        elif skipped:
            lines.append(f"      {r.status[8:-1]}")
        elif r.actual is not None:
            lines.append(f"      {_brief(r.actual)}")
    passed = sum(r.status == "pass" for r in reports)
    failed = sum(r.failed for r in reports)
    lines.append(f"{passed} passed, {failed} failed, {len(reports) - passed - failed} skipped")
    return "\n".join(lines)


def format_json(reports: list[SuiteReport]) -> str:
    return json.dumps([asdict(r) for r in reports], indent=2, sort_keys=False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cayley", description="Exact checks on Cayley's ruled cubic surface.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--field", default="all", help="q2, q3, ..., q13, rational, a comma list, or all")
    v.add_argument("--suite", default="all", help=f"one of {', '.join(sorted(REGISTRY))}, a comma list, or all")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("--max-q", type=int, default=13, help="largest field order accepted")
    v.add_argument("--seed", type=int, default=Options.seed, help="seed for sampled rational suites")
    v.add_argument("--timing", action="store_true", help="record elapsed milliseconds")
    v.add_argument("--tables", action="store_true", help="attach distance tables as artifacts")
    v.add_argument("--out", help="also write the report to this file")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        fields = resolve_fields(args.field, args.max_q)
        suites = resolve_suites(args.suite)
    except CayleyError as exc:
        print(f"cayley: error: {exc}", file=sys.stderr)
        return 2
    opts = Options(max_q=args.max_q, seed=args.seed, tables=args.tables)
    reports = run(fields, suites, opts, args.jobs, args.timing)
    if args.format == "json":
        out = format_json(reports)
    else:
        color = sys.stdout.isatty() and "NO_COLOR" not in os.environ and not args.out
        out = format_text(reports, color)
    print(out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    return 1 if any(r.failed for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
