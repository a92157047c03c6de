"""Command-line scenario runner.

Verbs: two-electron, certify, n-fermion, detector. Each run is self-checking:
the exit code is nonzero if any recorded residual exceeds its tolerance.
Output is JSON (full records) or CSV (one flat scalar row per grid point);
without --out the record goes to stdout. FERMISPLIT_OUTDIR sets the directory
relative paths are resolved against.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from .scenarios import (
    RunRecord,
    scenario_certification,
    scenario_detector,
    scenario_n_fermion,
    scenario_two_electron,
)

OUTDIR_ENV = "FERMISPLIT_OUTDIR"


def parse_grid(spec: str) -> list[float]:
    """Parse 'start:stop:count' into an inclusive, evenly spaced grid."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"grid must be start:stop:count, got {spec!r}"
        )
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if count < 1:
        raise argparse.ArgumentTypeError("grid count must be >= 1")
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + k * step for k in range(count - 1)] + [stop]


def _p_values(args) -> list[float]:
    if args.p_grid is not None:
        return args.p_grid
    return [args.p]


def records_to_json(records: list[RunRecord]) -> str:
    return json.dumps(
        {"records": [r.to_json_dict() for r in records]},
        indent=2,
        sort_keys=True,
    )


def records_to_csv(records: list[RunRecord]) -> str:
    columns: list[str] = []
    rows = []
    for record in records:
        row: dict[str, object] = dict(record.config)
        row.update(record.scalars())
        row["all_passed"] = int(record.all_passed())
        rows.append(row)
        for key in row:
            if key not in columns:
                columns.append(key)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, restval="")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def write_output(records: list[RunRecord], out: str | None, fmt: str) -> None:
    text = records_to_json(records) if fmt == "json" else records_to_csv(records)
    if out is None:
        sys.stdout.write(text + ("\n" if not text.endswith("\n") else ""))
        return
    path = Path(out)
    if not path.is_absolute():
        path = Path(os.environ.get(OUTDIR_ENV, ".")) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    print(f"wrote {len(records)} record(s) to {path}", file=sys.stderr)


def _add_options(parser: argparse.ArgumentParser):
    """Every verb carries the full option set; each scenario reads what it needs."""
    parser.add_argument("--p", type=float, default=0.5,
                        help="tunneling probability (default 0.5)")
    parser.add_argument("--p-grid", type=parse_grid, default=None,
                        metavar="START:STOP:COUNT",
                        help="inclusive p grid; overrides --p")
    parser.add_argument("--n", type=int, default=None,
                        help="particle number N (n-fermion)")
    parser.add_argument("--m", type=int, default=None,
                        help="particles detected in the first well (n-fermion)")
    parser.add_argument("--internal-dim", type=int, default=None,
                        help="internal levels per mode (n-fermion; default N)")
    parser.add_argument("--detector-levels", type=int, default=3,
                        help="counter levels D (detector; default 3)")
    parser.add_argument("--tol", type=float, default=None,
                        help="override the default check tolerance")
    parser.add_argument("--out", default=None,
                        help="output file (resolved against $%s)" % OUTDIR_ENV)
    parser.add_argument("--format", choices=("json", "csv"), default="json",
                        dest="fmt", help="output format (default json)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermisplit",
        description="split-and-detect entanglement pipelines for identical fermions",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "two-electron": "two-fermion pipeline",
        "certify": "counting-statistics certification",
        "n-fermion": "N-fermion pipeline",
        "detector": "counter-coupling pipeline",
    }
    for verb, helptext in descriptions.items():
        _add_options(sub.add_parser(verb, help=helptext))
    return parser


def run(args) -> list[RunRecord]:
    tol = {} if args.tol is None else {"tol": args.tol}
    if args.command == "two-electron":
        return [scenario_two_electron(p, **tol) for p in _p_values(args)]
    if args.command == "certify":
        return [scenario_certification(p, **tol) for p in _p_values(args)]
    if args.command == "n-fermion":
        if args.n is None or args.m is None:
            raise ValueError("n-fermion requires --n and --m")
        return [
            scenario_n_fermion(args.n, args.m, args.internal_dim, p, **tol)
            for p in _p_values(args)
        ]
    if args.command == "detector":
        return [
            scenario_detector(p, args.detector_levels, **tol)
            for p in _p_values(args)
        ]
    raise ValueError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        records = run(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    write_output(records, args.out, args.fmt)
    failed = [r for r in records if not r.all_passed()]
    if failed:
        for record in failed:
            bad = [c.name for c in record.checks if not c.passed]
            print(
                f"FAIL {record.scenario} {record.config}: {', '.join(bad)}",
                file=sys.stderr,
            )
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
