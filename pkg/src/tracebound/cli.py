"""Command-line front end.

Exit codes: 0 success / nothing violated, 1 a check failed or a counterexample
was found, 2 usage error, 3 unreadable or invalid input data.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .errors import TraceboundError
from .figures import DEFAULT_FIG1_DIMS, DEFAULT_GRID, figure_grid
from .measures import measure_all
from .search import SEARCH_METRICS, SEARCH_MODES, search_triangle_violation
from .states import RngSpec, load_state
from .textio import csv_text, dumps
from .verify import VIOLATION_TOL, run_property_checks, run_random_verification

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_DATA = 3

DEFAULT_VERIFY_DIMS = tuple(range(2, 9))


def parse_dims(text: str) -> list[int]:
    """``"2,3,5"`` or ``"2..8"`` (inclusive) or a mix like ``"2..4,8"``."""
    dims: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise ValueError
                dims.extend(range(lo, hi + 1))
            else:
                dims.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid dimension list {text!r}") from None
    if not dims or min(dims) < 1:
        raise argparse.ArgumentTypeError(f"dimensions must be positive, got {text!r}")
    return dims


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def seed_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def non_negative_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tracebound",
        description="Trace distance, fidelity and superfidelity: measures, bound checks, figure data.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, fmt_choices=("json",), fmt_default="json"):
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=fmt_choices, default=fmt_default)

    def batch(p):
        p.add_argument("--seed", type=seed_int, default=0)
        p.add_argument("--tolerance", type=non_negative_float, default=VIOLATION_TOL)
        p.add_argument("--workers", type=positive_int, default=1)

    p = sub.add_parser("measure", help="all measures for two state files")
    p.add_argument("--a", required=True, help="first state file")
    p.add_argument("--b", required=True, help="second state file")
    common(p, fmt_choices=("json", "csv"))

    p = sub.add_parser("verify", help="check every bound on random state pairs")
    p.add_argument("--dims", type=parse_dims, default=list(DEFAULT_VERIFY_DIMS))
    p.add_argument("--samples", type=positive_int, default=1000, help="pairs per dimension")
    batch(p)
    common(p)

    p = sub.add_parser("properties", help="check the superfidelity properties")
    p.add_argument("--samples", type=positive_int, default=1000)
    batch(p)
    common(p)

    p = sub.add_parser("figure", help="emit the data behind one comparison figure")
    p.add_argument("--id", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--grid", type=positive_int, default=DEFAULT_GRID)
    p.add_argument("--dims", type=parse_dims, default=list(DEFAULT_FIG1_DIMS))
    common(p, fmt_choices=("csv", "json"), fmt_default="csv")

    p = sub.add_parser("search", help="random search for triangle-inequality violations")
    p.add_argument("--metric", choices=SEARCH_METRICS, required=True)
    p.add_argument("--dim", type=positive_int, default=3)
    p.add_argument("--triples", type=positive_int, default=1000)
    p.add_argument("--mode", choices=SEARCH_MODES, default="mixed")
    p.add_argument("--seed", type=seed_int, default=0)
    p.add_argument("--tolerance", type=non_negative_float, default=VIOLATION_TOL)
    common(p)
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_measure(args) -> int:
    a = load_state(args.a)
    b = load_state(args.b)
    values = measure_all(a, b).as_dict()
    if args.format == "csv":
        text = csv_text(list(values), [list(values.values())])
    else:
        text = dumps(values)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    summary = run_random_verification(
        args.dims,
        args.samples,
        rng=RngSpec(args.seed),
        tolerance=args.tolerance,
        workers=args.workers,
    )
    doc = {"kind": "bound_verification", "dims": args.dims, "samples_per_dim": args.samples}
    doc.update(summary.to_dict())
    _emit(dumps(doc), args.out)
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def cmd_properties(args) -> int:
    summary = run_property_checks(
        args.samples, RngSpec(args.seed), tolerance=args.tolerance, workers=args.workers
    )
    doc = {"kind": "property_verification"}
    doc.update(summary.to_dict())
    _emit(dumps(doc), args.out)
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def cmd_figure(args) -> int:
    if args.grid < 2:
        raise _Usage("--grid must be at least 2")
    if args.id == 1 and min(args.dims) < 2:
        raise _Usage("figure 1 needs --dims >= 2")
    table = figure_grid(args.id, args.grid, args.dims if args.id == 1 else None)
    if args.format == "csv":
        text = table.to_csv()
    else:
        header = table.header()
        text = dumps(
            {
                "figure_id": table.figure_id,
                "columns": header,
                "rows": [list(r[: len(header)]) for r in table.rows],
            }
        )
    _emit(text, args.out)
    return EXIT_OK


def cmd_search(args) -> int:
    if args.dim < 2:
        raise _Usage("--dim must be at least 2")
    result = search_triangle_violation(
        args.metric,
        args.dim,
        args.triples,
        RngSpec(args.seed),
        mode=args.mode,
        tolerance=args.tolerance,
    )
    doc = result.to_dict()
    doc["exit_semantics"] = "exit status 1 means a counterexample was found; 0 means none was found"
    _emit(dumps(doc), args.out)
    return EXIT_VIOLATION if result.found else EXIT_OK


class _Usage(Exception):
    pass


COMMANDS = {
    "measure": cmd_measure,
    "verify": cmd_verify,
    "properties": cmd_properties,
    "figure": cmd_figure,
    "search": cmd_search,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"tracebound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TraceboundError, OSError) as exc:
        print(f"tracebound: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
