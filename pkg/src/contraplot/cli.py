"""Command-line front door.

Subcommands: analyze (JSON/CSV of scored, ranked entries), test (threshold
hypothesis test), plot (contra plot SVG), validate (data quality report),
serve (HTTP service). Exit codes: 0 success, 1 I/O failure, 2 validation
failure, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import secrets
import sys
from pathlib import Path

from . import __version__
from .datasets import CsvError, DatasetNotFoundError, bundled_dataset, parse_csv, validate_dataset
from .intervals import Direction, ThresholdSpec
from .pipeline import (
    DEFAULT_SAMPLES,
    SignView,
    analyze_dataset,
    result_payload,
    threshold_test,
)
from .posterior import DegenerateDrawsError, ValidationError
from .render import PlotOptions, render_contra_plot

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_INTERNAL = 3


def _add_common(p: argparse.ArgumentParser, need_sign=False):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dataset", help="bundled dataset name (tpc, plaque)")
    src.add_argument("--input", help="path to a CSV file in the study-record schema")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                   help="Monte Carlo draws per study (default %(default)s)")
    p.add_argument("--seed", type=int, default=None,
                   help="64-bit seed; drawn at random and printed when omitted")
    p.add_argument("--sign", choices=["decrease", "increase"], required=need_sign,
                   help="sign view to rank and emit")
    p.add_argument("--workers", type=int, default=1,
                   help="worker threads for per-study analysis")
    p.add_argument("--output", help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contraplot",
        description="credible intervals of the relative difference in means, "
                    "effect-size scoring, threshold tests, and contra plots",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="score and rank every study")
    _add_common(p)
    p.add_argument("--threshold", type=float, default=None,
                   help="unused by analyze; accepted for flag compatibility")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--full-precision", action="store_true",
                   help="emit full float precision instead of 6 significant digits")

    p = sub.add_parser("test", help="threshold hypothesis test per study")
    _add_common(p, need_sign=True)
    p.add_argument("--threshold", type=float, required=True,
                   help="nonzero meaningful-effect threshold, sign matching --sign")

    p = sub.add_parser("plot", help="render a contra plot SVG")
    _add_common(p, need_sign=True)
    p.add_argument("--threshold", type=float, default=None,
                   help="optional illustrative gold threshold line")
    p.add_argument("--format", choices=["svg"], default="svg")

    p = sub.add_parser("validate", help="parse and report data-quality warnings")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dataset")
    src.add_argument("--input")

    p = sub.add_parser("serve", help="run the HTTP JSON service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui", help="directory of static UI assets to serve at /")
    return parser


def _load(args):
    if args.dataset:
        return bundled_dataset(args.dataset)
    path = Path(args.input)
    return parse_csv(path.read_text("utf-8"), name=path.stem)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    seed = secrets.randbits(63)
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _entries_csv(result) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id", "rank", "lo", "hi", "median", "delta_l", "alpha_dm",
                     "study", "year", "group_x", "group_y", "units", "species",
                     "pmid", "location", "reported_sign"])
    for e in result.entries:
        r = e.record
        writer.writerow([r.id, e.rank, f"{e.interval.lo:.6g}", f"{e.interval.hi:.6g}",
                         f"{e.median:.6g}", f"{e.delta_l:.6g}", r.alpha_dm_text,
                         r.study, r.year, r.group_x_label, r.group_y_label,
                         r.units, r.species, r.pmid, r.location, r.reported_sign])
    return out.getvalue()


def cmd_analyze(args) -> int:
    ds = _load(args)
    result = analyze_dataset(ds, samples=args.samples, seed=_resolve_seed(args),
                             sign_view=args.sign, workers=args.workers)
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if args.format == "json":
        text = json.dumps(result_payload(result, args.full_precision), indent=2) + "\n"
    else:
        text = _entries_csv(result)
    _emit(text, args.output)
    return EXIT_OK


def cmd_test(args) -> int:
    ds = _load(args)
    direction = Direction.DECREASE if args.sign == "decrease" else Direction.INCREASE
    spec = ThresholdSpec(value=args.threshold, direction=direction)
    result = analyze_dataset(ds, samples=args.samples, seed=_resolve_seed(args),
                             sign_view=args.sign, workers=args.workers)
    lines = [f"{e.record.id}\t{e.delta_l:.6g}" for e in threshold_test(result, spec)]
    _emit("".join(line + "\n" for line in lines), args.output)
    return EXIT_OK


def cmd_plot(args) -> int:
    ds = _load(args)
    result = analyze_dataset(ds, samples=args.samples, seed=_resolve_seed(args),
                             sign_view=args.sign, workers=args.workers)
    opts = PlotOptions(sign_view=SignView(args.sign), threshold=args.threshold)
    _emit(render_contra_plot(result.entries, opts), args.output)
    return EXIT_OK


def cmd_validate(args) -> int:
    ds = _load(args)
    warnings = validate_dataset(ds)
    for warning in warnings:
        print(f"warning: {warning}")
    print(f"OK: {len(ds.records)} records, {len(warnings)} warnings")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(ui_dir=args.ui), host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "analyze": cmd_analyze,
        "test": cmd_test,
        "plot": cmd_plot,
        "validate": cmd_validate,
        "serve": cmd_serve,
    }[args.command]
    try:
        return handler(args)
    except CsvError as exc:
        for err in exc.errors:
            print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValidationError, DatasetNotFoundError, DegenerateDrawsError, ValueError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # stable exit-code contract
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
