"""Command-line front end.

Exit status: 0 success, 2 unreadable or malformed input, 3 semantic error
(unknown labels, overlapping change sets), 4 golden mismatch in ``demo``.
Reports go to stdout (or ``--out``); warnings and errors go to stderr.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import __version__, pipeline
from .demo import run_demo
from .errors import IngestWarning, ParseError, TcspError
from .ingest import (
    derive_changeset_from_diff,
    import_lcov,
    parse_changeset,
    parse_line_map,
    parse_matrix_csv,
    write_matrix_csv,
)
from .report import emit_svg_bars, to_csv, to_json, to_text


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load_matrix(path: str):
    m = parse_matrix_csv(_read(path))
    for finding in m.validate().warnings:
        warnings.warn(finding.message, IngestWarning, stacklevel=2)
    return m


def _load_changes(args):
    if args.changes and args.diff:
        raise ParseError("use either --changes or --diff/--line-map, not both")
    if args.diff:
        if not args.line_map:
            raise ParseError("--diff needs --line-map")
        return derive_changeset_from_diff(_read(args.diff), parse_line_map(_read(args.line_map)))
    if not args.changes:
        raise ParseError("--changes or --diff/--line-map is required")
    return parse_changeset(_read(args.changes))


def _emit(args, report, chart):
    for message in report.warnings:
        warnings.warn(message, IngestWarning, stacklevel=2)
    if args.format == "json":
        text = to_json(report)
    elif args.format == "csv":
        text = to_csv(report)
    elif args.format == "svg":
        text = emit_svg_bars(report, args.chart or chart)
    else:
        text = to_text(report)
    _write(args.out, text)


def _write(path, text: str | bytes) -> None:
    data = text.encode("utf-8") if isinstance(text, str) else text
    if path:
        Path(path).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def cmd_select(args, caught):
    m = _load_matrix(args.matrix)
    partition, report = pipeline.run_selection(m, _load_changes(args), _notes(caught))
    if args.reduced_out:
        Path(args.reduced_out).write_bytes(write_matrix_csv(partition.reduced))
    _emit(args, report, "selection")


def cmd_prioritize(args, caught):
    m = _load_matrix(args.matrix)
    _emit(args, pipeline.run_prioritization(m, args.append_unchosen, _notes(caught)), "prioritization")


def cmd_run(args, caught):
    m = _load_matrix(args.matrix)
    changes = _load_changes(args)
    _, report = pipeline.run(m, changes, args.append_unchosen, _notes(caught))
    _emit(args, report, "prioritization")


def cmd_demo(args, caught):
    run_demo()


def cmd_import_lcov(args, caught):
    records = []
    for spec in args.records:
        label, sep, path = spec.partition("=")
        if not sep or not label or not path:
            raise ParseError(f"expected LABEL=PATH, got {spec!r}")
        records.append((label, _read(path)))
    _write(args.out, write_matrix_csv(import_lcov(records)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tcsp", description="Coverage-based regression test selection and prioritization."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", choices=("text", "json", "csv", "svg"), default="text")
    output.add_argument("--out", help="write the report here instead of stdout")
    output.add_argument(
        "--chart", choices=("selection", "prioritization"), help="which sizes --format svg plots"
    )

    changes = argparse.ArgumentParser(add_help=False)
    changes.add_argument("--changes", help="change spec file (deleted:/modified: lines)")
    changes.add_argument("--diff", help="unified diff of the old program")
    changes.add_argument("--line-map", help="statement label to old line number table")

    matrix = argparse.ArgumentParser(add_help=False)
    matrix.add_argument("--matrix", required=True, help="coverage matrix CSV")

    p = sub.add_parser("select", parents=[matrix, changes, output], help="partition the suite")
    p.add_argument("--reduced-out", help="also write the required-test matrix as CSV")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("prioritize", parents=[matrix, output], help="order tests by added coverage")
    p.add_argument("--append-unchosen", action="store_true", help="list zero-contribution tests last")
    p.set_defaults(func=cmd_prioritize)

    p = sub.add_parser("run", parents=[matrix, changes, output], help="select, then prioritize")
    p.add_argument("--append-unchosen", action="store_true", help="list zero-contribution tests last")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("demo", help="reproduce the built-in worked example")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("import-lcov", help="build a matrix CSV from per-test LCOV files")
    p.add_argument("records", nargs="+", metavar="LABEL=PATH")
    p.add_argument("--out", help="write the matrix here instead of stdout")
    p.set_defaults(func=cmd_import_lcov)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IngestWarning)
        try:
            args.func(args, caught)
        except TcspError as exc:
            _flush(caught)
            print(f"tcsp: error: {exc}", file=sys.stderr)
            return exc.exit_code
    _flush(caught)
    return 0


def _notes(caught) -> list[str]:
    return [str(w.message) for w in caught if issubclass(w.category, IngestWarning)]


def _flush(caught) -> None:
    for message in dict.fromkeys(str(w.message) for w in caught):
        print(f"tcsp: warning: {message}", file=sys.stderr)
