"""Suite reports and their serializations (text, JSON, CSV, SVG)."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field, fields
from typing import Optional

from .errors import ParseError, SemanticError
from .matrix import CoverageMatrix
from .prioritization import (
    PrioritizedSuite,
    TraceStep,
    coverage_curve,
    prioritization_metrics,
)
from .selection import SelectionPartition, selection_metrics

CLUSTERS = ("out_dated", "surplus", "required")


@dataclass(frozen=True)
class SuiteReport:
    """Sizes, clusters and prioritized order of one run.

    Selection fields are ``None`` when no selection ran; prioritization fields
    are ``None`` when no prioritization ran. A prioritize-only report treats
    the whole input matrix as the required suite.
    """

    original_size: Optional[int] = None
    out_dated_size: Optional[int] = None
    surplus_size: Optional[int] = None
    required_size: Optional[int] = None
    prioritized_size: Optional[int] = None
    selection_reduction: Optional[float] = None
    prioritization_reduction: Optional[float] = None
    clusters: dict = field(default_factory=dict)
    order: tuple = ()
    zero_contribution: tuple = ()
    trace: tuple = ()
    coverage_curve: tuple = ()
    uncoverable: tuple = ()
    modified_uncovered: tuple = ()
    warnings: tuple = ()

    def check(self) -> None:
        """Raise if the report's own size bookkeeping is inconsistent."""
        if self.original_size is not None:
            parts = (self.out_dated_size, self.surplus_size, self.required_size)
            if None in parts or sum(parts) != self.original_size:
                raise SemanticError("cluster sizes do not add up to the original size")
        if self.prioritized_size is not None:
            if self.prioritized_size != len(self.order):
                raise SemanticError("prioritized_size disagrees with the order")
            if self.required_size is not None and self.prioritized_size > self.required_size:
                raise SemanticError("more prioritized than required tests")
        fractions = [f for _, f in self.coverage_curve]
        if any(b < a for a, b in zip(fractions, fractions[1:])):
            raise SemanticError("coverage curve decreases")


def build_report(
    original: Optional[CoverageMatrix] = None,
    partition: Optional[SelectionPartition] = None,
    prioritized_from: Optional[CoverageMatrix] = None,
    suite: Optional[PrioritizedSuite] = None,
    warnings=(),
) -> SuiteReport:
    values: dict = {}
    notes = list(warnings)
    if partition is not None:
        values.update(selection_metrics(partition, original))
        values["clusters"] = {name: tuple(getattr(partition, name)) for name in CLUSTERS}
        values["modified_uncovered"] = partition.modified_uncovered
        if partition.modified_uncovered:
            notes.append(
                "modified statement(s) covered by no remaining test: "
                + ", ".join(partition.modified_uncovered)
            )
    if suite is not None:
        selected = len(prioritized_from.tests)
        metrics = prioritization_metrics(suite, selected)
        notes.extend(metrics.pop("warnings"))
        values.update(metrics)
        values["order"] = suite.order
        values["zero_contribution"] = suite.appended
        values["trace"] = suite.trace
        values["coverage_curve"] = tuple(coverage_curve(suite, prioritized_from))
        values["uncoverable"] = suite.uncoverable
        if suite.uncoverable:
            notes.append(
                "statement(s) no test covers: " + ", ".join(suite.uncoverable)
            )
    values["warnings"] = tuple(dict.fromkeys(notes))
    report = SuiteReport(**values)
    report.check()
    return report


# -- JSON -----------------------------------------------------------------------


def to_dict(report: SuiteReport) -> dict:
    data = asdict(report)
    data["clusters"] = {k: list(v) for k, v in report.clusters.items()}
    data["trace"] = [
        {
            "chosen": s.chosen,
            "count": s.count,
            "newly_covered": list(s.newly_covered),
            "tied": list(s.tied),
        }
        for s in report.trace
    ]
    data["coverage_curve"] = [[k, f] for k, f in report.coverage_curve]
    for key in ("order", "zero_contribution", "uncoverable", "modified_uncovered", "warnings"):
        data[key] = list(data[key])
    return data


def from_dict(data: dict) -> SuiteReport:
    known = {f.name for f in fields(SuiteReport)}
    extra = set(data) - known
    if extra:
        raise ParseError(f"unknown report field(s): {', '.join(sorted(extra))}")
    values = dict(data)
    values["clusters"] = {k: tuple(v) for k, v in data.get("clusters", {}).items()}
    values["trace"] = tuple(
        TraceStep(s["chosen"], s["count"], tuple(s["newly_covered"]), tuple(s["tied"]))
        for s in data.get("trace", ())
    )
    values["coverage_curve"] = tuple((k, f) for k, f in data.get("coverage_curve", ()))
    for key in ("order", "zero_contribution", "uncoverable", "modified_uncovered", "warnings"):
        values[key] = tuple(data.get(key, ()))
    return SuiteReport(**values)


def to_json(report: SuiteReport) -> str:
    return json.dumps(to_dict(report), indent=2) + "\n"


def from_json(text) -> SuiteReport:
    try:
        return from_dict(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"invalid report JSON: {exc}") from None


# -- CSV ------------------------------------------------------------------------
#
# Long format, one value per row: section,step,key,value.

_SIZES = (
    "original_size",
    "out_dated_size",
    "surplus_size",
    "required_size",
    "prioritized_size",
)
_RATIOS = ("selection_reduction", "prioritization_reduction")
_LISTS = ("order", "zero_contribution", "uncoverable", "modified_uncovered", "warnings")


def to_csv(report: SuiteReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "step", "key", "value"])
    for key in _SIZES:
        value = getattr(report, key)
        if value is not None:
            w.writerow(["size", "", key, value])
    for key in _RATIOS:
        value = getattr(report, key)
        if value is not None:
            w.writerow(["ratio", "", key, repr(value)])
    for name, labels in report.clusters.items():
        w.writerow(["cluster", "", name, ""])  # marks the cluster even when empty
        for label in labels:
            w.writerow(["cluster", "", name, label])
    for key in _LISTS:
        for value in getattr(report, key):
            w.writerow([key, "", "", value])
    for n, step in enumerate(report.trace, start=1):
        w.writerow(["trace", n, "chosen", step.chosen])
        w.writerow(["trace", n, "count", step.count])
        for s in step.newly_covered:
            w.writerow(["trace", n, "newly_covered", s])
        for t in step.tied:
            w.writerow(["trace", n, "tied", t])
    for k, f in report.coverage_curve:
        w.writerow(["curve", k, "fraction", repr(f)])
    return buf.getvalue()


def from_csv(text: str) -> SuiteReport:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["section", "step", "key", "value"]:
        raise ParseError("report CSV lacks the section,step,key,value header", line=1)
    values: dict = {key: [] for key in _LISTS}
    clusters: dict[str, list[str]] = {}
    steps: dict[int, dict] = {}
    curve = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 4:
            raise ParseError("expected 4 fields", line=lineno)
        section, step, key, value = row
        try:
            if section == "size":
                values[key] = int(value)
            elif section == "ratio":
                values[key] = float(value)
            elif section == "cluster":
                bucket = clusters.setdefault(key, [])
                if value:
                    bucket.append(value)
            elif section in _LISTS:
                values[section].append(value)
            elif section == "trace":
                rec = steps.setdefault(int(step), {"newly_covered": [], "tied": []})
                if key in ("newly_covered", "tied"):
                    rec[key].append(value)
                else:
                    rec[key] = int(value) if key == "count" else value
            elif section == "curve":
                curve.append((int(step), float(value)))
            else:
                raise ParseError(f"unknown section {section!r}", line=lineno)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), line=lineno) from None
    for key in _LISTS:
        values[key] = tuple(values[key])
    values["clusters"] = {k: tuple(v) for k, v in clusters.items()}
    values["trace"] = tuple(
        TraceStep(rec["chosen"], rec["count"], tuple(rec["newly_covered"]), tuple(rec["tied"]))
        for _, rec in sorted(steps.items())
    )
    values["coverage_curve"] = tuple(curve)
    return SuiteReport(**values)


# -- text -----------------------------------------------------------------------


def _pct(ratio: float) -> str:
    return f"{100 * ratio:.1f}%"


def _labels(labels) -> str:
    return " ".join(labels) if labels else "(none)"


def to_text(report: SuiteReport) -> str:
    out = []
    if report.original_size is not None:
        out.append("Selection")
        out.append(f"  original suite   {report.original_size}")
        for name in CLUSTERS:
            labels = report.clusters.get(name, ())
            out.append(f"  {name:<15}  {len(labels):>3}  {_labels(labels)}")
        out.append(
            f"  size {report.original_size} -> {report.required_size}"
            f" (reduction {_pct(report.selection_reduction)})"
        )
        if report.modified_uncovered:
            out.append(f"  modified but uncovered: {_labels(report.modified_uncovered)}")
    if report.prioritized_size is not None:
        if out:
            out.append("")
        out.append("Prioritization")
        if report.trace:
            out.append("  step  test        new  tied / newly covered")
            for n, step in enumerate(report.trace, start=1):
                out.append(f"  {n:>4}  {step.chosen:<10} {step.count:>4}  tied: {_labels(step.tied)}")
                out.append(f"  {'':>4}  {'':<10} {'':>4}  covers: {_labels(step.newly_covered)}")
        out.append(f"  order: {_labels(report.order)}")
        if report.zero_contribution:
            out.append(f"  zero contribution (appended): {_labels(report.zero_contribution)}")
        out.append(
            f"  size {report.required_size} -> {report.prioritized_size}"
            f" (reduction {_pct(report.prioritization_reduction)})"
        )
        curve = " ".join(f"{k}:{f:.3f}" for k, f in report.coverage_curve)
        out.append(f"  coverage curve: {curve}")
        out.append(f"  uncoverable: {_labels(report.uncoverable)}")
    return "\n".join(out) + "\n"


# -- SVG ------------------------------------------------------------------------

_SVG_W, _SVG_H = 360, 260
_PLOT_TOP, _PLOT_BOTTOM = 50, 210


def emit_svg_bars(report: SuiteReport, which: str = "selection") -> str:
    """Two-bar before/after suite-size chart as a standalone SVG 1.1 document."""
    if which == "selection":
        title = "Test suite size after selection"
        bars = [("original", report.original_size), ("selected", report.required_size)]
    elif which == "prioritization":
        title = "Test suite size after prioritization"
        bars = [("selected", report.required_size), ("prioritized", report.prioritized_size)]
    else:
        raise ValueError(f"unknown chart {which!r}")
    missing = [name for name, value in bars if value is None]
    if missing:
        raise SemanticError(f"report lacks the sizes needed for the {which} chart: {', '.join(missing)}")

    top = max(value for _, value in bars)
    scale = (_PLOT_BOTTOM - _PLOT_TOP) / top if top else 0.0
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_SVG_W}" height="{_SVG_H}"'
        f' viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f"<title>{title}</title>",
        f'<rect x="0" y="0" width="{_SVG_W}" height="{_SVG_H}" fill="#ffffff"/>',
        f'<text x="{_SVG_W // 2}" y="24" text-anchor="middle" font-family="sans-serif"'
        f' font-size="15">{title}</text>',
        f'<line x1="40" y1="{_PLOT_BOTTOM}" x2="{_SVG_W - 40}" y2="{_PLOT_BOTTOM}" stroke="#000000"/>',
    ]
    width = 80
    for k, (name, value) in enumerate(bars):
        x = 70 + k * 140
        h = value * scale
        y = _PLOT_BOTTOM - h
        cx = x + width // 2
        parts.append(
            f'<rect x="{x}" y="{y:.2f}" width="{width}" height="{h:.2f}"'
            f' fill="{"#4e79a7" if k == 0 else "#f28e2b"}"><title>{name}: {value}</title></rect>'
        )
        parts.append(
            f'<text x="{cx}" y="{y - 6:.2f}" text-anchor="middle" font-family="sans-serif"'
            f' font-size="13">{value}</text>'
        )
        parts.append(
            f'<text x="{cx}" y="{_PLOT_BOTTOM + 20}" text-anchor="middle" font-family="sans-serif"'
            f' font-size="13">{name}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
