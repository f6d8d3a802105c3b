"""Readers and writers for coverage matrices and change sets.

Matrix CSV
    First line is an empty corner cell followed by the statement labels; every
    further line is a test label followed by ``0``/``1`` cells. Comma
    separated, no quoting, LF line endings in canonical output.

Change spec
    ``deleted: S3 S4 S6`` and ``modified: S2 S7 S15`` lines. Labels may be
    separated by whitespace or commas, keys may repeat, ``#`` starts a comment.

Line map (for diffs)
    ``<label> <line>`` or ``<label> <path>:<line>`` per line, ``#`` comments.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .errors import IngestWarning, OverlapError, ParseError
from .matrix import ChangeSet, CoverageMatrix

Text = Union[str, bytes]


def _decode(text: Text) -> str:
    if isinstance(text, bytes):
        try:
            return text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    return text


def _lines(text: str) -> list[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line[:-1] if line.endswith("\r") else line for line in lines]


# -- matrix CSV ---------------------------------------------------------------


def parse_matrix_csv(text: Text) -> CoverageMatrix:
    text = _decode(text)
    if not text.strip(" \t\r\n\ufeff") and "\n" not in text:
        raise ParseError("empty matrix file")
    lines = _lines(text.lstrip("\ufeff"))
    header = [cell.strip() for cell in lines[0].split(",")]
    statements = header[1:]
    for j, label in enumerate(statements, start=2):
        if not label:
            raise ParseError(f"empty statement label in column {j}", line=1)
    _check_unique(statements, "statement", line=1)

    width = len(statements)
    tests: list[str] = []
    rows: list[frozenset[int]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = [cell.strip() for cell in line.split(",")]
        label, values = cells[0], cells[1:]
        if not label:
            raise ParseError("empty test label", line=lineno)
        if len(values) != width:
            raise ParseError(
                f"row {label} has {len(values)} cells, expected {width}", line=lineno
            )
        row = set()
        for j, value in enumerate(values):
            if value == "1":
                row.add(j)
            elif value != "0":
                raise ParseError(
                    f"non-binary cell {value!r} at ({label}, {statements[j]})", line=lineno
                )
        tests.append(label)
        rows.append(frozenset(row))
    _check_unique(tests, "test")

    if not tests:
        warnings.warn("matrix has no tests", IngestWarning, stacklevel=2)
    if not statements:
        warnings.warn("matrix has no statements", IngestWarning, stacklevel=2)
    return CoverageMatrix(tuple(tests), tuple(statements), tuple(rows))


def _check_unique(labels: Sequence[str], kind: str, line: int | None = None) -> None:
    seen = set()
    for label in labels:
        if label in seen:
            raise ParseError(f"duplicate {kind} label {label!r}", line=line)
        seen.add(label)


def write_matrix_csv(m: CoverageMatrix) -> bytes:
    for label in m.tests + m.statements:
        if any(c in label for c in ",\r\n") or label != label.strip():
            raise ParseError(f"label {label!r} cannot be written to matrix CSV")
    width = len(m.statements)
    out = [",".join(("",) + m.statements)]
    for test, row in zip(m.tests, m.rows):
        cells = ["0"] * width
        for j in row:
            cells[j] = "1"
        out.append(",".join([test] + cells))
    return ("\n".join(out) + "\n").encode("utf-8")


# -- change spec ---------------------------------------------------------------

_KEYS = ("deleted", "modified")


@dataclass(frozen=True)
class ChangeSpecDocument:
    deleted: tuple[str, ...]
    modified: tuple[str, ...]
    source: str = "explicit-file"  # or "derived-from-diff"

    def to_changeset(self) -> ChangeSet:
        return ChangeSet(frozenset(self.deleted), frozenset(self.modified))

    def render(self) -> str:
        return "".join(
            key + ":" + "".join(" " + label for label in getattr(self, key)) + "\n" for key in _KEYS
        )


def parse_changeset_document(text: Text) -> ChangeSpecDocument:
    text = _decode(text)
    found: dict[str, dict[str, None]] = {key: {} for key in _KEYS}
    for lineno, raw in enumerate(_lines(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'deleted:' or 'modified:', got {line!r}", line=lineno)
        key = key.strip().lower()
        if key not in found:
            raise ParseError(f"unknown key {key!r}", line=lineno)
        for label in re.split(r"[\s,]+", value.strip()):
            if label:
                found[key][label] = None
    overlap = set(found["deleted"]) & set(found["modified"])
    if overlap:
        raise OverlapError(sorted(overlap))
    return ChangeSpecDocument(tuple(found["deleted"]), tuple(found["modified"]))


def parse_changeset(text: Text) -> ChangeSet:
    return parse_changeset_document(text).to_changeset()


def changeset_document(changes: ChangeSet, statements: Sequence[str] = (), source="explicit-file"):
    """Canonical document for ``changes``: labels in matrix order, then sorted."""
    rank = {s: j for j, s in enumerate(statements)}

    def order(labels):
        return tuple(sorted(labels, key=lambda s: (s not in rank, rank.get(s, 0), s)))

    return ChangeSpecDocument(order(changes.deleted), order(changes.modified), source)


# -- unified diff ----------------------------------------------------------------

LineKey = Union[int, "tuple[str, int]"]
_HUNK = re.compile(r"^@@ -(\d+)(?:,(\d+))? \+(\d+)(?:,(\d+))? @@")
_HEADER_PREFIXES = (
    "diff ", "index ", "old mode", "new mode", "deleted file mode", "new file mode",
    "similarity index", "dissimilarity index", "rename from", "rename to",
    "copy from", "copy to", "Binary files", "Only in",
)  # fmt: skip


def parse_line_map(text: Text) -> dict[LineKey, tuple[str, ...]]:
    text = _decode(text)
    mapping: dict[LineKey, list[str]] = {}
    for lineno, raw in enumerate(_lines(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected '<label> <line>' or '<label> <path>:<line>'", line=lineno)
        label, where = parts
        path, _, num = where.rpartition(":")
        if not num.isdigit():
            raise ParseError(f"bad line number in {where!r}", line=lineno)
        key: LineKey = (path, int(num)) if path else int(num)
        if label not in mapping.setdefault(key, []):
            mapping[key].append(label)
    return {k: tuple(v) for k, v in mapping.items()}


def _strip_path(raw: str) -> str | None:
    path = raw.split("\t", 1)[0].strip()
    if path == "/dev/null":
        return None
    if path.startswith(("a/", "b/")):
        path = path[2:]
    return path


def _normalize_map(mapping: Mapping) -> dict[LineKey, tuple[str, ...]]:
    out = {}
    for key, labels in mapping.items():
        out[key] = (labels,) if isinstance(labels, str) else tuple(labels)
    return out


def derive_changeset_from_diff(diff: Text, mapping: Mapping) -> ChangeSet:
    """Map a unified diff of the old program onto statement labels.

    Inside a hunk, a run of ``-`` lines immediately followed by a run of ``+``
    lines is a replacement: removed lines are paired positionally with added
    ones and become *modified*; removed lines beyond the added run, and removed
    runs with no ``+`` run after them, become *deleted*. Pure additions
    contribute nothing since new statements have no column yet.

    A label reached by both a deleted and a modified line is reported as
    modified: part of the statement survives.
    """
    diff = _decode(diff)
    mapping = _normalize_map(mapping)
    deleted: set[str] = set()
    modified: set[str] = set()
    unmapped: list[str] = []
    added = 0

    def labels_for(path, line):
        found = mapping.get((path, line)) if path is not None else None
        if found is None:
            found = mapping.get(line)
        if found is None:
            unmapped.append(f"{path}:{line}" if path else str(line))
            return ()
        return found

    def flush(path, minus, plus):
        nonlocal added
        paired = min(len(minus), plus)
        for k, line in enumerate(minus):
            (modified if k < paired else deleted).update(labels_for(path, line))
        added += max(0, plus - len(minus))

    lines = _lines(diff)
    path = None
    started = False
    i = 0
    while i < len(lines):
        line = lines[i]
        lineno = i + 1
        i += 1
        if line.startswith("--- "):
            started = True
            path = _strip_path(line[4:])
            continue
        if line.startswith("+++ "):
            if path is None:
                path = _strip_path(line[4:])
            continue
        if line.startswith("@@"):
            match = _HUNK.match(line)
            if not match:
                raise ParseError(f"malformed hunk header {line!r}", line=lineno)
            started = True
            old_line = int(match.group(1))
            old_left = int(match.group(2)) if match.group(2) is not None else 1
            new_left = int(match.group(4)) if match.group(4) is not None else 1
            minus: list[int] = []
            plus = 0
            while old_left > 0 or new_left > 0:
                if i >= len(lines):
                    raise ParseError("diff ends inside a hunk", line=lineno)
                body = lines[i]
                i += 1
                tag = body[:1]
                if tag == "\\":
                    continue
                if tag in (" ", ""):
                    flush(path, minus, plus)
                    minus, plus = [], 0
                    old_line += 1
                    old_left -= 1
                    new_left -= 1
                elif tag == "-":
                    if plus:
                        flush(path, minus, plus)
                        minus, plus = [], 0
                    minus.append(old_line)
                    old_line += 1
                    old_left -= 1
                elif tag == "+":
                    plus += 1
                    new_left -= 1
                else:
                    raise ParseError(f"unexpected line in hunk: {body!r}", line=i)
                if old_left < 0 or new_left < 0:
                    raise ParseError("hunk body longer than its header declares", line=i)
            flush(path, minus, plus)
            while i < len(lines) and lines[i].startswith("\\"):
                i += 1
            continue
        if not started or not line.strip() or line.startswith(_HEADER_PREFIXES):
            if line.startswith("diff "):
                started = True
                path = None
            continue
        raise ParseError(f"unexpected line outside any hunk: {line!r}", line=lineno)

    if unmapped:
        warnings.warn(
            f"changed line(s) with no statement label: {', '.join(unmapped)}",
            IngestWarning,
            stacklevel=2,
        )
    if added:
        warnings.warn(
            f"{added} added line(s) introduce new statements not covered by the matrix",
            IngestWarning,
            stacklevel=2,
        )
    return ChangeSet(frozenset(deleted - modified), frozenset(modified))


# -- LCOV ------------------------------------------------------------------------

_IGNORED_LCOV = ("TN", "VER", "FN", "FNDA", "FNF", "FNH", "FNL", "FNA", "BRDA", "BRF", "BRH", "LF", "LH")


def parse_lcov(label: str, text: Text) -> dict[str, int]:
    """Hit counts per ``<file>:<line>`` statement in one LCOV tracefile."""
    text = _decode(text)
    hits: dict[str, int] = {}
    source = None
    ignored = set()
    for lineno, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line:
            continue
        if line == "end_of_record":
            source = None
            continue
        key, sep, data = line.partition(":")
        if not sep:
            raise ParseError(f"{label}: malformed LCOV record {line!r}", line=lineno)
        if key == "SF":
            source = data
        elif key == "DA":
            if source is None:
                raise ParseError(f"{label}: DA record outside an SF block", line=lineno)
            parts = data.split(",")
            try:
                num, count = int(parts[0]), int(parts[1])
            except (IndexError, ValueError):
                raise ParseError(f"{label}: malformed DA record {line!r}", line=lineno) from None
            stmt = f"{source}:{num}"
            hits[stmt] = hits.get(stmt, 0) + max(count, 0)
        elif key in _IGNORED_LCOV:
            if key in ("FN", "FNDA", "BRDA"):
                ignored.add(key)
        else:
            raise ParseError(f"{label}: unknown LCOV record type {key!r}", line=lineno)
    if ignored:
        warnings.warn(
            f"{label}: ignored {', '.join(sorted(ignored))} records (statement coverage only)",
            IngestWarning,
            stacklevel=2,
        )
    return hits


def import_lcov(records: Iterable[tuple[str, Text]]) -> CoverageMatrix:
    statements: dict[str, int] = {}
    coverage: dict[str, list[str]] = {}
    for label, text in records:
        if label in coverage:
            raise ParseError(f"duplicate test label {label!r}")
        hits = parse_lcov(label, text)
        for stmt in hits:
            statements.setdefault(stmt, len(statements))
        coverage[label] = [s for s, n in hits.items() if n > 0]
    return CoverageMatrix.from_coverage(tuple(statements), coverage)


def write_lcov(m: CoverageMatrix, test: str) -> str:
    """LCOV text for one matrix row; statement labels must look like ``file:line``."""
    by_file: dict[str, list[tuple[int, int]]] = {}
    row = m.rows[m.test_index[test]]
    for j, stmt in enumerate(m.statements):
        path, _, num = stmt.rpartition(":")
        if not path or not num.isdigit():
            raise ParseError(f"statement {stmt!r} is not of the form <file>:<line>")
        by_file.setdefault(path, []).append((int(num), 1 if j in row else 0))
    out = [f"TN:{test}"]
    for path, entries in by_file.items():
        out.append(f"SF:{path}")
        out.extend(f"DA:{n},{h}" for n, h in entries)
        out.append("end_of_record")
    return "\n".join(out) + "\n"
