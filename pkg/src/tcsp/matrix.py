"""Coverage matrix model.

A :class:`CoverageMatrix` is an immutable boolean test x statement incidence
matrix with explicitly ordered row and column labels. Rows are stored sparsely
as frozensets of column positions; only the label-ordered view is public.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import MatrixError, OverlapError, UnknownStatementError, UnknownTestError

__all__ = [
    "ChangeSet",
    "CoverageMatrix",
    "Finding",
    "ValidationReport",
    "validate",
    "validate_cells",
]


def _duplicates(labels: Iterable[str]) -> list[str]:
    counts = Counter(labels)
    seen: list[str] = []
    for label in labels:
        if counts[label] > 1 and label not in seen:
            seen.append(label)
    return seen


@dataclass(frozen=True)
class ChangeSet:
    """Deleted and modified statement labels between two program versions."""

    deleted: frozenset[str] = frozenset()
    modified: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "deleted", frozenset(self.deleted))
        object.__setattr__(self, "modified", frozenset(self.modified))
        overlap = self.deleted & self.modified
        if overlap:
            raise OverlapError(sorted(overlap))

    def __bool__(self):
        return bool(self.deleted or self.modified)


@dataclass(frozen=True)
class CoverageMatrix:
    tests: tuple[str, ...]
    statements: tuple[str, ...]
    rows: tuple[frozenset[int], ...] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "tests", tuple(self.tests))
        object.__setattr__(self, "statements", tuple(self.statements))
        object.__setattr__(self, "rows", tuple(frozenset(r) for r in self.rows))
        if len(self.rows) != len(self.tests):
            raise MatrixError(f"{len(self.tests)} test labels but {len(self.rows)} rows")
        for kind, labels in (("test", self.tests), ("statement", self.statements)):
            if any(not label for label in labels):
                raise MatrixError(f"empty {kind} label")
            dups = _duplicates(labels)
            if dups:
                raise MatrixError(f"duplicate {kind} label(s): {', '.join(dups)}")
        width = len(self.statements)
        for label, row in zip(self.tests, self.rows):
            if row and (min(row) < 0 or max(row) >= width):
                raise MatrixError(f"row {label} references a column outside 0..{width - 1}")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_lists(
        cls, tests: Sequence[str], statements: Sequence[str], cells: Sequence[Sequence]
    ) -> CoverageMatrix:
        """Build from a dense 0/1 (or bool) grid, one inner sequence per test."""
        width = len(statements)
        rows = []
        for label, cellrow in zip(tests, cells):
            if len(cellrow) != width:
                raise MatrixError(f"row {label} has {len(cellrow)} cells, expected {width}")
            rows.append(frozenset(j for j, v in enumerate(cellrow) if v))
        if len(cells) != len(tests):
            raise MatrixError(f"{len(tests)} test labels but {len(cells)} rows")
        return cls(tuple(tests), tuple(statements), tuple(rows))

    @classmethod
    def from_coverage(
        cls, statements: Sequence[str], coverage: Mapping[str, Iterable[str]]
    ) -> CoverageMatrix:
        """Build from ``{test: covered statement labels}``; rows follow mapping order."""
        index = {s: j for j, s in enumerate(statements)}
        rows = []
        for test, covered in coverage.items():
            covered = list(covered)
            missing = [s for s in covered if s not in index]
            if missing:
                raise UnknownStatementError(missing)
            rows.append(frozenset(index[s] for s in covered))
        return cls(tuple(coverage), tuple(statements), tuple(rows))

    # -- lookups ----------------------------------------------------------

    @cached_property
    def test_index(self) -> dict[str, int]:
        return {t: i for i, t in enumerate(self.tests)}

    @cached_property
    def statement_index(self) -> dict[str, int]:
        return {s: j for j, s in enumerate(self.statements)}

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.tests), len(self.statements)

    def _row(self, test: str) -> frozenset[int]:
        try:
            return self.rows[self.test_index[test]]
        except KeyError:
            raise UnknownTestError([test]) from None

    def cell(self, test: str, statement: str) -> bool:
        try:
            j = self.statement_index[statement]
        except KeyError:
            raise UnknownStatementError([statement]) from None
        return j in self._row(test)

    def to_lists(self) -> list[list[int]]:
        width = len(self.statements)
        return [[1 if j in row else 0 for j in range(width)] for row in self.rows]

    # -- primitive operations ----------------------------------------------

    def row_coverage_count(self, test: str) -> int:
        return len(self._row(test))

    def row_sums(self) -> dict[str, int]:
        return {t: len(r) for t, r in zip(self.tests, self.rows)}

    def covered_statements(self, test: str) -> frozenset[str]:
        return frozenset(self.statements[j] for j in self._row(test))

    def covered_in_order(self, test: str) -> tuple[str, ...]:
        """Like :meth:`covered_statements` but as a tuple in column order."""
        return tuple(self.statements[j] for j in sorted(self._row(test)))

    def remove_statements(self, statements: Iterable[str]) -> CoverageMatrix:
        drop = set(statements)
        if not drop:
            return self
        missing = [s for s in drop if s not in self.statement_index]
        if missing:
            raise UnknownStatementError(sorted(missing))
        remap: dict[int, int] = {}
        kept: list[str] = []
        for j, s in enumerate(self.statements):
            if s not in drop:
                remap[j] = len(kept)
                kept.append(s)
        rows = tuple(frozenset(remap[j] for j in row if j in remap) for row in self.rows)
        return CoverageMatrix(self.tests, tuple(kept), rows)

    def remove_tests(self, tests: Iterable[str]) -> CoverageMatrix:
        drop = set(tests)
        if not drop:
            return self
        missing = [t for t in drop if t not in self.test_index]
        if missing:
            raise UnknownTestError(sorted(missing))
        keep = [i for i, t in enumerate(self.tests) if t not in drop]
        return CoverageMatrix(
            tuple(self.tests[i] for i in keep),
            self.statements,
            tuple(self.rows[i] for i in keep),
        )

    def uncovered_statements(self) -> tuple[str, ...]:
        """Columns no row covers, in column order."""
        hit: set[int] = set().union(*self.rows) if self.rows else set()
        return tuple(s for j, s in enumerate(self.statements) if j not in hit)

    def validate(self) -> ValidationReport:
        return validate(self)


@dataclass(frozen=True)
class Finding:
    severity: str  # "error" | "warning"
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    @property
    def errors(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "error")

    @property
    def warnings(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "warning")

    def codes(self) -> list[str]:
        return [f.code for f in self.findings]


def _label_findings(tests, statements) -> list[Finding]:
    findings = []
    for kind, labels in (("test", tests), ("statement", statements)):
        if any(not label for label in labels):
            findings.append(Finding("error", f"empty-{kind}-label", f"a {kind} label is empty"))
        for label in _duplicates(labels):
            findings.append(
                Finding("error", f"duplicate-{kind}", f"{kind} label {label!r} appears more than once")
            )
    if not tests:
        findings.append(Finding("warning", "no-tests", "matrix has no tests"))
    if not statements:
        findings.append(Finding("warning", "no-statements", "matrix has no statements"))
    return findings


def validate(m: CoverageMatrix) -> ValidationReport:
    """Report degenerate shapes and never-covered statements of a built matrix."""
    findings = _label_findings(m.tests, m.statements)
    for s in m.uncovered_statements():
        findings.append(Finding("warning", "uncovered-statement", f"statement {s} is covered by no test"))
    return ValidationReport(tuple(findings))


def validate_cells(
    tests: Sequence[str], statements: Sequence[str], cells: Sequence[Sequence]
) -> ValidationReport:
    """Validate raw, not-yet-built matrix data. Never raises."""
    findings = _label_findings(tests, statements)
    if len(cells) != len(tests):
        findings.append(
            Finding("error", "row-count", f"{len(tests)} test labels but {len(cells)} rows")
        )
    width = len(statements)
    for label, row in zip(tests, cells):
        if len(row) != width:
            findings.append(
                Finding("error", "ragged-row", f"row {label} has {len(row)} cells, expected {width}")
            )
        bad = [v for v in row if v not in (0, 1)]
        if bad:
            findings.append(Finding("error", "non-binary", f"row {label} has non-binary cell {bad[0]!r}"))
    if not any(f.severity == "error" for f in findings):
        hit = {j for row in cells for j, v in enumerate(row) if v}
        for j, s in enumerate(statements):
            if j not in hit:
                findings.append(
                    Finding("warning", "uncovered-statement", f"statement {s} is covered by no test")
                )
    return ValidationReport(tuple(findings))
