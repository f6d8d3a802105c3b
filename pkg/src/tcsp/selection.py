"""Change-driven test selection.

The suite is split into three clusters:

* ``out_dated`` - tests covering nothing once deleted statements are gone,
* ``surplus``   - tests that still cover something but no modified statement,
* ``required``  - tests covering at least one modified statement.

When the change set modifies nothing, the surplus filter is skipped and every
test that still covers something is required.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MismatchError, UnknownStatementError
from .matrix import ChangeSet, CoverageMatrix


@dataclass(frozen=True)
class SelectionPartition:
    out_dated: tuple[str, ...]
    surplus: tuple[str, ...]
    required: tuple[str, ...]
    reduced: CoverageMatrix
    # modified statements no required test executes
    modified_uncovered: tuple[str, ...] = ()

    @property
    def clusters(self) -> dict[str, tuple[str, ...]]:
        return {"out_dated": self.out_dated, "surplus": self.surplus, "required": self.required}


def check_changeset(m: CoverageMatrix, changes: ChangeSet) -> None:
    missing = sorted((changes.deleted | changes.modified) - m.statement_index.keys())
    if missing:
        raise UnknownStatementError(missing)


def select(m: CoverageMatrix, changes: ChangeSet) -> SelectionPartition:
    check_changeset(m, changes)

    # step 1: drop deleted columns
    survived = m.remove_statements(changes.deleted)

    # steps 2-3: zero row sum -> out_dated
    counts = survived.row_sums()
    out_dated = [t for t in survived.tests if counts[t] == 0]
    active = survived.remove_tests(out_dated)

    # step 4: no modified statement covered -> surplus
    surplus: list[str] = []
    if changes.modified:
        mod_cols = frozenset(active.statement_index[s] for s in changes.modified)
        surplus = [t for t, row in zip(active.tests, active.rows) if row.isdisjoint(mod_cols)]

    # step 5: the rest is required
    reduced = active.remove_tests(surplus)

    hit = set().union(*reduced.rows) if reduced.rows else set()
    modified_uncovered = tuple(
        s for s in reduced.statements if s in changes.modified and reduced.statement_index[s] not in hit
    )
    return SelectionPartition(
        out_dated=tuple(out_dated),
        surplus=tuple(surplus),
        required=reduced.tests,
        reduced=reduced,
        modified_uncovered=modified_uncovered,
    )


def reduction_ratio(before: int, after: int) -> float:
    """``1 - after/before``; an empty suite has nothing to reduce."""
    return 0.0 if before == 0 else 1.0 - after / before


def selection_metrics(p: SelectionPartition, original: CoverageMatrix) -> dict:
    clustered = p.out_dated + p.surplus + p.required
    if len(clustered) != len(original.tests) or set(clustered) != set(original.tests):
        raise MismatchError("selection clusters do not partition the matrix's tests")
    return {
        "original_size": len(original.tests),
        "out_dated_size": len(p.out_dated),
        "surplus_size": len(p.surplus),
        "required_size": len(p.required),
        "selection_reduction": reduction_ratio(len(original.tests), len(p.required)),
    }
