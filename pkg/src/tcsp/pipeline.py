"""Select-then-prioritize orchestration shared by the CLI and library users."""

from __future__ import annotations

from typing import Iterable

from .matrix import ChangeSet, CoverageMatrix
from .prioritization import append_unchosen, prioritize
from .report import SuiteReport, build_report
from .selection import SelectionPartition, select


def run_selection(m: CoverageMatrix, changes: ChangeSet, warnings: Iterable[str] = ()):
    partition = select(m, changes)
    return partition, build_report(original=m, partition=partition, warnings=warnings)


def run_prioritization(
    m: CoverageMatrix, append: bool = False, warnings: Iterable[str] = ()
) -> SuiteReport:
    suite = prioritize(m)
    if append:
        suite = append_unchosen(suite, m)
    return build_report(prioritized_from=m, suite=suite, warnings=warnings)


def run(
    m: CoverageMatrix, changes: ChangeSet, append: bool = False, warnings: Iterable[str] = ()
) -> tuple[SelectionPartition, SuiteReport]:
    partition = select(m, changes)
    suite = prioritize(partition.reduced)
    if append:
        suite = append_unchosen(suite, partition.reduced)
    report = build_report(
        original=m,
        partition=partition,
        prioritized_from=partition.reduced,
        suite=suite,
        warnings=warnings,
    )
    return partition, report
