"""Greedy additional-coverage prioritization.

Repeatedly pick the test that covers the most not-yet-covered statements,
breaking ties by original row order, until nothing more can be covered.
Statements no test executes are reported as uncoverable instead of looping.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MismatchError, SemanticError
from .matrix import CoverageMatrix
from .selection import reduction_ratio


@dataclass(frozen=True)
class TraceStep:
    chosen: str
    count: int  # residual coverage of ``chosen`` when picked
    newly_covered: tuple[str, ...]
    tied: tuple[str, ...]  # every remaining test sharing the maximal count, row order


@dataclass(frozen=True)
class PrioritizedSuite:
    order: tuple[str, ...]
    trace: tuple[TraceStep, ...]
    uncoverable: tuple[str, ...]
    # zero-contribution tests tacked onto ``order`` by append_unchosen
    appended: tuple[str, ...] = ()

    @property
    def greedy_order(self) -> tuple[str, ...]:
        return tuple(step.chosen for step in self.trace)


def prioritize(m: CoverageMatrix) -> PrioritizedSuite:
    counts = [len(row) for row in m.rows]

    covering: list[list[int]] = [[] for _ in m.statements]
    for i, row in enumerate(m.rows):
        for j in row:
            covering[j].append(i)

    # buckets[c] holds the unchosen tests whose residual count is c
    top = max(counts, default=0)
    buckets: list[set[int]] = [set() for _ in range(top + 1)]
    for i, c in enumerate(counts):
        if c:
            buckets[c].add(i)

    covered = [False] * len(m.statements)
    trace: list[TraceStep] = []
    while True:
        while top > 0 and not buckets[top]:
            top -= 1
        if top == 0:
            break
        tied = sorted(buckets[top])
        best = tied[0]
        buckets[top].discard(best)
        counts[best] = 0

        newly = sorted(j for j in m.rows[best] if not covered[j])
        for j in newly:
            covered[j] = True
            for i in covering[j]:
                c = counts[i]
                if c:
                    buckets[c].discard(i)
                    counts[i] = c - 1
                    if c > 1:
                        buckets[c - 1].add(i)
        trace.append(
            TraceStep(
                chosen=m.tests[best],
                count=len(newly),
                newly_covered=tuple(m.statements[j] for j in newly),
                tied=tuple(m.tests[i] for i in tied),
            )
        )

    return PrioritizedSuite(
        order=tuple(step.chosen for step in trace),
        trace=tuple(trace),
        uncoverable=tuple(s for j, s in enumerate(m.statements) if not covered[j]),
    )


def append_unchosen(p: PrioritizedSuite, m: CoverageMatrix) -> PrioritizedSuite:
    """Follow the greedy order with every unchosen test, in row order."""
    chosen = set(p.order)
    rest = tuple(t for t in m.tests if t not in chosen)
    return PrioritizedSuite(p.order + rest, p.trace, p.uncoverable, p.appended + rest)


def coverage_curve(p: PrioritizedSuite, m: CoverageMatrix) -> list[tuple[int, float]]:
    """Cumulative fraction of statements covered by each prefix of the order.

    Raises :class:`MismatchError` when replaying the order on ``m`` does not
    reproduce the suite's trace.
    """
    if len(set(p.order)) != len(p.order) or any(t not in m.test_index for t in p.order):
        raise MismatchError("prioritized order does not come from this matrix")
    total = len(m.statements)
    covered: set[int] = set()
    curve = [(0, 0.0)]
    for k, test in enumerate(p.order, start=1):
        new = m.rows[m.test_index[test]] - covered
        if k <= len(p.trace):
            step = p.trace[k - 1]
            if step.chosen != test or {m.statements[j] for j in new} != set(step.newly_covered):
                raise MismatchError(f"step {k} of the trace does not replay on this matrix")
        elif new:
            raise MismatchError(f"appended test {test} adds coverage")
        covered |= new
        curve.append((k, len(covered) / total if total else 1.0))
    if {s for j, s in enumerate(m.statements) if j not in covered} != set(p.uncoverable):
        raise MismatchError("uncoverable statements disagree with this matrix")
    return curve


def prioritization_metrics(p: PrioritizedSuite, selected_size: int) -> dict:
    if selected_size < len(p.order):
        raise SemanticError(
            f"prioritized suite has {len(p.order)} tests but only {selected_size} were selected"
        )
    warnings = []
    if not p.trace and selected_size > 0:
        warnings.append("nothing coverable: no selected test covers any remaining statement")
    return {
        "prioritized_size": len(p.order),
        "required_size": selected_size,
        "prioritization_reduction": reduction_ratio(selected_size, len(p.order)),
        "warnings": warnings,
    }
