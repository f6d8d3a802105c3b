"""Built-in worked example: 15 tests x 15 statements, six deletions, three edits.

Every intermediate matrix, row-sum table and vector is recomputed and checked
against the transcribed goldens below. Table 7 and Table 9 keep all ten
required rows (chosen tests included, as zero rows) and only the statements
still uncovered after the first and second greedy picks.
"""

from __future__ import annotations

import sys
from typing import Mapping, TextIO

from .errors import GoldenMismatchError
from .matrix import ChangeSet, CoverageMatrix
from .prioritization import prioritize
from .selection import select

GOLDEN: dict[str, str] = {
    "table1": """
        S1 S2 S3 S4 S5 S6 S7 S8 S9 S10 S11 S12 S13 S14 S15
    T1  1 0 1 1 1 0 1 1 0 1 1 0 0 0 0
    T2  1 0 0 1 0 1 0 1 1 1 0 0 1 0 0
    T3  0 0 1 0 0 1 0 0 0 1 0 0 1 0 0
    T4  0 1 0 1 0 0 1 1 1 0 0 0 1 1 0
    T5  1 0 1 0 1 1 0 0 0 1 0 0 0 1 1
    T6  0 1 0 1 0 0 1 0 1 1 1 1 0 0 0
    T7  1 0 0 0 1 0 0 0 1 0 0 1 0 1 0
    T8  0 1 1 0 0 1 0 0 1 0 1 1 0 0 0
    T9  0 0 0 1 1 1 1 0 1 1 0 0 1 0 0
    T10 1 1 0 0 0 0 1 1 1 0 0 0 1 1 1
    T11 0 0 0 1 0 0 0 1 0 1 0 0 1 0 0
    T12 1 1 0 0 1 0 1 0 0 0 0 0 0 0 1
    T13 0 1 0 1 0 1 1 1 0 1 0 1 1 1 0
    T14 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0
    T15 1 0 0 0 1 0 0 0 1 0 1 1 0 0 0
    """,
    "table2": """
        S1 S2 S5 S7 S9 S11 S12 S14 S15
    T1  1 0 1 1 0 1 0 0 0
    T2  1 0 0 0 1 0 0 0 0
    T3  0 0 0 0 0 0 0 0 0
    T4  0 1 0 1 1 0 0 1 0
    T5  1 0 1 0 0 0 0 1 1
    T6  0 1 0 1 1 1 1 0 0
    T7  1 0 1 0 1 0 1 1 0
    T8  0 1 0 0 1 1 1 0 0
    T9  0 0 1 1 1 0 0 0 0
    T10 1 1 0 1 1 0 0 1 1
    T11 0 0 0 0 0 0 0 0 0
    T12 1 1 1 1 0 0 0 0 1
    T13 0 1 0 1 0 0 1 1 0
    T14 0 1 0 0 0 0 0 0 0
    T15 1 0 1 0 1 1 1 0 0
    """,
    "table3": "T1 4 T2 2 T3 0 T4 4 T5 4 T6 5 T7 5 T8 4 T9 3 T10 6 T11 0 T12 5 T13 4 T14 1 T15 5",
    "table4": """
        S1 S2 S5 S7 S9 S11 S12 S14 S15
    T1  1 0 1 1 0 1 0 0 0
    T2  1 0 0 0 1 0 0 0 0
    T4  0 1 0 1 1 0 0 1 0
    T5  1 0 1 0 0 0 0 1 1
    T6  0 1 0 1 1 1 1 0 0
    T7  1 0 1 0 1 0 1 1 0
    T8  0 1 0 0 1 1 1 0 0
    T9  0 0 1 1 1 0 0 0 0
    T10 1 1 0 1 1 0 0 1 1
    T12 1 1 1 1 0 0 0 0 1
    T13 0 1 0 1 0 0 1 1 0
    T14 0 1 0 0 0 0 0 0 0
    T15 1 0 1 0 1 1 1 0 0
    """,
    "table5": """
        S1 S2 S5 S7 S9 S11 S12 S14 S15
    T1  1 0 1 1 0 1 0 0 0
    T4  0 1 0 1 1 0 0 1 0
    T5  1 0 1 0 0 0 0 1 1
    T6  0 1 0 1 1 1 1 0 0
    T8  0 1 0 0 1 1 1 0 0
    T9  0 0 1 1 1 0 0 0 0
    T10 1 1 0 1 1 0 0 1 1
    T12 1 1 1 1 0 0 0 0 1
    T13 0 1 0 1 0 0 1 1 0
    T14 0 1 0 0 0 0 0 0 0
    """,
    "table6": "T1 4 T4 4 T5 4 T6 5 T8 4 T9 3 T10 6 T12 5 T13 4 T14 1",
    "table7": """
        S5 S11 S12
    T1  1 1 0
    T4  0 0 0
    T5  1 0 0
    T6  0 1 1
    T8  0 1 1
    T9  1 0 0
    T10 0 0 0
    T12 1 0 0
    T13 0 0 1
    T14 0 0 0
    """,
    "table8": "T1 2 T4 0 T5 1 T6 2 T8 2 T9 1 T10 0 T12 1 T13 1 T14 0",
    "table9": """
        S12
    T1  0
    T4  0
    T5  0
    T6  1
    T8  1
    T9  0
    T10 0
    T12 0
    T13 1
    T14 0
    """,
    "table10": "T1 0 T4 0 T5 0 T6 1 T8 1 T9 0 T10 0 T12 0 T13 1 T14 0",
    "deleted": "S3 S4 S6 S8 S10 S13",
    "modified": "S2 S7 S15",
    "out_dated": "T3 T11",
    "surplus": "T2 T7 T15",
    "required": "T1 T4 T5 T6 T8 T9 T10 T12 T13 T14",
    "order": "T10 T1 T6",
    "counts": "6 2 1",
    "ties": "T10 | T1 T6 T8 | T6 T8 T13",
}

TITLES = {
    "table1": "Table 1. Test cases and statement coverage",
    "table2": "Table 2. Coverage without deleted statements",
    "table3": "Table 3. Statements covered per test",
    "table4": "Table 4. Coverage without out-dated tests",
    "table5": "Table 5. Coverage without surplus tests",
    "table6": "Table 6. Statements covered per test (iteration 1)",
    "table7": "Table 7. Uncovered statements after iteration 1",
    "table8": "Table 8. Statements covered per test (iteration 2)",
    "table9": "Table 9. Uncovered statements after iteration 2",
    "table10": "Table 10. Statements covered per test (iteration 3)",
}


def parse_grid(text: str) -> CoverageMatrix:
    lines = [line.split() for line in text.strip().splitlines()]
    statements = lines[0]
    tests = [row[0] for row in lines[1:]]
    cells = [[int(v) for v in row[1:]] for row in lines[1:]]
    return CoverageMatrix.from_lists(tests, statements, cells)


def parse_sums(text: str) -> dict[str, int]:
    tokens = text.split()
    return {tokens[k]: int(tokens[k + 1]) for k in range(0, len(tokens), 2)}


def example_inputs(golden: Mapping[str, str] = GOLDEN) -> tuple[CoverageMatrix, ChangeSet]:
    return parse_grid(golden["table1"]), ChangeSet(
        frozenset(golden["deleted"].split()), frozenset(golden["modified"].split())
    )


def compare_matrix(name: str, got: CoverageMatrix, want: CoverageMatrix) -> None:
    where = TITLES.get(name, name)
    if got.statements != want.statements:
        raise GoldenMismatchError(
            f"{where}: columns {' '.join(got.statements)} != expected {' '.join(want.statements)}"
        )
    if got.tests != want.tests:
        raise GoldenMismatchError(f"{where}: rows {' '.join(got.tests)} != expected {' '.join(want.tests)}")
    for t in want.tests:
        for s in want.statements:
            a, b = got.cell(t, s), want.cell(t, s)
            if a != b:
                raise GoldenMismatchError(f"{where}: cell ({t}, {s}) is {int(a)}, expected {int(b)}")


def compare_sums(name: str, got: dict[str, int], want: dict[str, int]) -> None:
    where = TITLES.get(name, name)
    if list(got) != list(want):
        raise GoldenMismatchError(f"{where}: rows {' '.join(got)} != expected {' '.join(want)}")
    for t, n in want.items():
        if got[t] != n:
            raise GoldenMismatchError(f"{where}: {t} sums to {got[t]}, expected {n}")


def compare_vector(name: str, got, want) -> None:
    if list(got) != list(want):
        raise GoldenMismatchError(f"{name}: {{{', '.join(map(str, got))}}} != expected {{{', '.join(map(str, want))}}}")


def format_matrix(m: CoverageMatrix) -> str:
    lines = ["\t" + "\t".join(m.statements)]
    for test, cells in zip(m.tests, m.to_lists()):
        lines.append("\t".join([test] + [str(v) for v in cells]))
    return "\n".join(lines)


def format_sums(sums: dict[str, int]) -> str:
    return "\n".join(["Test Cases\tStatements Covered"] + [f"{t}\t{n}" for t, n in sums.items()])


def run_demo(golden: Mapping[str, str] = GOLDEN, out: TextIO | None = None) -> int:
    """Recompute the worked example, print it, and check every step.

    Raises :class:`GoldenMismatchError` at the first divergence.
    """
    out = out or sys.stdout
    m, changes = example_inputs(golden)

    def show(name, body):
        print(TITLES[name], file=out)
        print(body, file=out)
        print(file=out)

    def vector(name, labels):
        print(f"{name} = {{{', '.join(labels)}}}", file=out)

    show("table1", format_matrix(m))
    vector("SDEL", [s for s in m.statements if s in changes.deleted])
    vector("SMOD", [s for s in m.statements if s in changes.modified])
    print(file=out)

    table2 = m.remove_statements(changes.deleted)
    compare_matrix("table2", table2, parse_grid(golden["table2"]))
    show("table2", format_matrix(table2))

    table3 = table2.row_sums()
    compare_sums("table3", table3, parse_sums(golden["table3"]))
    show("table3", format_sums(table3))

    partition = select(m, changes)
    compare_vector("out_dated", partition.out_dated, golden["out_dated"].split())
    table4 = table2.remove_tests(partition.out_dated)
    compare_matrix("table4", table4, parse_grid(golden["table4"]))
    show("table4", format_matrix(table4))
    vector("out_dated", partition.out_dated)
    print(file=out)

    compare_vector("surplus", partition.surplus, golden["surplus"].split())
    table5 = table4.remove_tests(partition.surplus)
    compare_matrix("table5", table5, parse_grid(golden["table5"]))
    compare_matrix("table5", partition.reduced, parse_grid(golden["table5"]))
    show("table5", format_matrix(table5))
    vector("surplus", partition.surplus)
    compare_vector("required", partition.required, golden["required"].split())
    vector("required", partition.required)
    print(file=out)

    suite = prioritize(partition.reduced)
    residual = partition.reduced
    sums_tables = ("table6", "table8", "table10")
    matrix_tables = ("table7", "table9")
    ties = [group.split() for group in golden["ties"].split("|")]
    counts = [int(c) for c in golden["counts"].split()]
    order = golden["order"].split()
    if len(suite.trace) != len(order):
        compare_vector("TCP", suite.order, order)
    for k, step in enumerate(suite.trace):
        sums = residual.row_sums()
        compare_sums(sums_tables[k], sums, parse_sums(golden[sums_tables[k]]))
        show(sums_tables[k], format_sums(sums))
        if step.count != counts[k] or step.count != max(sums.values()):
            raise GoldenMismatchError(f"iteration {k + 1}: picked count {step.count}, expected {counts[k]}")
        compare_vector(f"iteration {k + 1} ties", step.tied, ties[k])
        compare_vector(f"TCP after iteration {k + 1}", suite.order[: k + 1], order[: k + 1])
        vector("TCP", suite.order[: k + 1])
        print(file=out)
        residual = residual.remove_statements(step.newly_covered)
        if k < len(matrix_tables):
            compare_matrix(matrix_tables[k], residual, parse_grid(golden[matrix_tables[k]]))
            show(matrix_tables[k], format_matrix(residual))

    compare_vector("uncoverable", suite.uncoverable, [])
    print(f"Suite size after selection: {len(m.tests)} -> {len(partition.required)}", file=out)
    print(f"Suite size after prioritization: {len(partition.required)} -> {len(suite.order)}", file=out)
    print("All intermediate tables match.", file=out)
    return 0
