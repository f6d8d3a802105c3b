import io

import pytest

from tcsp.demo import GOLDEN, TITLES, parse_grid, parse_sums, run_demo
from tcsp.errors import GoldenMismatchError


def test_demo_passes():
    out = io.StringIO()
    assert run_demo(out=out) == 0
    text = out.getvalue()
    for title in TITLES.values():
        assert title in text
    assert "required = {T1, T4, T5, T6, T8, T9, T10, T12, T13, T14}" in text
    assert text.rstrip().endswith("All intermediate tables match.")


def test_demo_output_is_byte_identical():
    a, b = io.StringIO(), io.StringIO()
    run_demo(out=a)
    run_demo(out=b)
    assert a.getvalue() == b.getvalue()


def _flip(grid: str, test: str, column: int) -> str:
    lines = grid.strip().splitlines()
    out = []
    for line in lines:
        parts = line.split()
        if parts and parts[0] == test:
            parts[column] = "1" if parts[column] == "0" else "0"
        out.append(" ".join(parts))
    return "\n".join(out)


@pytest.mark.parametrize(
    "table, test, column, cell",
    [
        ("table2", "T7", 3, "(T7, S5)"),
        ("table5", "T13", 9, "(T13, S15)"),
        ("table7", "T9", 1, "(T9, S5)"),
        ("table9", "T6", 1, "(T6, S12)"),
    ],
)
def test_tampered_matrix_names_cell(table, test, column, cell):
    tampered = dict(GOLDEN, **{table: _flip(GOLDEN[table], test, column)})
    with pytest.raises(GoldenMismatchError) as exc:
        run_demo(tampered, out=io.StringIO())
    assert TITLES[table] in str(exc.value)
    assert cell in str(exc.value)


def test_tampered_vector():
    tampered = dict(GOLDEN, surplus="T2 T7")
    with pytest.raises(GoldenMismatchError, match="surplus"):
        run_demo(tampered, out=io.StringIO())


def test_tampered_order():
    tampered = dict(GOLDEN, order="T10 T6 T1")
    with pytest.raises(GoldenMismatchError, match="iteration 2"):
        run_demo(tampered, out=io.StringIO())


def test_golden_sum_tables_agree_with_golden_matrices():
    # Tables 3/6/8/10 are the row sums of Tables 2/5/7/9
    for sums, grid in (("table3", "table2"), ("table6", "table5"), ("table8", "table7"), ("table10", "table9")):
        assert parse_grid(GOLDEN[grid]).row_sums() == parse_sums(GOLDEN[sums])
