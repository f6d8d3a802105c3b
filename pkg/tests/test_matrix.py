import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcsp.errors import MatrixError, OverlapError, UnknownStatementError, UnknownTestError
from tcsp.matrix import ChangeSet, CoverageMatrix, validate, validate_cells


@st.composite
def matrices(draw, max_tests=8, max_statements=8):
    n = draw(st.integers(0, max_tests))
    k = draw(st.integers(0, max_statements))
    cells = draw(st.lists(st.lists(st.booleans(), min_size=k, max_size=k), min_size=n, max_size=n))
    return CoverageMatrix.from_lists(
        [f"T{i}" for i in range(n)], [f"S{j}" for j in range(k)], cells
    )


def test_row_coverage_count(table2):
    assert table2.row_coverage_count("T1") == 4
    assert table2.row_coverage_count("T10") == 6


def test_row_coverage_count_without_columns():
    m = CoverageMatrix.from_lists(["T1", "T2"], [], [[], []])
    assert m.row_coverage_count("T2") == 0


def test_row_coverage_count_unknown_test(table2):
    with pytest.raises(UnknownTestError) as exc:
        table2.row_coverage_count("T99")
    assert exc.value.labels == ("T99",)


def test_remove_statements_gives_table2(table1, table2):
    assert table1.remove_statements({"S3", "S4", "S6", "S8", "S10", "S13"}) == table2


def test_remove_statements_identity(table1):
    assert table1.remove_statements(set()) == table1


def test_remove_statements_to_zero_columns():
    m = CoverageMatrix.from_lists(["T1"], ["S1"], [[1]])
    out = m.remove_statements({"S1"})
    assert out.tests == ("T1",)
    assert out.statements == ()
    assert out.row_coverage_count("T1") == 0


def test_remove_statements_lists_every_unknown(table1):
    with pytest.raises(UnknownStatementError) as exc:
        table1.remove_statements({"S1", "S98", "S99"})
    assert exc.value.labels == ("S98", "S99")


def test_remove_tests_gives_tables_4_and_5(table2, table4, table5):
    assert table2.remove_tests({"T3", "T11"}) == table4
    assert table4.remove_tests({"T2", "T7", "T15"}) == table5
    assert table4.remove_tests(set()) == table4


def test_remove_tests_unknown(table2):
    with pytest.raises(UnknownTestError):
        table2.remove_tests({"T42"})


def test_covered_statements(table2, table5):
    assert table2.covered_statements("T1") == {"S1", "S5", "S7", "S11"}
    assert table5.covered_statements("T10") == {"S1", "S2", "S7", "S9", "S14", "S15"}
    assert table2.covered_statements("T3") == frozenset()
    with pytest.raises(UnknownTestError):
        table2.covered_statements("nope")


def test_cells_and_lists_roundtrip(table1):
    assert table1.cell("T1", "S1") is True
    assert table1.cell("T1", "S2") is False
    again = CoverageMatrix.from_lists(table1.tests, table1.statements, table1.to_lists())
    assert again == table1


def test_from_coverage_matches_from_lists():
    a = CoverageMatrix.from_coverage(["S1", "S2", "S3"], {"T1": ["S3", "S1"], "T2": []})
    b = CoverageMatrix.from_lists(["T1", "T2"], ["S1", "S2", "S3"], [[1, 0, 1], [0, 0, 0]])
    assert a == b


@pytest.mark.parametrize(
    "tests, statements, cells",
    [
        (["T1", "T1"], ["S1"], [[1], [0]]),
        (["T1"], ["S1", "S1"], [[1, 0]]),
        (["T1", "T2"], ["S1", "S2"], [[1, 0], [1]]),
        ([""], ["S1"], [[1]]),
    ],
)
def test_constructor_rejects_invalid(tests, statements, cells):
    with pytest.raises(MatrixError):
        CoverageMatrix.from_lists(tests, statements, cells)


def test_validate_table1_ok(table1):
    report = validate(table1)
    assert report.ok
    assert report.findings == ()


def test_validate_duplicate_rows():
    report = validate_cells(["T1", "T1"], ["S1"], [[1], [1]])
    assert not report.ok
    assert "duplicate-test" in report.codes()


def test_validate_ragged_and_non_binary():
    report = validate_cells(["T1", "T2"], ["S1", "S2"], [[1, 0], [2]])
    assert {"ragged-row", "non-binary"} <= set(report.codes())


def test_validate_degenerate_warnings():
    report = validate(CoverageMatrix.from_lists(["T1"], [], [[]]))
    assert report.ok
    assert report.codes() == ["no-statements"]
    report = validate(CoverageMatrix.from_lists([], ["S1"], []))
    assert report.ok
    assert "no-tests" in report.codes()


def test_validate_uncovered_statement_is_warning():
    m = CoverageMatrix.from_lists(["T1"], ["S1", "S2"], [[1, 0]])
    report = validate(m)
    assert report.ok
    assert [f.code for f in report.warnings] == ["uncovered-statement"]


def test_changeset_rejects_overlap():
    with pytest.raises(OverlapError) as exc:
        ChangeSet({"S7", "S1"}, {"S7"})
    assert exc.value.labels == ("S7",)


def test_changeset_normalizes_to_frozensets():
    c = ChangeSet(["S1", "S1"], ("S2",))
    assert c.deleted == frozenset({"S1"})
    assert c == ChangeSet({"S1"}, {"S2"})
    assert not ChangeSet()


@given(matrices(), st.data())
@settings(max_examples=200)
def test_remove_statements_composes(m, data):
    s1 = set(data.draw(st.lists(st.sampled_from(m.statements), unique=True))) if m.statements else set()
    rest = [s for s in m.statements if s not in s1]
    s2 = set(data.draw(st.lists(st.sampled_from(rest), unique=True))) if rest else set()
    assert m.remove_statements(s1).remove_statements(s2) == m.remove_statements(s1 | s2)


@given(matrices(), st.data())
@settings(max_examples=200)
def test_removals_commute_and_keep_order(m, data):
    ts = set(data.draw(st.lists(st.sampled_from(m.tests), unique=True))) if m.tests else set()
    ss = set(data.draw(st.lists(st.sampled_from(m.statements), unique=True))) if m.statements else set()
    a = m.remove_tests(ts).remove_statements(ss)
    b = m.remove_statements(ss).remove_tests(ts)
    assert a == b
    positions = [m.statement_index[s] for s in a.statements]
    assert positions == sorted(positions)
    positions = [m.test_index[t] for t in a.tests]
    assert positions == sorted(positions)
    for t in a.tests:
        for s in a.statements:
            assert a.cell(t, s) == m.cell(t, s)


@given(matrices())
def test_count_equals_covered_size(m):
    for t in m.tests:
        assert m.row_coverage_count(t) == len(m.covered_statements(t))
