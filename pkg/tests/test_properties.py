"""Invariants of selection and prioritization over generated matrices."""

from hypothesis import given, settings
from hypothesis import strategies as st

from tcsp.matrix import ChangeSet, CoverageMatrix
from tcsp.pipeline import run
from tcsp.prioritization import coverage_curve, prioritize
from tcsp.selection import select

from oracles import classify_tests, greedy_steps


@st.composite
def cases(draw, max_tests=12, max_statements=12):
    n = draw(st.integers(0, max_tests))
    k = draw(st.integers(0, max_statements))
    cells = draw(
        st.lists(st.lists(st.integers(0, 1), min_size=k, max_size=k), min_size=n, max_size=n)
    )
    roles = draw(st.lists(st.sampled_from("dm."), min_size=k, max_size=k))
    tests = [f"T{i + 1}" for i in range(n)]
    statements = [f"S{j + 1}" for j in range(k)]
    m = CoverageMatrix.from_lists(tests, statements, cells)
    changes = ChangeSet(
        {s for s, r in zip(statements, roles) if r == "d"},
        {s for s, r in zip(statements, roles) if r == "m"},
    )
    return m, cells, changes


@given(cases())
@settings(max_examples=400)
def test_partition_is_disjoint_exhaustive_and_well_defined(case):
    m, cells, changes = case
    p = select(m, changes)
    groups = [set(p.out_dated), set(p.surplus), set(p.required)]
    assert sum(map(len, groups)) == len(m.tests)
    assert set().union(*groups) == set(m.tests)
    assert p.reduced.tests == p.required
    survived = m.remove_statements(changes.deleted)
    for t in p.out_dated:
        assert survived.row_coverage_count(t) == 0
    for t in p.surplus:
        assert survived.row_coverage_count(t) > 0
        assert not survived.covered_statements(t) & changes.modified
    for t in p.required:
        assert survived.row_coverage_count(t) > 0
        assert not changes.modified or survived.covered_statements(t) & changes.modified
    if not changes.modified:
        assert p.surplus == ()


@given(cases())
@settings(max_examples=400)
def test_selection_matches_oracle(case):
    m, cells, changes = case
    labels = classify_tests(cells, m.statements, changes.deleted, changes.modified)
    p = select(m, changes)
    for name in ("out_dated", "surplus", "required"):
        assert getattr(p, name) == tuple(t for t, c in zip(m.tests, labels) if c == name)


@given(cases())
@settings(max_examples=400)
def test_greedy_invariants(case):
    m, cells, _ = case
    suite = prioritize(m)
    assert len(set(suite.order)) == len(suite.order)
    assert len(suite.order) <= min(len(m.tests), len(m.statements))
    covered: set[str] = set()
    chosen: set[str] = set()
    for step in suite.trace:
        assert step.count == len(step.newly_covered) > 0
        assert not covered & set(step.newly_covered)
        # dominance: nobody left could have added more
        for t in m.tests:
            if t not in chosen:
                assert len(m.covered_statements(t) - covered) <= step.count
        assert step.tied[0] == step.chosen
        covered |= set(step.newly_covered)
        chosen.add(step.chosen)
    assert covered | set(suite.uncoverable) == set(m.statements)
    assert not covered & set(suite.uncoverable)
    assert suite.uncoverable == m.uncovered_statements()


@given(cases())
@settings(max_examples=400)
def test_greedy_matches_oracle(case):
    m, cells, _ = case
    steps = greedy_steps(cells)
    suite = prioritize(m)
    assert suite.order == tuple(m.tests[i] for i, _, _ in steps)
    assert [s.count for s in suite.trace] == [c for _, c, _ in steps]


@given(cases())
@settings(max_examples=300)
def test_curve_is_monotone_and_ends_at_coverable_fraction(case):
    m, _, _ = case
    suite = prioritize(m)
    curve = coverage_curve(suite, m)
    fractions = [f for _, f in curve]
    assert fractions == sorted(fractions)
    assert [k for k, _ in curve] == list(range(len(suite.order) + 1))
    if m.statements and suite.order:
        assert curve[-1][1] == (len(m.statements) - len(suite.uncoverable)) / len(m.statements)


@given(cases())
@settings(max_examples=200)
def test_run_composes_select_and_prioritize(case):
    m, _, changes = case
    partition, report = run(m, changes)
    alone = prioritize(partition.reduced)
    assert report.order == alone.order
    assert report.trace == alone.trace
    assert report.original_size == report.out_dated_size + report.surplus_size + report.required_size
