from pathlib import Path

import pytest

from tcsp.demo import GOLDEN, example_inputs, parse_grid
from tcsp.matrix import ChangeSet

FIXTURES = Path(__file__).parent / "fixtures"

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def table1():
    return example_inputs()[0]


@pytest.fixture
def example_changes():
    return ChangeSet(
        frozenset({"S3", "S4", "S6", "S8", "S10", "S13"}), frozenset({"S2", "S7", "S15"})
    )


@pytest.fixture
def table2():
    return parse_grid(GOLDEN["table2"])


@pytest.fixture
def table4():
    return parse_grid(GOLDEN["table4"])


@pytest.fixture
def table5():
    return parse_grid(GOLDEN["table5"])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda n: int(n.split()[0][2:])):
        passed, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
