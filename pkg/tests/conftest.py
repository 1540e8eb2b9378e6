import pytest

from transversal_kit.groups import (
    Perm,
    generate_closure,
    small_group_suite,
    subgroup_from_generators,
)

# Filled by tests/test_acceptance.py; printed once at the end of the run.
ACCEPTANCE_LINES: dict[str, str] = {}


def record(criterion: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES[criterion] = f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture(scope="session")
def s3():
    return generate_closure(3, [Perm((2, 1, 3)), Perm((2, 3, 1))])


@pytest.fixture(scope="session")
def h12(s3):
    """<(1 2)> inside S3."""
    return subgroup_from_generators(s3, [Perm((2, 1, 3))])


@pytest.fixture(scope="session")
def suite():
    return small_group_suite()
