import pytest

from kclogic.fixtures import load_fixture

_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion for the summary."""

    def report(number, text, ok):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def bogota():
    return load_fixture("bogota")


@pytest.fixture(scope="session")
def nyc():
    return load_fixture("nyc")


@pytest.fixture(scope="session")
def ava():
    return load_fixture("ava")
