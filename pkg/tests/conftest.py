import pytest

from coprimenet import build_network, build_sieve


@pytest.fixture(scope="session")
def sieve():
    return build_sieve(20_000)


@pytest.fixture(scope="session")
def net300(sieve):
    return build_network(300, sieve)


# criterion number -> one-line verdict, filled by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
