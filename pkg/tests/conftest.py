import pytest

from ordersum.catalog import load_catalog

# "criterion N: PASS ..." lines reported by the acceptance tests
_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture
def acceptance_log():
    def log(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
    return log


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
