import pytest

_criteria = {}


@pytest.fixture
def record():
    """Store one pass/fail line per acceptance criterion for the summary."""
    def _record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _criteria[number] = line
        print(line)
    return _record


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_criteria):
            terminalreporter.write_line(_criteria[number])
