import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_record():
    """Collect 'criterion N' result lines for the terminal summary."""
    def record(number: int, ok: bool, detail: str):
        _ACCEPTANCE_LINES.append((number, ok, detail))
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number, ok, detail in sorted(_ACCEPTANCE_LINES):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line("criterion %d: %s  %s" % (number, status, detail))
