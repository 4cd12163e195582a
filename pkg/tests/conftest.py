import pytest

ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def record(request):
    """Collect acceptance-criterion result lines for the end-of-run summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    def _record(line: str) -> None:
        lines.append(line)

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
