import pytest

RESULTS = []


@pytest.fixture
def record():
    """Collect one pass/fail line per acceptance criterion."""

    def add(number, title, passed, detail, seconds):
        line = "criterion %2d %s  %s | %s | %.1f s" % (number, "PASS" if passed else "FAIL", title, detail, seconds)
        RESULTS.append((number, line))
        print(line)

    return add


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(RESULTS):
        terminalreporter.write_line(line)
