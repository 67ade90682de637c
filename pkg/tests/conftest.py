import pytest

VERDICTS = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for the acceptance summary."""
    def record(number, ok, detail=""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        VERDICTS.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
