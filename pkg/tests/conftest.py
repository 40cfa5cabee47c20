import pytest

_LINES: list[str] = []


@pytest.fixture
def record():
    """Print a one-line verdict and keep it for the end-of-run summary."""

    def _record(number: int, ok: bool | None, detail: str):
        status = "REPORT-ONLY" if ok is None else ("PASS" if ok else "FAIL")
        line = f"criterion {number:2d}: {status:11s} {detail}"
        print(line)
        _LINES.append(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES):
            terminalreporter.write_line(line)
