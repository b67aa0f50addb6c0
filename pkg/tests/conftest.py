import pytest

_LINES: list[tuple[int, str]] = []


@pytest.fixture
def criterion(capsys):
    """Report one acceptance criterion: prints a PASS/FAIL line and fails the test on FAIL."""

    def report(number: int, title: str, ok: bool, detail: str):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} [{detail}]"
        _LINES.append((number, line))
        with capsys.disabled():
            print(f"\n{line}")
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_LINES):
            terminalreporter.write_line(line)
