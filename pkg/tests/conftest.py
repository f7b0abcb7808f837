"""Shared pytest plumbing.

The acceptance tests push one summary line apiece through record_line;
printing them from pytest_terminal_summary keeps them visible even when
output capture swallows in-test prints.
"""

_lines: list[str] = []


def record_line(line: str) -> None:
    _lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _lines:
        terminalreporter.section("acceptance criteria")
        for line in _lines:
            terminalreporter.line(line)
