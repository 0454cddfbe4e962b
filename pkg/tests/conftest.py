"""Shared pytest plumbing for the suite.

The acceptance tests record one verdict line each; printing them from
inside a test would be swallowed by output capture, so they are
re-emitted in the terminal summary where they stay visible.
"""

VERDICTS: list[str] = []


def record_verdict(line: str) -> None:
    VERDICTS.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in VERDICTS:
        terminalreporter.write_line(line)
