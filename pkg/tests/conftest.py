"""Shared pytest wiring.

The acceptance tests record their verdict lines here; replaying them in
the terminal summary keeps one visible line per criterion even though
pytest captures stdout of passing tests.
"""

acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.section("acceptance")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
