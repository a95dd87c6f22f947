import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# acceptance lines collected by test_acceptance.record()
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: _order(s)):
        terminalreporter.write_line(line)


def _order(line):
    key = line.split()[1].rstrip(":")
    digits = "".join(c for c in key if c.isdigit())
    return (int(digits) if digits else 99, key)
