import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from criteria import summary_lines  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    lines = summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
