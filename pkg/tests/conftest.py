import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_addoption(parser):
    parser.addoption("--skip-long", action="store_true", help="skip the full k=0 coset-graph materialization")


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--skip-long"):
        return
    skip = pytest.mark.skip(reason="--skip-long given")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
