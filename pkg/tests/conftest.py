import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from lkflow.deep import run_deep  # noqa: E402


@pytest.fixture
def deep():
    """Run a callable on a big-stack thread (deep proof recursion)."""
    return run_deep


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get('test_acceptance')
    lines = getattr(mod, 'RESULTS', None)
    if lines:
        terminalreporter.section('acceptance criteria')
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(':'))):
            terminalreporter.write_line(line)
