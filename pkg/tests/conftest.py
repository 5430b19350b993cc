import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_criteria = []


@pytest.fixture
def criterion():
    """Records one acceptance line and returns whether it passed."""
    def record(number, ok, detail):
        line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _criteria.append((number, line))
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_criteria, key=lambda c: c[0]):
            terminalreporter.write_line(line)
