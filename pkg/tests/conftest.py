"""Shared fixtures plus the end-of-run acceptance summary.

test_acceptance.py records one entry per criterion in ACCEPTANCE_RESULTS;
the terminal-summary hook prints them as a single pass/fail line each so the
outcome of the whole gate is readable at a glance.
"""

import numpy as np
import pytest

from steinerlab import exactalg

# criterion number -> (passed, detail string); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[n]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {status} - {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)


@pytest.fixture
def prime():
    return exactalg.DEFAULT_PRIME
