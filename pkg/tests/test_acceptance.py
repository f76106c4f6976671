"""Acceptance battery: one test per numbered criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line; the lines are also
collected into an "acceptance criteria" section of the pytest summary.
Run directly (``python3 tests/test_acceptance.py``) for just the lines.
"""
import sys

import pytest

from obstrukt.acceptance import CRITERIA, SuiteContext, run_criterion

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # running as a plain script
    ACCEPTANCE_LINES = []


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"{c.number:02d}-{c.key}")
def test_criterion(criterion):
    result = run_criterion(criterion, SuiteContext(seed=1))
    line = f"{result.line()}  ({result.seconds:.1f}s of {result.limit:g}s)"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert result.passed, result.detail


if __name__ == "__main__":
    failed = 0
    for c in CRITERIA:
        r = run_criterion(c, SuiteContext(seed=1))
        print(f"{r.line()}  ({r.seconds:.1f}s of {r.limit:g}s)", flush=True)
        failed += not r.passed
    sys.exit(1 if failed else 0)
