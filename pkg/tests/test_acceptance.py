"""Acceptance gate: every shipped guarantee, one pass line each.

Run with -s to see the lines as they complete:

    python3 -m pytest tests/test_acceptance.py -s
"""

import pytest

from moebius.acceptance import CRITERIA, run_criteria


@pytest.mark.parametrize("name", list(CRITERIA), ids=list(CRITERIA))
def test_criterion(name):
    (res,) = run_criteria([name])
    line = (f"{res.name}: {'PASS' if res.ok else 'FAIL'} "
            f"({res.seconds:.2f}s) {res.details}")
    print(line)
    assert res.ok, line
