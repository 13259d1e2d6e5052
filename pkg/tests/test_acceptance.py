"""The twelve acceptance criteria, each at its stated tolerance and time limit.

Run directly (``python3 tests/test_acceptance.py``) for the summary table
alone; under pytest the same lines appear in the terminal summary.
"""

import sys

import pytest

from eulerwedge.verify import CRITERIA, run_criterion

RESULTS = []


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"{c[0]:02d}-{c[1]}" for c in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.details


if __name__ == "__main__":
    lines = [run_criterion(c[0]) for c in CRITERIA]
    for r in lines:
        print(r.line())
    sys.exit(0 if all(r.passed for r in lines) else 1)
