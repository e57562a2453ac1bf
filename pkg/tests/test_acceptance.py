"""The fifteen acceptance criteria at their default bounds, one test each."""
import pytest

from iceduality.acceptance import CRITERIA, run_criterion

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("number", [k for k, _, _ in CRITERIA], ids=[f"criterion_{k}" for k, _, _ in CRITERIA])
def test_criterion(number):
    rep = run_criterion(number)
    status = "PASS" if rep.passed else "FAIL"
    line = f"{rep.identity} ... {status} ({rep.checked} checked, {len(rep.violations)} violations)"
    ACCEPTANCE_LINES[number] = line
    print(line)
    assert rep.passed, rep.violations[:3]
