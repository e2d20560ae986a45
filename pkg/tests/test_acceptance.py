"""The thirteen acceptance criteria; each prints one pass/fail line."""

import pytest

from isingfw.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA], ids=[f"{n:02d}-{t}" for n, t, _ in CRITERIA])
def test_criterion(number, capsys):
    r = run_criterion(number)
    with capsys.disabled():
        print("\n" + r.line())
    assert r.passed, r.detail


def test_all_criteria_listed():
    assert [n for n, _, _ in CRITERIA] == list(range(1, 14))
