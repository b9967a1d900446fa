"""The ten acceptance criteria, each at its stated sample sizes and time limit.

Every check runs from a cold cache so that its wall-clock time is measured
on its own; one PASS/FAIL line per criterion is printed (see ``pytest -s``
or the captured output in the report).
"""
import pytest

from lglab.checks import CHECKS, PASS, RunConfig, clear_cache, run_check

CONFIG = RunConfig(field="fp:1009", seed=0, witnesses=5)


@pytest.mark.parametrize("check", CHECKS, ids=[c.id for c in CHECKS])
def test_acceptance(check, capsys):
    clear_cache()
    res = run_check(check.id, CONFIG)
    with capsys.disabled():
        print(f"\n{res.line}")
    assert res.status == PASS, res.payload
    assert res.seconds < check.limit, f"{check.id} took {res.seconds:.2f}s (limit {check.limit}s)"


def test_acceptance_cover_all_ten():
    assert [c.id for c in CHECKS] == [f"AC{i}" for i in range(1, 11)]
