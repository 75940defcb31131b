"""Acceptance criteria, one test each, at their stated tolerances.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line
per criterion (the same lines ``figraph verify all`` prints).
"""

import pytest

from figraph import verify

CHECKS = [
    verify.check_ekr,
    verify.check_johnson,
    verify.check_edge_ideals,
    verify.check_solver_oracle,
    verify.check_kneser_union,
    verify.check_stable_degree_examples,
    verify.check_vertex_linear,
    verify.check_trends_sweep,
    verify.check_lemmas,
    verify.check_structure,
]


@pytest.mark.parametrize("check", CHECKS, ids=lambda f: f.__name__)
def test_criterion(check):
    res = check()
    print()
    print(res.line())
    for finding in res.findings:
        print(f"    finding: {finding}")
    assert res.passed, res.detail


def test_suites_cover_every_check():
    assert set(verify.SUITES["all"]) == set(CHECKS)
