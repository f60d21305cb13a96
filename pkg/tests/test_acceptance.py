"""Acceptance suite: one test per exit criterion, at fixed tolerances and
time budgets.

Each test prints its one-line PASS/FAIL summary (visible with pytest -s and
in failure reports) and asserts the criterion's pass flag.  The same
registry backs the CLI `selftest` subcommand.
"""

import pytest

from ffsym import selftest

SEED = 42

_NAMES = [
    "01 general reciprocity, exhaustive coprime pairs",
    "02 product formula over all places, random pairs",
    "03 ramification at infinity for nonsquare constants",
    "04 witness pairs ramified exactly at {P, inf}",
    "05 irreducible-trace sumsets cover large fields",
    "06 residue symbol vs brute-force square oracle",
    "07 ramification sets have even size",
    "08 union-of-rings vs Jacobson dual form",
    "09 main membership identity, both directions",
    "10 prime counts: formula, enumeration, tail bound",
    "11 progression uniformity at q=13, k=3",
    "12 trace-sum decomposition soundness",
]


@pytest.mark.parametrize(
    "criterion", selftest.CRITERIA, ids=_NAMES
)
def test_criterion(criterion):
    result = criterion(SEED)
    print(result.line)
    assert result.passed, result.line
