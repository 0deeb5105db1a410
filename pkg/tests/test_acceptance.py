"""One test per acceptance criterion; the summary block lists them all."""

from __future__ import annotations

import pytest

from gaussromanov.verify import CRITERIA, run

RESULTS: dict[int, str] = {}


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"c{c.number:02d}-{c.name.replace(' ', '-')}")
def test_criterion(criterion):
    result = run(criterion)
    RESULTS[criterion.number] = result.line(timing=True)
    assert result.passed, result.detail
