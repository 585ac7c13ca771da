"""Acceptance gate: one test per criterion, one printed verdict line each.

All checks are exact (rational/Gaussian-rational equality); the sampling
inside each criterion is seeded and deterministic.  Run with `-s` to see
the verdict lines inline; they are also printed under captured output.
"""

import pytest

from stablat import acceptance


def _run(index):
    name, ok, detail = acceptance.run_all(only=index)[0]
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


@pytest.mark.parametrize(
    "index,label",
    [(i, name) for i, (name, _) in enumerate(acceptance.CRITERIA, start=1)],
    ids=[name.replace(" ", "-") for name, _ in acceptance.CRITERIA],
)
def test_criterion(index, label):
    _run(index)
