"""Acceptance gate: every spec criterion at its stated tolerance.

Runs the selftest once per session (criterion 12 reruns the whole report to
check byte determinism) and asserts each criterion, printing one line each.
"""

import pytest

from dwork_forge import acceptance

DESCRIPTIONS = {
    1: "trace oracle equivalence (fast == naive, < 30 s)",
    2: "determinant |const| = q^(n(n-1)/2), exact signed check",
    3: "purity |alpha|^2 = q^(n-1) within 1e-6",
    4: "norm identity, exact mod lambda, zero failures",
    5: "unit-root implication at u-nonvanishing points",
    6: "Lucas congruence, 500 seeded instances per l",
    7: "Breuil slope invariants, exhaustive sweep (< 60 s)",
    8: "witness disjunction for negative-total tuples",
    9: "non-surjectivity oracle (witness/window/monodromy)",
    10: "chain slope forcing, exhaustive",
    11: "unitary suite (normalization, sym powers, induced)",
    12: "determinism: byte-identical same-seed reports",
}


@pytest.fixture(scope="module")
def report():
    rep, timings, ok = acceptance.selftest(seed=0)
    return rep, timings


@pytest.mark.parametrize("cid", sorted(DESCRIPTIONS))
def test_criterion(report, cid):
    rep, timings = report
    entry = next(c for c in rep["criteria"] if c["id"] == cid)
    status = "PASS" if entry["passed"] else "FAIL"
    print(f"{status} criterion {cid}: {DESCRIPTIONS[cid]} "
          f"[{timings.get(cid, 0.0):.1f}s]")
    assert entry["passed"], entry


def test_timing_budgets(report):
    rep, _ = report
    c1 = next(c for c in rep["criteria"] if c["id"] == 1)
    c7 = next(c for c in rep["criteria"] if c["id"] == 7)
    assert c1["budget_s"] == 30 and c7["budget_s"] == 60


def test_advisory_full_ordinarity_reported(report):
    rep, _ = report
    c5 = next(c for c in rep["criteria"] if c["id"] == 5)
    assert "advisory_fully_ordinary" in c5
    # expected (not asserted by the criterion) to hold at 100% here
    assert c5["advisory_fully_ordinary"] is True
