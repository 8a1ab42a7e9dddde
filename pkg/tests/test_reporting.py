import json

import pytest

from partition_duality.records import Counterexample
from partition_duality.reporting import COLUMNS, render, reports_frame, summary_frame
from partition_duality.verifier import CheckResult, SuiteReport


@pytest.fixture
def reports():
    bounds = {"max_atoms": 2, "max_points": 2, "depth": 1}
    ok = SuiteReport("lattice", bounds, [CheckResult("lattice.partition_count", "count", 2, elapsed=0.01)], 0.02)
    broken = CheckResult(
        "bpa.stable", "stable", 5, 1,
        counterexample=Counterexample("bpa.stable", {"algebra": {"atoms": 4}, "generators": [[[0, 1], [2, 3]]]}),
    )
    bad = SuiteReport("bpa", bounds, [broken, CheckResult("bpa.iota", "iota", 5)], 0.5)
    return [ok, bad]


def test_frames(reports):
    frame = reports_frame(reports)
    assert list(frame.columns) == COLUMNS
    assert list(frame["status"]) == ["✓", "❌", "✓"]

    summary = summary_frame(reports)
    row = summary.set_index("suite").loc["bpa"]
    assert (row["checks"], row["instances"], row["failures"]) == (2, 10, 1)
    assert row["seconds"] == 0.5


def test_empty_summary():
    assert summary_frame([]).empty


def test_text_report(reports):
    text = render(reports)
    assert "Partition lattice (lattice)" in text
    assert "✓ all checks passed" in text
    assert "❌ 1 failing instance(s)" in text
    assert '"check": "bpa.stable"' in text


def test_json_report(reports):
    data = json.loads(render(reports, "json"))
    assert [r["suite"] for r in data] == ["lattice", "bpa"]
    assert data[1]["failures"] == 1
    assert data[1]["checks"][0]["counterexample"]["check"] == "bpa.stable"
