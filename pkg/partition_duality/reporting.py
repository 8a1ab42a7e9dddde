"""Shaping suite reports for display"""
import json
from typing import Any, Dict, List, Sequence

import pandas as pd

from .verifier import CheckResult, SuiteReport

COLUMNS = ["suite", "check", "instances", "failures", "status", "seconds"]


def check_rows(report: SuiteReport) -> List[Dict[str, Any]]:
    """One row per check, in sweep order"""
    rows = []
    for c in report.checks:
        rows.append({
            "suite": report.suite,
            "check": c.name,
            "instances": c.instances,
            "failures": c.failures,
            "status": "✓" if c.passed else "❌",
            "seconds": round(c.elapsed, 3),
        })
    return rows


def reports_frame(reports: Sequence[SuiteReport]) -> pd.DataFrame:
    """All checks of all reports as a DataFrame"""
    rows = [row for r in reports for row in check_rows(r)]
    return pd.DataFrame(rows, columns=COLUMNS)


def summary_frame(reports: Sequence[SuiteReport]) -> pd.DataFrame:
    """Per-suite totals"""
    frame = reports_frame(reports)
    if frame.empty:
        return pd.DataFrame(columns=["suite", "checks", "instances", "failures", "seconds"])
    summary = frame.groupby("suite", sort=False).agg(
        checks=("check", "count"),
        instances=("instances", "sum"),
        failures=("failures", "sum"),
    ).reset_index()
    elapsed = {r.suite: round(r.elapsed, 3) for r in reports}
    summary["seconds"] = summary["suite"].map(elapsed)
    return summary


def _counterexample_lines(c: CheckResult) -> List[str]:
    lines = [f"  {c.name}: {c.failures} failing instance(s)"]
    if c.error:
        lines.append(f"    error: {c.error}")
    if c.counterexample is not None:
        lines.append("    counterexample: " + json.dumps(c.counterexample.to_dict(), sort_keys=True, ensure_ascii=False))
    return lines


def render_text(reports: Sequence[SuiteReport]) -> str:
    """Check table, suite totals and the first counterexample of each failing check"""
    out = []
    for r in reports:
        out.append("=" * 70)
        out.append(f"{r.title} ({r.suite}) - bounds {r.bounds}")
        out.append("=" * 70)
        frame = pd.DataFrame(check_rows(r), columns=COLUMNS).drop(columns=["suite"])
        out.append(frame.to_string(index=False))
        status = "✓ all checks passed" if r.passed else f"❌ {r.failure_count} failing instance(s)"
        out.append(f"\n{status}: {r.instance_count} instances in {r.elapsed:.2f}s")
        for c in r.checks:
            if not c.passed:
                out.extend(_counterexample_lines(c))
        out.append("")
    if len(reports) > 1:
        out.append(summary_frame(reports).to_string(index=False))
    return "\n".join(out)


def render_json(reports: Sequence[SuiteReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True, ensure_ascii=False)


def render(reports: Sequence[SuiteReport], output_format: str = "text") -> str:
    if output_format == "json":
        return render_json(reports)
    return render_text(reports)
