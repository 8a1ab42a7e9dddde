#!/usr/bin/env python3
"""Run the theorem suites and save the reports to JSON"""
import argparse
import json
import os
import sys
from datetime import datetime
from pathlib import Path

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from partition_duality.config import DEFAULT_DEPTH, DEFAULT_MAX_ATOMS, DEFAULT_MAX_POINTS, SUITE_MAP
from partition_duality.errors import PartitionDualityError
from partition_duality.reporting import render_text, summary_frame
from partition_duality.verifier import SuiteRunner


def main():
    parser = argparse.ArgumentParser(description="Run theorem suites and save JSON reports")
    parser.add_argument("--suite", action="append", choices=list(SUITE_MAP), help="Suite to run (default: all)")
    parser.add_argument("--max-atoms", type=int, default=DEFAULT_MAX_ATOMS, help="Largest algebra swept")
    parser.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS, help="Largest space swept")
    parser.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="Deepest tree level probed")
    parser.add_argument("--output-dir", default="output/reports", help="Output directory")

    args = parser.parse_args()
    suites = args.suite or list(SUITE_MAP)

    print(f"\n{'='*70}")
    print("  Partition Duality Suites")
    print(f"{'='*70}")
    print(f"Suites: {', '.join(suites)}")
    print(f"Bounds: atoms<={args.max_atoms}, points<={args.max_points}, depth<={args.depth}")
    print(f"Output: {args.output_dir}")

    try:
        runner = SuiteRunner(args.max_atoms, args.max_points, args.depth)
    except PartitionDualityError as e:
        print(f"❌ Error: {e}")
        return 2

    reports = []
    for suite in suites:
        print(f"\nRunning {suite} suite...")
        report = runner.run_suite(suite)
        mark = "✓" if report.passed else "❌"
        print(f"{mark} {report.title}: {len(report.checks)} checks, {report.instance_count} instances, "
              f"{report.failure_count} failures ({report.elapsed:.2f}s)")
        reports.append(report)

    print()
    print(render_text(reports))

    output_dir = Path(args.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    stamp = datetime.now().strftime("%Y%m%d_%H%M%S")

    output_path = output_dir / f"suites_{stamp}.json"
    with open(output_path, "w") as f:
        json.dump([r.to_dict() for r in reports], f, indent=2, ensure_ascii=False)
    print(f"\n✓ Saved to: {output_path}")

    summary_path = output_dir / f"summary_{stamp}.csv"
    summary_frame(reports).to_csv(summary_path, index=False)
    print(f"✓ Summary: {summary_path}")

    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
