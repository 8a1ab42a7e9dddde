#!/usr/bin/env python3
"""Round-trip spaces through their algebras and back, and save the witnesses"""
import argparse
import json
import os
import sys
from pathlib import Path

import pandas as pd

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from partition_duality.errors import PartitionDualityError
from partition_duality.records import read_record
from partition_duality.spaces.duality import algebra_round_trip, completion, space_round_trip
from partition_duality.spaces.partition_space import PartitionSpace, principal_spaces


def load_spaces(args) -> list:
    if args.input:
        kind, value = read_record(args.input)
        if kind != "space":
            raise PartitionDualityError(f"Expected a space record, got {kind}")
        return [value]
    spaces = []
    for n in range(1, args.max_points + 1):
        spaces.extend(principal_spaces(n))
    return spaces


def round_trip(space: PartitionSpace) -> dict:
    """Completion report plus both round-trip witnesses for one space"""
    result = completion(space)
    algebra_side = algebra_round_trip(space)
    space_side = space_round_trip(algebra_side.forward.source)
    return {
        "space": space.to_dict(),
        "completion": result.to_dict(),
        "algebra_round_trip": algebra_side.to_dict(),
        "space_round_trip": space_side.to_dict(),
    }


def main():
    parser = argparse.ArgumentParser(description="Round-trip partition spaces through the duality")
    parser.add_argument("input", nargs="?", help="Space record file (default: every principal space)")
    parser.add_argument("--max-points", type=int, default=3, help="Largest principal space when no input is given")
    parser.add_argument("--output", default="output/roundtrip/roundtrip.json", help="Output file")

    args = parser.parse_args()

    print(f"\n{'='*70}")
    print("  Duality Round Trips")
    print(f"{'='*70}")

    try:
        spaces = load_spaces(args)
    except PartitionDualityError as e:
        print(f"❌ Error: {e}")
        return 2
    print(f"Spaces: {len(spaces)}\n")

    results = []
    rows = []
    for space in spaces:
        try:
            entry = round_trip(space)
        except PartitionDualityError as e:
            print(f"❌ {space.to_dict()}: {e}")
            continue
        results.append(entry)
        report = entry["completion"]["report"]
        rows.append({
            "points": space.points,
            "crevasses": len(space.crevasses),
            "completion_points": entry["completion"]["completion"]["points"],
            "separating": report["separating"],
            "complete": report["complete"],
            "homeomorphism": report["homeomorphism"],
            "algebra_id": entry["algebra_round_trip"]["laws"]["composite_is_identity"],
            "space_id": entry["space_round_trip"]["laws"]["composite_is_identity"],
        })

    frame = pd.DataFrame(rows)
    if not frame.empty:
        print(frame.to_string(index=False))
        failed = frame[~(frame["algebra_id"] & frame["space_id"])]
        print(f"\n{'✓' if failed.empty else '❌'} {len(frame) - len(failed)}/{len(frame)} round trips are identities")

    output_path = Path(args.output)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w") as f:
        json.dump(results, f, indent=2, ensure_ascii=False)
    print(f"✓ Saved to: {output_path}\n")

    return 0 if len(results) == len(spaces) and (frame.empty or failed.empty) else 1


if __name__ == "__main__":
    sys.exit(main())
