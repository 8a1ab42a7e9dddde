"""
Command-line interface

    python -m partition_duality.cli verify --suite lattice --max-atoms 4
    python -m partition_duality.cli dual space.json
    python -m partition_duality.cli complete tree.json --depth 8
    python -m partition_duality.cli enumerate spectrum bpa.json
    python -m partition_duality.cli replay counterexample.json

Exit codes: 0 pass, 1 mathematical failure or diagnostic, 2 usage or parse error.
"""
import argparse
import json
import logging
import sys
from typing import Any, List, Optional

from .algebra.partition_algebra import BooleanPartitionAlgebra, coherent_selections, enumerate_f_ultrafilters
from .algebra.partitions import all_partitions
from .config import (
    DEFAULT_DEPTH,
    DEFAULT_MAX_ATOMS,
    DEFAULT_MAX_POINTS,
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    OUTPUT_FORMATS,
    SUITE_MAP,
)
from .errors import (
    InternalConsistencyError,
    NotUniformlyContinuousError,
    PartitionDualityError,
    RecordError,
    StabilityError,
    ValidityError,
)
from .records import Counterexample, dump_record, read_record
from .reporting import render
from .spaces.duality import algebra_of_space, b_star_map, completion, s_star_map, spectrum_space
from .spaces.partition_space import coherent_points
from .spaces.tree_models import tree_completion
from .verifier import SuiteRunner, replay

# Errors that report a property of the input rather than a malformed request
DIAGNOSTICS = (StabilityError, ValidityError, NotUniformlyContinuousError, InternalConsistencyError)


def _emit(value: Any) -> None:
    print(json.dumps(value, indent=2, sort_keys=True, ensure_ascii=False))


def _fail(message: str, code: int) -> int:
    print(f"❌ {message}", file=sys.stderr)
    return code


def cmd_verify(args: argparse.Namespace) -> int:
    """Run suites; exit 1 if any check fails"""
    names = args.suite or list(SUITE_MAP)
    unknown = [n for n in names if n not in SUITE_MAP]
    if unknown:
        return _fail(f"Unknown suite: {', '.join(unknown)} (choose from {', '.join(SUITE_MAP)})", EXIT_USAGE)

    runner = SuiteRunner(args.max_atoms, args.max_points, args.depth)
    reports = []
    for name in names:
        if args.format == "text":
            print(f"\nRunning {name} suite...")
        reports.append(runner.run_suite(name))
    print(render(reports, args.format))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILURE


def cmd_dual(args: argparse.Namespace) -> int:
    """Dual of a space, algebra, uniform map or partition homomorphism"""
    kind, value = read_record(args.input)
    if kind == "bpa":
        try:
            dual = spectrum_space(value)
        except StabilityError as e:
            print(f"❌ {e}", file=sys.stderr)
            _emit(Counterexample("bpa.stable", dump_record(value)).to_dict())
            return EXIT_FAILURE
    elif kind == "space":
        dual = algebra_of_space(value)
    elif kind == "uniform_map":
        dual = b_star_map(value)
    elif kind == "morphism":
        dual = s_star_map(value)
    else:
        return _fail(f"No dual for a {kind} record", EXIT_USAGE)
    _emit(dump_record(dual))
    return EXIT_OK


def cmd_complete(args: argparse.Namespace) -> int:
    """Completion of a finite space or a tree model"""
    kind, value = read_record(args.input)
    if kind == "space":
        result = completion(value).to_dict()
    elif kind == "tree":
        result = tree_completion(value, args.depth).to_dict()
    else:
        return _fail(f"Cannot complete a {kind} record", EXIT_USAGE)
    _emit(result)
    return EXIT_OK


def _as_algebra(kind: str, value: Any) -> BooleanPartitionAlgebra:
    if kind == "bpa":
        return value
    if kind == "space":
        return value.induced
    raise RecordError(f"Expected an algebra or space record, got {kind}")


def cmd_enumerate(args: argparse.Namespace) -> int:
    """Partitions, spectra or coherent selections, for debugging"""
    kind, value = read_record(args.input)
    if args.what == "partitions":
        if kind == "algebra":
            _emit([p.to_list() for p in all_partitions(value)])
        elif kind == "space":
            _emit([p.to_list() for p in value.crevasse_filter.members()])
        else:
            _emit([p.to_list() for p in _as_algebra(kind, value).filter.members()])
    elif args.what == "spectrum":
        _emit([u.to_dict() for u in enumerate_f_ultrafilters(_as_algebra(kind, value))])
    else:
        if kind == "space":
            points = coherent_points(value)
        else:
            points = coherent_selections(_as_algebra(kind, value).filter)
        _emit([x.to_dict() for x in points])
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    """Exit 1 when the recorded failure reproduces"""
    kind, value = read_record(args.input)
    if kind != "counterexample":
        return _fail(f"Expected a counterexample record, got {kind}", EXIT_USAGE)
    result = replay(value)
    _emit(result.to_dict())
    return EXIT_OK if result.passed else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partition_duality",
        description="Boolean partition algebras and partition spaces: duality checks",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run theorem suites")
    verify.add_argument("--suite", action="append", help=f"Suite to run, repeatable ({', '.join(SUITE_MAP)})")
    verify.add_argument("--max-atoms", type=int, default=DEFAULT_MAX_ATOMS, help="Largest algebra swept")
    verify.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS, help="Largest space swept")
    verify.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="Deepest tree level probed")
    verify.add_argument("--format", choices=OUTPUT_FORMATS, default="text", help="Report format")
    verify.set_defaults(handler=cmd_verify)

    dual = sub.add_parser("dual", help="Dual of a space, algebra or morphism record")
    dual.add_argument("input", help="Record file, or - for standard input")
    dual.set_defaults(handler=cmd_dual)

    complete = sub.add_parser("complete", help="Completion of a space or tree record")
    complete.add_argument("input", help="Record file, or - for standard input")
    complete.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="Depth probed for tree models")
    complete.set_defaults(handler=cmd_complete)

    enumerate_ = sub.add_parser("enumerate", help="List partitions, spectra or coherent selections")
    enumerate_.add_argument("what", choices=("partitions", "spectrum", "coherent"))
    enumerate_.add_argument("input", help="Record file, or - for standard input")
    enumerate_.set_defaults(handler=cmd_enumerate)

    replay_ = sub.add_parser("replay", help="Re-run a recorded counterexample")
    replay_.add_argument("input", help="Counterexample record file, or - for standard input")
    replay_.set_defaults(handler=cmd_replay)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except DIAGNOSTICS as e:
        return _fail(str(e), EXIT_FAILURE)
    except PartitionDualityError as e:
        return _fail(str(e), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
