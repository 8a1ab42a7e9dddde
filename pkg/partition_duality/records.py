"""JSON records for every object kind"""
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from .algebra.base import AlgElement, FunctionTable, GroundAlgebra
from .algebra.morphisms import PartitionHom
from .algebra.partition_algebra import BooleanPartitionAlgebra, filter_from_generators
from .algebra.partitions import CellularFamily, Partition
from .errors import PartitionDualityError, RecordError
from .spaces.partition_space import PartitionSpace, UniformMap
from .spaces.tree_models import BranchDescriptor, TreeModel


@dataclass(frozen=True)
class Counterexample:
    """A failed check with the instance it failed on, as recorded"""
    check: str
    instance: Any

    def to_dict(self) -> Dict[str, Any]:
        return {"check": self.check, "instance": self.instance}


def _algebra(obj: Any) -> GroundAlgebra:
    if not isinstance(obj, dict) or set(obj) != {"atoms"}:
        raise RecordError(f"Algebra record must be {{\"atoms\": n}}, got {obj!r}")
    return GroundAlgebra(obj["atoms"])


def _element(algebra: GroundAlgebra, obj: Any) -> AlgElement:
    if not isinstance(obj, list):
        raise RecordError(f"Element record must be an atom list, got {obj!r}")
    return algebra.element(obj)


def _partition(algebra: GroundAlgebra, obj: Any) -> Partition:
    if not isinstance(obj, list) or not all(isinstance(b, list) for b in obj):
        raise RecordError(f"Partition record must be a list of atom lists, got {obj!r}")
    return Partition.from_lists(algebra, obj)


def _bpa(obj: Dict[str, Any]) -> BooleanPartitionAlgebra:
    algebra = _algebra(obj["algebra"])
    f = filter_from_generators(algebra, (_partition(algebra, g) for g in obj["generators"]))
    if "parent" not in obj:
        return BooleanPartitionAlgebra(algebra, f)
    parent = _algebra(obj["parent"])
    atoms = tuple(parent.element(a).mask for a in obj["parent_atoms"])
    return BooleanPartitionAlgebra(algebra, f, parent, atoms)


def _pairs_table(source: GroundAlgebra, target: GroundAlgebra, pairs: Any) -> FunctionTable:
    if not isinstance(pairs, list) or not all(isinstance(p, list) and len(p) == 2 for p in pairs):
        raise RecordError("Function table pairs must be [input, output] lists")
    return FunctionTable.from_pairs(
        source, target, ((_element(source, x), _element(target, y)) for x, y in pairs)
    )


def _space(obj: Dict[str, Any]) -> PartitionSpace:
    return PartitionSpace.from_lists(obj["points"], obj["crevasses"])


def _branch(obj: Dict[str, Any]) -> BranchDescriptor:
    return BranchDescriptor(obj["prefix"], obj["period"])


def _tree(obj: Dict[str, Any]) -> TreeModel:
    subspace = obj.get("subspace", "all")
    branches: Tuple[BranchDescriptor, ...] = ()
    if isinstance(subspace, dict):
        branches = tuple(_branch(b) for b in subspace["branches"])
        subspace = "explicit"
    return TreeModel(
        branching=tuple(obj["branching"]),
        depth_bound=obj.get("depth_bound", TreeModel.depth_bound),
        subspace=subspace,
        branches=branches,
        closure=obj.get("closure", TreeModel.closure),
    )


def _kind_of(obj: Any) -> str:
    if isinstance(obj, list):
        if all(isinstance(x, int) for x in obj):
            return "element"
        return "partition"
    if not isinstance(obj, dict):
        raise RecordError(f"Unrecognized record {obj!r}")
    keys = set(obj)
    if keys == {"atoms"}:
        return "algebra"
    if {"check", "instance"} <= keys:
        return "counterexample"
    if {"algebra", "generators"} <= keys:
        return "bpa"
    if {"points", "crevasses"} <= keys:
        return "space"
    if {"source", "target", "table"} <= keys:
        return "uniform_map"
    if {"source", "target", "pairs"} <= keys:
        source = obj["source"]
        return "morphism" if isinstance(source, dict) and "generators" in source else "function_table"
    if "branching" in keys:
        return "tree"
    if {"prefix", "period"} <= keys:
        return "branch"
    raise RecordError(f"Unrecognized record with keys {sorted(keys)}")


def load_record(obj: Any, algebra: Optional[GroundAlgebra] = None) -> Tuple[str, Any]:
    """
    Decode a parsed JSON record

    Args:
        obj: Parsed JSON
        algebra: Algebra for element and partition records, which do not name one

    Returns:
        (kind, value)

    Raises:
        RecordError: the record is malformed or describes an invalid object
    """
    kind = _kind_of(obj)
    try:
        if kind in ("element", "partition"):
            if algebra is None:
                raise RecordError(f"A bare {kind} record needs an algebra")
            value = _element(algebra, obj) if kind == "element" else _partition(algebra, obj)
        elif kind == "algebra":
            value = _algebra(obj)
        elif kind == "counterexample":
            value = Counterexample(str(obj["check"]), obj["instance"])
        elif kind == "bpa":
            value = _bpa(obj)
        elif kind == "space":
            value = _space(obj)
        elif kind == "uniform_map":
            value = UniformMap(_space(obj["source"]), _space(obj["target"]), tuple(obj["table"]))
        elif kind == "morphism":
            source, target = _bpa(obj["source"]), _bpa(obj["target"])
            value = PartitionHom(_pairs_table(source.algebra, target.algebra, obj["pairs"]), source, target)
        elif kind == "function_table":
            value = _pairs_table(_algebra(obj["source"]), _algebra(obj["target"]), obj["pairs"])
        elif kind == "tree":
            value = _tree(obj)
        else:
            value = _branch(obj)
    except RecordError:
        raise
    except (PartitionDualityError, KeyError, TypeError, ValueError) as e:
        raise RecordError(f"Invalid {kind} record: {e}") from e
    return kind, value


def dump_record(value: Any) -> Any:
    """Encode a value as a JSON-ready record"""
    if isinstance(value, (AlgElement, CellularFamily)):
        return value.to_list()
    if hasattr(value, "to_dict"):
        return value.to_dict()
    raise RecordError(f"No record form for {type(value).__name__}")


def dumps_record(value: Any) -> str:
    return json.dumps(dump_record(value), indent=2, sort_keys=True, ensure_ascii=False)


def loads_record(text: str, algebra: Optional[GroundAlgebra] = None) -> Tuple[str, Any]:
    """
    Parse and decode JSON text

    Raises:
        RecordError: the text is not JSON or not a valid record
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise RecordError(f"Not valid JSON: {e}") from e
    return load_record(obj, algebra)


def read_record(path: Union[str, Path]) -> Tuple[str, Any]:
    """Load a record file ("-" reads standard input)"""
    if str(path) == "-":
        return loads_record(sys.stdin.read())
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise RecordError(f"Cannot read {path}: {e}") from e
    return loads_record(text)
