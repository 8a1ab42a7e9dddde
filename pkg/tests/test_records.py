import json

import pytest

from partition_duality.algebra.base import FunctionTable, GroundAlgebra
from partition_duality.algebra.morphisms import PartitionHom, identity
from partition_duality.algebra.partition_algebra import BooleanPartitionAlgebra, make_full_bpa
from partition_duality.algebra.partitions import Partition
from partition_duality.errors import RecordError
from partition_duality.records import Counterexample, dump_record, dumps_record, load_record, loads_record, read_record
from partition_duality.spaces.partition_space import PartitionSpace, UniformMap
from partition_duality.spaces.tree_models import BranchDescriptor, SubspaceKind, TreeModel


def test_kinds_are_recognized(p4, halves, invalid_bpa, lumpy_space):
    assert load_record({"atoms": 4}) == ("algebra", p4)
    assert load_record(invalid_bpa.to_dict()) == ("bpa", invalid_bpa)
    assert load_record(lumpy_space.to_dict()) == ("space", lumpy_space)
    assert load_record([[0, 1], [2, 3]], p4) == ("partition", halves)
    assert load_record([0, 2], p4) == ("element", p4.element([0, 2]))
    assert load_record({"prefix": "1", "period": "0"}) == ("branch", BranchDescriptor("1", "0"))


def test_values_survive_a_round_trip(full3, lumpy_space, discrete_space):
    values = [
        identity(full3),
        UniformMap(discrete_space, lumpy_space, (0, 1, 2)),
        FunctionTable.identity(GroundAlgebra(2)),
        TreeModel(subspace="eventually-zero", closure="full-union"),
        Counterexample("bpa.stable", {"algebra": {"atoms": 1}, "generators": []}),
    ]
    for value in values:
        kind, back = loads_record(dumps_record(value))
        assert back == value, kind


def test_induced_algebra_keeps_its_parent(lumpy_space):
    bpa = lumpy_space.induced
    record = dump_record(bpa)
    assert record["parent"] == {"atoms": 3}
    assert load_record(record)[1] == bpa


def test_explicit_tree_record():
    kind, model = load_record({"branching": [2], "subspace": {"branches": [{"prefix": "01", "period": "1"}]}})
    assert kind == "tree"
    assert model.subspace == SubspaceKind.EXPLICIT
    assert model.branches == (BranchDescriptor("0", "1"),)


@pytest.mark.parametrize("record", [
    {"algebra": {"atoms": 2}, "generators": [[[0], [0, 1]]]},
    {"algebra": {"atoms": 2}, "generators": [[[0]]]},
    {"algebra": {"atoms": 0}, "generators": []},
    {"atoms": True},
    {"algebra": {"atoms": True}, "generators": []},
    {"points": True, "crevasses": []},
    {"points": False, "crevasses": []},
    {"points": 2, "crevasses": [[[0], [2]]]},
    {"source": {"points": 1, "crevasses": []}, "target": {"points": 1, "crevasses": []}, "table": [3]},
    {"branching": [1]},
    {"colour": "blue"},
    "partition",
])
def test_malformed_records(record):
    with pytest.raises(RecordError):
        load_record(record)


def test_bare_partition_needs_an_algebra():
    with pytest.raises(RecordError):
        load_record([[0], [1]])


def test_not_json():
    with pytest.raises(RecordError):
        loads_record("{atoms: 3")


def test_non_homomorphism_morphism_record(full3):
    record = identity(full3).to_dict()
    record["pairs"][1][1] = [0, 1]
    with pytest.raises(RecordError):
        load_record(record)


def test_read_record(tmp_path, write_json):
    path = write_json({"atoms": 2})
    assert read_record(path) == ("algebra", GroundAlgebra(2))
    with pytest.raises(RecordError):
        read_record(tmp_path / "missing.json")


def test_dump_rejects_unknown_values():
    with pytest.raises(RecordError):
        dump_record(object())
    assert json.loads(dumps_record(Partition.top(GroundAlgebra(2)))) == [[0, 1]]
    assert dump_record(make_full_bpa(GroundAlgebra(1))) == {"algebra": {"atoms": 1}, "generators": [[[0]]]}
    assert isinstance(load_record(dump_record(make_full_bpa(GroundAlgebra(1))))[1], BooleanPartitionAlgebra)
    assert isinstance(load_record(identity(make_full_bpa(GroundAlgebra(1))).to_dict())[1], PartitionHom)


def test_empty_space_record():
    assert load_record({"points": 0, "crevasses": []}) == ("space", PartitionSpace.empty())
