import json

import pytest

from partition_duality.cli import main

HALVES_BPA = {"algebra": {"atoms": 4}, "generators": [[[0, 1], [2, 3]]]}
FULL3 = {"algebra": {"atoms": 3}, "generators": [[[0], [1], [2]]]}
LUMPY = {"points": 3, "crevasses": [[[0, 1], [2]]]}


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_verify_json(capsys):
    code = main(["verify", "--suite", "lattice", "--max-atoms", "2", "--max-points", "2", "--depth", "1", "--format", "json"])
    assert code == 0
    data = _json_out(capsys)
    assert data[0]["suite"] == "lattice"
    assert data[0]["bounds"] == {"max_atoms": 2, "max_points": 2, "depth": 1}


def test_verify_text(capsys):
    assert main(["verify", "--suite", "bpa", "--max-atoms", "2"]) == 0
    assert "✓ all checks passed" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "topology"],
    ["verify", "--max-atoms", "0"],
    ["verify", "--depth", "99"],
    ["verify", "--format", "yaml"],
    [],
])
def test_usage_errors(argv):
    assert main(argv) == 2


def test_dual_of_a_space(capsys, write_json):
    assert main(["dual", write_json(LUMPY)]) == 0
    record = _json_out(capsys)
    assert record["algebra"] == {"atoms": 2}
    assert record["parent_atoms"] == [[0, 1], [2]]


def test_dual_of_an_algebra(capsys, write_json):
    assert main(["dual", write_json(FULL3)]) == 0
    assert _json_out(capsys) == {"points": 3, "crevasses": [[[0], [1], [2]]]}


def test_corrupted_algebra(capsys, write_json):
    corrupted = {"algebra": {"atoms": 4}, "generators": [[[0, 1], [1, 2, 3]]]}
    assert main(["dual", write_json(corrupted)]) == 2
    assert "❌" in capsys.readouterr().err


def test_unstable_dual_then_replay(capsys, write_json):
    assert main(["dual", write_json(HALVES_BPA)]) == 1
    captured = capsys.readouterr()
    assert "not stable" in captured.err
    counterexample = json.loads(captured.out)
    assert counterexample == {"check": "bpa.stable", "instance": HALVES_BPA}

    assert main(["replay", write_json(counterexample, "counterexample.json")]) == 1
    assert _json_out(capsys)["failures"] == 1


def test_replay_of_a_passing_instance(capsys, write_json):
    assert main(["replay", write_json({"check": "bpa.stable", "instance": FULL3})]) == 0
    assert _json_out(capsys)["passed"]


def test_replay_needs_a_counterexample(write_json):
    assert main(["replay", write_json(FULL3)]) == 2


def test_dual_of_a_discontinuous_map(write_json):
    record = {
        "source": LUMPY,
        "target": {"points": 3, "crevasses": [[[0], [1], [2]]]},
        "table": [0, 1, 2],
    }
    assert main(["dual", write_json(record)]) == 1


def test_dual_needs_a_dualizable_record(write_json):
    assert main(["dual", write_json({"atoms": 2})]) == 2


def test_complete_space(capsys, write_json):
    assert main(["complete", write_json(LUMPY)]) == 0
    result = _json_out(capsys)
    assert result["c_map"] == [0, 0, 1]
    assert not result["report"]["homeomorphism"]


def test_complete_tree(capsys, write_json):
    tree = {"branching": [2], "subspace": "eventually-zero"}
    assert main(["complete", write_json(tree), "--depth", "3"]) == 0
    report = _json_out(capsys)["report"]
    assert report["dense"] and not report["homeomorphism"]


def test_complete_tree_too_deep(write_json):
    tree = {"branching": [2], "depth_bound": 4}
    assert main(["complete", write_json(tree), "--depth", "5"]) == 2


def test_enumerate(capsys, write_json):
    assert main(["enumerate", "partitions", write_json({"atoms": 3})]) == 0
    assert len(_json_out(capsys)) == 5
    assert main(["enumerate", "spectrum", write_json(FULL3)]) == 0
    assert _json_out(capsys) == [{"atom": 0}, {"atom": 1}, {"atom": 2}]
    assert main(["enumerate", "coherent", write_json(LUMPY)]) == 0
    assert len(_json_out(capsys)) == 2
    assert main(["enumerate", "partitions", write_json(LUMPY)]) == 0
    assert sorted(_json_out(capsys)) == [[[0, 1], [2]], [[0, 1, 2]]]


@pytest.mark.parametrize("record", [{"atoms": True}, {"points": True, "crevasses": []}])
def test_boolean_sizes_are_record_errors(capsys, write_json, record):
    assert main(["enumerate", "partitions", write_json(record)]) == 2
    assert "❌" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["dual", str(tmp_path / "nope.json")]) == 2
