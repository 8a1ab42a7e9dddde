import pytest

from partition_duality.algebra.base import GroundAlgebra
from partition_duality.algebra.partition_algebra import make_full_bpa, validate_bpa
from partition_duality.errors import DepthOverflowError, InvalidInputError, MisuseError, RefinementError
from partition_duality.spaces import tree_models
from partition_duality.spaces.tree_models import (
    BranchDescriptor,
    TreeElement,
    TreeModel,
    TreePartition,
    branch_ultrafilter,
    coarsen_comb,
    coarsen_node,
    comb_partition,
    density_check,
    extend_nodes_to_maximal,
    is_cellular_nodes,
    level_partition,
    nonsurjectivity_probe,
    parse_word,
    refines_nodes,
    representatives,
    spectrum_nodes,
    tree_completion,
    tree_is_complete,
    tree_refines,
    truncate,
    upper_bound_chain,
)

ZEROS = BranchDescriptor((), (0,))
ONES = BranchDescriptor((), (1,))


def test_parse_word():
    assert parse_word("101") == (1, 0, 1)
    assert parse_word("1.12.0") == (1, 12, 0)
    assert parse_word([2, 0]) == (2, 0)
    with pytest.raises(InvalidInputError):
        parse_word("1a")
    with pytest.raises(InvalidInputError):
        parse_word([1, -1])


def test_branches_are_normalized():
    assert BranchDescriptor((0, 0), (0,)) == ZEROS
    assert BranchDescriptor((), (1, 1)) == ONES
    assert BranchDescriptor((1, 0), (1, 0)) == BranchDescriptor((), (1, 0))
    assert BranchDescriptor("1", "0").node_at(4) == (1, 0, 0, 0)
    assert BranchDescriptor("1", "0").to_dict() == {"prefix": "1", "period": "0"}
    with pytest.raises(InvalidInputError):
        BranchDescriptor((), ())


def test_first_divergence():
    assert ZEROS.first_divergence(ONES) == 0
    assert BranchDescriptor("01", "0").first_divergence(ZEROS) == 1
    assert ZEROS.first_divergence(BranchDescriptor("00", "0")) is None


def test_model_validation():
    with pytest.raises(InvalidInputError):
        TreeModel(branching=(1,))
    with pytest.raises(InvalidInputError):
        TreeModel(subspace="explicit")
    with pytest.raises(InvalidInputError):
        TreeModel(branches=(ZEROS,))
    with pytest.raises(InvalidInputError):
        TreeModel(subspace="countable")
    with pytest.raises(InvalidInputError):
        TreeModel(subspace="explicit", branches=(BranchDescriptor((), (2,)),))


def test_subspace_membership():
    ternary_zero = TreeModel(branching=(3,), subspace="eventually-zero")
    ternary_few_ones = TreeModel(branching=(3,), subspace="finitely-many-ones")
    twos = BranchDescriptor((), (2,))
    assert not ternary_zero.contains_branch(twos)
    assert ternary_few_ones.contains_branch(twos)
    assert not ternary_few_ones.contains_branch(BranchDescriptor((), (1, 2)))
    with pytest.raises(InvalidInputError):
        TreeModel().contains_branch(twos)


def test_depth_bound(binary_tree):
    shallow = TreeModel(depth_bound=3)
    with pytest.raises(DepthOverflowError):
        shallow.level(4)
    assert len(binary_tree.level(3)) == 8
    assert TreeModel(branching=(2, 3)).level_size(3) == 12


def test_element_algebra(binary_tree):
    zero, one = TreeElement.zero(binary_tree), TreeElement.one(binary_tree)
    left, right = TreeElement.node(binary_tree, "0"), TreeElement.node(binary_tree, "1")
    assert (left | right) == one
    assert ~left == right
    assert (left & right) == zero
    assert TreeElement(binary_tree, ((0, 0), (0, 1))) == left
    assert TreeElement.node(binary_tree, "01") <= left
    assert not left <= TreeElement.node(binary_tree, "01")
    assert left.expand(2) == {(0, 0), (0, 1)}
    with pytest.raises(InvalidInputError):
        TreeElement.node(binary_tree, "2")


def test_partition_validation(binary_tree):
    left = TreeElement.node(binary_tree, "0")
    with pytest.raises(InvalidInputError):
        TreePartition(binary_tree, (left,))
    with pytest.raises(InvalidInputError):
        TreePartition(binary_tree, (left, TreeElement.one(binary_tree)))
    assert len(level_partition(binary_tree, 2).blocks) == 4


def test_level_refinement(binary_tree):
    coarse, fine = level_partition(binary_tree, 1), level_partition(binary_tree, 2)
    assert tree_refines(fine, coarse)
    assert not tree_refines(coarse, fine)


def test_comb(binary_tree):
    comb = comb_partition(binary_tree, ZEROS)
    assert comb.is_infinite and not comb.is_subcomplete()
    assert comb.comb_block(1) == TreeElement.node(binary_tree, "1")
    assert comb.comb_block(3) == TreeElement.node(binary_tree, "001")
    assert comb.block_containing(BranchDescriptor("01", "1")) == TreeElement.node(binary_tree, "01")
    assert comb.block_containing(ZEROS) is None
    with pytest.raises(MisuseError):
        comb.comb_block(0)
    with pytest.raises(MisuseError):
        tree_refines(level_partition(binary_tree, 1), comb)

    full = TreeModel(closure="full-union")
    assert comb_partition(full, ZEROS).is_subcomplete()


def test_comb_upper_bounds_decrease(binary_tree):
    chain = upper_bound_chain(comb_partition(binary_tree, ZEROS), 6)
    assert len(chain) == 3
    for a, b in zip(chain, chain[1:]):
        assert b <= a and a != b
    coarse = coarsen_comb(comb_partition(binary_tree, ZEROS), 3)
    assert not coarse.is_infinite
    assert tree_refines(comb_partition(binary_tree, ZEROS), coarse)


def test_branch_ultrafilter(binary_tree):
    u = branch_ultrafilter(binary_tree, BranchDescriptor("1", "0"))
    assert u.contains(TreeElement.node(binary_tree, "10"))
    assert not u.contains(TreeElement.node(binary_tree, "11"))
    assert u.selection(3) == (1, 0, 0)
    with pytest.raises(InvalidInputError):
        branch_ultrafilter(binary_tree, BranchDescriptor((), (2,)))


def test_cellular_nodes(binary_tree):
    assert is_cellular_nodes([(0,), (1, 0)])
    assert not is_cellular_nodes([(0,), (0, 1)])
    assert extend_nodes_to_maximal(binary_tree, [(0,)], 2) == [(0,), (1, 0), (1, 1)]
    with pytest.raises(InvalidInputError):
        extend_nodes_to_maximal(binary_tree, [(0,), (0, 1)], 2)
    assert coarsen_node((0, 1, 1), [(0,), (1,)]) == (0,)
    assert refines_nodes([(0, 1), (1,)], [(0,), (1,)])
    assert not refines_nodes([(0,)], [(0, 1), (0, 0)])
    with pytest.raises(RefinementError):
        coarsen_node((0, 1), [(1,)])


def test_truncation(binary_tree):
    bpa, space = truncate(binary_tree, 2)
    assert bpa.algebra.atom_count == 4
    assert space.points == 4
    assert validate_bpa(bpa).all_true
    saturated, _ = truncate(binary_tree, 2, saturate=True)
    assert saturated.filter.base == bpa.filter.base
    assert spectrum_nodes(binary_tree, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    with pytest.raises(DepthOverflowError):
        truncate(binary_tree, 5)


def test_explicit_subspace_truncation():
    model = TreeModel(subspace="explicit", branches=(ZEROS, BranchDescriptor("01", "1")))
    _, space = truncate(model, 2)
    assert space.points == 2
    assert not density_check(model, 2)
    assert tree_is_complete(model, 4).complete


def test_eventually_zero_is_incomplete(eventually_zero_tree):
    result = tree_is_complete(eventually_zero_tree, 3)
    assert not result.complete
    assert result.witness == ONES
    probe = nonsurjectivity_probe(eventually_zero_tree, ONES, 3)
    assert probe.all_diverge
    with pytest.raises(MisuseError):
        nonsurjectivity_probe(eventually_zero_tree, ZEROS, 3)


def test_tree_completion(binary_tree, eventually_zero_tree):
    report = tree_completion(eventually_zero_tree, 3)
    assert report.dense and report.embedding and report.uniformly_continuous
    assert not report.homeomorphism
    record = report.to_dict()
    assert record["completion"]["subspace"] == "all"
    assert set(record["levels"]) == {"0", "1", "2", "3"}
    assert tree_completion(binary_tree, 3).homeomorphism
    assert report.onto and record["report"]["onto"]


def test_completion_selections_cover_every_depth():
    report = tree_completion(TreeModel(), 8)
    assert report.embedding and report.onto and report.homeomorphism
    assert [k for k, _ in report.levels] == [0, 1, 2, 3, 4]


def test_completion_detects_collapsed_representatives(monkeypatch):
    monkeypatch.setattr(tree_models, "representatives", lambda model, depth: [ZEROS] * model.level_size(depth))
    report = tree_completion(TreeModel(), 6)
    assert not report.embedding
    assert not report.onto
    assert not report.homeomorphism


def test_lone_branch_is_not_onto():
    model = TreeModel(subspace="explicit", branches=(ZEROS,))
    assert not density_check(model, 1)
    report = tree_completion(model, 3)
    assert report.embedding and not report.onto and not report.homeomorphism


def test_eventually_zero_diverges_from_ones_after_its_prefix(eventually_zero_tree):
    probe = nonsurjectivity_probe(eventually_zero_tree, ONES, 6)
    assert probe.all_diverge
    reps = representatives(eventually_zero_tree, 6)
    assert [label for label, _ in probe.divergence] == [r.label for r in reps]
    for r, (_, k) in zip(reps, probe.divergence):
        assert 1 <= k <= len(r.prefix) + 1
    assert max(k for _, k in probe.divergence) == 7


def test_truncation_matches_the_full_algebra():
    bpa, _ = truncate(TreeModel(), 2)
    assert bpa == make_full_bpa(GroundAlgebra(4))
    assert bpa.filter.generators != make_full_bpa(GroundAlgebra(4)).filter.generators
