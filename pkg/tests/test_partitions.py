import pytest
from hypothesis import given

from partition_duality.algebra.base import GroundAlgebra, is_boolean_homomorphism
from partition_duality.algebra.partitions import (
    CellularFamily,
    Partition,
    all_cellular_families,
    all_partitions,
    coarsening_map,
    coarsenings,
    extend_to_maximal_cellular,
    is_cellular,
    is_partition,
    meet_partitions,
    refines,
    subcomplete_embedding,
)
from partition_duality.errors import AlgebraMismatchError, InvalidInputError, RefinementError

from .conftest import partition_pairs, partitions

BELL = [1, 1, 2, 5, 15, 52]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_partition_count_is_bell(n):
    parts = all_partitions(GroundAlgebra(n))
    assert len(parts) == len(set(parts)) == BELL[n]


def test_cellular_family_count():
    # Partitions of every subset of the atoms
    assert len(all_cellular_families(GroundAlgebra(2))) == 5
    assert len(all_cellular_families(GroundAlgebra(3))) == 15


def test_blocks_are_validated(p4):
    with pytest.raises(InvalidInputError):
        CellularFamily.from_lists(p4, [[0, 1], [1, 2]])
    with pytest.raises(InvalidInputError):
        Partition.from_lists(p4, [[0, 1], [2]])
    assert Partition.from_lists(p4, [[2, 3], [0, 1]]).blocks == (0b0011, 0b1100)


def test_family_predicates(p4):
    a, b = p4.element([0]), p4.element([1, 2])
    assert is_cellular([a, b])
    assert not is_partition([a, b])
    assert is_partition([a, b, p4.element([3])])
    assert not is_cellular([a, p4.element([0, 1])])
    assert not is_cellular([p4.zero])


def test_extend_to_maximal_cellular(p4):
    family = CellularFamily.from_lists(p4, [[0, 1]])
    assert extend_to_maximal_cellular(family).to_list() == [[0, 1], [2], [3]]


def test_meet_of_halves(p4, halves):
    other = Partition.from_lists(p4, [[0, 2], [1, 3]])
    assert meet_partitions(halves, other) == Partition.atoms(p4)


@given(partitions())
def test_atoms_and_top_bound_everything(p):
    assert refines(Partition.atoms(p.algebra), p)
    assert refines(p, Partition.top(p.algebra))


@given(partition_pairs())
def test_meet_is_a_lower_bound(pair):
    p, q = pair
    m = meet_partitions(p, q)
    assert refines(m, p) and refines(m, q)
    assert m == meet_partitions(q, p)


@given(partitions())
def test_coarsenings_are_refined(p):
    found = list(coarsenings(p))
    assert len(found) == BELL[len(p)]
    assert all(refines(p, q) for q in found)


def test_coarsening_maps(p4, halves):
    atoms = Partition.atoms(p4)
    phi = coarsening_map(atoms, halves)
    assert phi(0b0100) == 0b1100
    assert coarsening_map(halves, halves).is_identity
    top = Partition.top(p4)
    assert phi.then(coarsening_map(halves, top)) == coarsening_map(atoms, top)
    with pytest.raises(RefinementError):
        coarsening_map(halves, atoms)
    with pytest.raises(InvalidInputError):
        phi(0b0011)


def test_refinement_needs_one_algebra(halves):
    with pytest.raises(AlgebraMismatchError):
        refines(halves, Partition.top(GroundAlgebra(2)))


def test_subcomplete_embedding(halves):
    e = subcomplete_embedding(halves)
    assert e.source == GroundAlgebra(2)
    assert is_boolean_homomorphism(e) and e.is_injective
    assert [e.apply(1), e.apply(2), e.apply(3)] == [0b0011, 0b1100, 0b1111]
