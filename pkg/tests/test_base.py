import pytest
from hypothesis import given

from partition_duality.algebra.base import (
    ExtendedPartition,
    FunctionTable,
    GroundAlgebra,
    all_function_tables,
    extended_triples,
    hom_via_triples,
    is_boolean_homomorphism,
    is_extended_partition,
    normalize_subalgebra,
)
from partition_duality.algebra.morphisms import boolean_homs
from partition_duality.bits import is_submask, lowest_bit, mask_from_indices, mask_to_indices, popcount, submasks
from partition_duality.errors import AlgebraMismatchError, InvalidInputError

from .conftest import element_pairs, elements


def test_bit_helpers():
    assert popcount(0b1011) == 3
    assert mask_from_indices([0, 3]) == 0b1001
    assert mask_to_indices(0b1001) == [0, 3]
    assert lowest_bit(0b1100) == 2
    assert lowest_bit(0) == -1
    assert list(submasks(0b101)) == [0, 0b1, 0b100, 0b101]
    assert is_submask(0b100, 0b101) and not is_submask(0b011, 0b101)


@pytest.mark.parametrize("atoms", [0, -1, 17, "3", 2.0, True, False])
def test_ground_algebra_rejects_bad_sizes(atoms):
    with pytest.raises(InvalidInputError):
        GroundAlgebra(atoms)


def test_elements_and_masks(p4):
    assert p4.size == 16
    assert p4.element([0, 2]).mask == 0b101
    assert p4.one.is_one and p4.zero.is_zero
    assert p4.atom(3).member_atoms == [3]
    with pytest.raises(InvalidInputError):
        p4.element([4])
    with pytest.raises(InvalidInputError):
        p4.from_mask(1 << 4)


def test_mixed_algebras_are_rejected():
    with pytest.raises(AlgebraMismatchError):
        GroundAlgebra(2).one & GroundAlgebra(3).one


@given(element_pairs())
def test_de_morgan(pair):
    x, y = pair
    assert ~(x & y) == (~x | ~y)
    assert ~(x | y) == (~x & ~y)


@given(elements())
def test_complement_laws(x):
    algebra = x.algebra
    assert (x | ~x) == algebra.one
    assert (x & ~x) == algebra.zero
    assert ~~x == x


@given(element_pairs())
def test_order_agrees_with_meet(pair):
    x, y = pair
    assert x.leq(y) == ((x & y) == x)
    assert (x & y).leq(x) and x.leq(x | y)


def test_from_pairs_needs_a_total_table():
    a = GroundAlgebra(1)
    with pytest.raises(InvalidInputError):
        FunctionTable.from_pairs(a, a, [(a.zero, a.zero)])
    with pytest.raises(InvalidInputError):
        FunctionTable.from_pairs(a, a, [(a.zero, a.zero), (a.zero, a.one), (a.one, a.one)])
    table = FunctionTable.from_pairs(a, a, [(a.zero, a.zero), (a.one, a.one)])
    assert table == FunctionTable.identity(a)


def test_table_composition_order():
    a, b = GroundAlgebra(1), GroundAlgebra(2)
    f = FunctionTable(a, b, (0, 0b11))
    g = FunctionTable(b, a, (0, 1, 0, 1))
    assert f.then(g).images == (0, 1)
    with pytest.raises(AlgebraMismatchError):
        f.then(f)


@pytest.mark.parametrize("source,target", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)])
def test_homomorphism_count(source, target):
    a, b = GroundAlgebra(source), GroundAlgebra(target)
    found = {t for t in all_function_tables(a, b) if is_boolean_homomorphism(t)}
    assert len(found) == source ** target
    assert found == set(boolean_homs(a, b))


def test_triples_decide_homomorphisms():
    a = GroundAlgebra(2)
    for table in all_function_tables(a, a):
        assert hom_via_triples(table) == is_boolean_homomorphism(table)


def test_extended_partitions(p4):
    x = p4.element([0, 1])
    assert is_extended_partition([x, p4.zero, ~x])
    assert not is_extended_partition([x, x, ~x])
    assert not is_extended_partition([x, p4.zero, p4.zero])
    with pytest.raises(InvalidInputError):
        ExtendedPartition.from_elements([x, x, ~x])


def test_extended_triples_cover_every_atom_assignment():
    triples = list(extended_triples(GroundAlgebra(2)))
    assert len(triples) == 9
    assert len(set(triples)) == 9
    assert all(is_extended_partition(t.elements()) for t in triples)


def test_normalize_subalgebra(p4):
    sub, atoms = normalize_subalgebra(p4, [0b0011, 0b1100, 0b1111])
    assert sub == GroundAlgebra(2)
    assert atoms == (0b0011, 0b1100)


def test_normalize_rejects_non_subalgebras(p4):
    with pytest.raises(InvalidInputError):
        normalize_subalgebra(p4, [0b0001, 0b0011, 0b1111])
    with pytest.raises(InvalidInputError):
        normalize_subalgebra(p4, [0b0011])
