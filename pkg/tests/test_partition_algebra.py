import pytest
from hypothesis import given

from partition_duality.algebra.base import GroundAlgebra, is_boolean_homomorphism
from partition_duality.algebra.partition_algebra import (
    BooleanPartitionAlgebra,
    InverseLimitPoint,
    PartitionBound,
    PartitionFilter,
    brute_force_ultrafilters,
    coherent_selections,
    enumerate_f_ultrafilters,
    filter_contains,
    filter_from_generators,
    induced_bpa,
    iota,
    iota_image,
    iota_table,
    limit_to_ultrafilter,
    make_full_bpa,
    stability_report,
    ultrafilter_to_limit,
    validate_bpa,
)
from partition_duality.algebra.partitions import Partition
from partition_duality.errors import (
    CoherenceError,
    InvalidInputError,
    NotAnFUltrafilterError,
    ValidityError,
)

from .conftest import principal_bpas


def test_filter_base_is_the_meet(p4, halves):
    other = Partition.from_lists(p4, [[0, 2], [1, 3]])
    f = PartitionFilter(p4, (halves, other))
    assert f.base == Partition.atoms(p4)
    assert f.contains(halves)
    assert PartitionFilter(p4).base == Partition.top(p4)


def test_filter_from_generators(p4, halves):
    f = filter_from_generators(p4, [halves, halves])
    assert f.generators == (halves,)
    assert filter_contains(f, halves)
    assert filter_contains(f, Partition.top(p4))
    assert not filter_contains(f, Partition.from_lists(p4, [[0, 2], [1, 3]]))
    assert not filter_contains(f, Partition.atoms(p4))


def test_filter_equality_follows_the_least_member(p4, halves):
    other = Partition.from_lists(p4, [[0, 2], [1, 3]])
    two_generators = PartitionFilter(p4, (halves, other))
    atoms = PartitionFilter(p4, (Partition.atoms(p4),))
    assert two_generators == atoms
    assert hash(two_generators) == hash(atoms)
    assert two_generators.generators != atoms.generators
    assert PartitionFilter(p4, (halves,)) != atoms
    full = make_full_bpa(p4)
    assert BooleanPartitionAlgebra(p4, two_generators) == full
    assert len({full, BooleanPartitionAlgebra(p4, two_generators)}) == 1


@given(principal_bpas())
def test_adding_coarser_generators_keeps_the_filter(bpa):
    f = bpa.filter
    coarser = PartitionFilter(bpa.algebra, f.generators + (Partition.top(bpa.algebra),))
    assert coarser == f
    assert induced_bpa(bpa.algebra, coarser).to_dict() == induced_bpa(bpa.algebra, f).to_dict()


def test_filter_rejects_foreign_generators(p4):
    with pytest.raises(InvalidInputError):
        PartitionFilter(p4, (p4.one,))


def test_full_bpa_is_valid(full3):
    validity = validate_bpa(full3)
    assert validity.all_true
    assert full3.is_valid
    assert make_full_bpa(GroundAlgebra(3), "all") == full3
    assert make_full_bpa(GroundAlgebra(3), PartitionBound.ALL) == full3


def test_unknown_partition_bound():
    with pytest.raises(InvalidInputError):
        make_full_bpa(GroundAlgebra(2), "countable")


def test_invalid_candidate_fails_every_condition(invalid_bpa):
    validity = validate_bpa(invalid_bpa)
    assert not validity.pair_condition
    assert not validity.cover_condition
    assert not validity.finite_partition_condition
    assert validity.all_equal


@given(principal_bpas())
def test_validity_conditions_agree(bpa):
    validity = validate_bpa(bpa)
    assert validity.all_equal
    assert validity.pair_condition == (bpa.filter.base == Partition.atoms(bpa.algebra))


def test_spectrum_needs_a_valid_algebra(invalid_bpa):
    with pytest.raises(ValidityError):
        enumerate_f_ultrafilters(invalid_bpa)


def test_invalid_candidate_is_unstable(invalid_bpa):
    report = stability_report(invalid_bpa)
    assert not report.hit_by_limit
    assert report.projections_surjective
    assert report.union_covers
    assert report.intersection_is_top
    assert report.spectrum_size == 4
    assert not report.all_true


def test_full_spectrum_is_the_atoms(full3):
    spectrum = enumerate_f_ultrafilters(full3)
    assert [u.atom for u in spectrum] == [0, 1, 2]
    assert stability_report(full3).all_true


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_brute_force_ultrafilters_match(n):
    algebra = GroundAlgebra(n)
    found = set(brute_force_ultrafilters(algebra))
    spectrum = {frozenset(u.member_masks()) for u in enumerate_f_ultrafilters(make_full_bpa(algebra))}
    assert found == spectrum
    assert len(found) == n


def test_induced_algebra_of_halves(p4, halves):
    bpa = induced_bpa(p4, PartitionFilter(p4, (halves,)))
    assert bpa.algebra == GroundAlgebra(2)
    assert bpa.parent_atoms == (0b0011, 0b1100)
    assert validate_bpa(bpa).all_true
    assert bpa.to_parent(0b01) == 0b0011
    assert bpa.from_parent(0b1100) == 0b10
    with pytest.raises(InvalidInputError):
        bpa.from_parent(0b0001)


@given(principal_bpas())
def test_induced_algebras_are_stable(bpa):
    induced = induced_bpa(bpa.algebra, bpa.filter)
    report = stability_report(induced)
    assert report.all_true and report.all_equal
    assert report.spectrum_size == induced.algebra.atom_count


def test_limit_and_ultrafilters_correspond(full3):
    f = full3.filter
    selections = coherent_selections(f)
    assert len(selections) == 3
    images = {limit_to_ultrafilter(x) for x in selections}
    assert images == set(enumerate_f_ultrafilters(full3))
    for u in images:
        assert limit_to_ultrafilter(ultrafilter_to_limit(u, f)) == u


def test_incoherent_selection(full3):
    algebra = full3.algebra
    atoms = Partition.atoms(algebra)
    pair = Partition.from_lists(algebra, [[0, 1], [2]])
    x = InverseLimitPoint.from_mapping(full3.filter, {atoms: 0b001, pair: 0b100})
    assert x.coherence_failures() == [(atoms, pair)]
    assert not x.is_coherent
    with pytest.raises(CoherenceError):
        limit_to_ultrafilter(x)


def test_selection_off_an_atom(invalid_bpa, halves):
    x = InverseLimitPoint.from_mapping(invalid_bpa.filter, {halves: 0b0011})
    assert x.is_coherent
    with pytest.raises(NotAnFUltrafilterError):
        limit_to_ultrafilter(x)


def test_iota(full3):
    u0 = enumerate_f_ultrafilters(full3)[0]
    assert iota(full3, full3.algebra.atom(0)) == frozenset({u0})
    table = iota_table(full3)
    assert is_boolean_homomorphism(table) and table.is_injective
    singletons = iota_image(full3, Partition.atoms(full3.algebra))
    assert singletons == frozenset(frozenset({u}) for u in enumerate_f_ultrafilters(full3))
    assert iota_image(full3, Partition.top(full3.algebra)) == frozenset({frozenset(enumerate_f_ultrafilters(full3))})


def test_bpa_record_shape(p4, halves):
    bpa = BooleanPartitionAlgebra(p4, PartitionFilter(p4, (halves,)))
    assert bpa.to_dict() == {"algebra": {"atoms": 4}, "generators": [[[0, 1], [2, 3]]]}
