import pytest
from hypothesis import given

from partition_duality.algebra.base import GroundAlgebra
from partition_duality.algebra.partitions import Partition
from partition_duality.errors import InvalidInputError, MorphismMismatchError
from partition_duality.spaces.partition_space import (
    PartitionSpace,
    UniformMap,
    all_point_maps,
    c_map,
    cauchy_complete,
    coherent_points,
    compose_maps,
    identity_map,
    is_complete,
    is_separating,
    is_uniformly_continuous,
    principal_spaces,
    pull_back_partition,
    realized_by,
    uniform_maps,
)

from .conftest import principal_spaces as principal_space_strategy


def test_space_validation():
    with pytest.raises(InvalidInputError):
        PartitionSpace(-1)
    with pytest.raises(InvalidInputError):
        PartitionSpace(17)
    with pytest.raises(InvalidInputError):
        PartitionSpace(0, (Partition.atoms(GroundAlgebra(1)),))
    with pytest.raises(InvalidInputError):
        PartitionSpace.from_lists(3, [[[0, 1]]])


@pytest.mark.parametrize("points", [True, False])
def test_boolean_point_counts_are_rejected(points):
    with pytest.raises(InvalidInputError):
        PartitionSpace(points)
    with pytest.raises(InvalidInputError):
        PartitionSpace.from_lists(points, [])


def test_default_crevasse_is_the_whole_space():
    space = PartitionSpace(2)
    assert space.crevasses == (Partition.top(space.algebra),)
    assert not is_separating(space)


def test_empty_space():
    empty = PartitionSpace.empty()
    assert empty.is_empty
    assert is_separating(empty) and is_complete(empty) and cauchy_complete(empty)
    assert coherent_points(empty) == []
    with pytest.raises(InvalidInputError):
        empty.algebra


def test_separation(lumpy_space, discrete_space):
    assert not is_separating(lumpy_space)
    assert is_separating(discrete_space)
    assert lumpy_space.block_of(1, lumpy_space.crevasses[0]) == 0b011
    with pytest.raises(InvalidInputError):
        lumpy_space.block_of(3, lumpy_space.crevasses[0])


def test_uniform_continuity(lumpy_space, discrete_space):
    ident = UniformMap(lumpy_space, discrete_space, (0, 1, 2))
    assert not is_uniformly_continuous(ident)
    assert pull_back_partition(ident, discrete_space.crevasses[0]) == Partition.atoms(lumpy_space.algebra)
    assert is_uniformly_continuous(UniformMap(discrete_space, lumpy_space, (0, 1, 2)))
    assert is_uniformly_continuous(UniformMap(lumpy_space, discrete_space, (2, 2, 2)))


def test_uniform_map_validation(lumpy_space, discrete_space):
    with pytest.raises(InvalidInputError):
        UniformMap(lumpy_space, discrete_space, (0, 1))
    with pytest.raises(InvalidInputError):
        UniformMap(lumpy_space, discrete_space, (0, 1, 3))
    f = identity_map(lumpy_space)
    with pytest.raises(MorphismMismatchError):
        compose_maps(f, identity_map(discrete_space))


def test_discrete_sources_map_anywhere(discrete_space, lumpy_space):
    assert len(uniform_maps(discrete_space, lumpy_space)) == len(list(all_point_maps(discrete_space, lumpy_space))) == 27


def test_principal_space_counts():
    assert len(principal_spaces(3)) == 5
    assert principal_spaces(0) == [PartitionSpace.empty()]


@given(principal_space_strategy())
def test_completeness_readings_agree(space):
    assert is_complete(space) == cauchy_complete(space) == is_separating(space)


def test_coherent_points_are_realized(discrete_space, lumpy_space):
    assert all(realized_by(discrete_space, x) for x in coherent_points(discrete_space))
    assert [realized_by(lumpy_space, x) for x in coherent_points(lumpy_space)] == [0b011, 0b100]


def test_c_map_identifies_unseparated_points(lumpy_space):
    assert c_map(lumpy_space, 0) == c_map(lumpy_space, 1)
    assert c_map(lumpy_space, 0) != c_map(lumpy_space, 2)
    with pytest.raises(InvalidInputError):
        c_map(lumpy_space, 5)
