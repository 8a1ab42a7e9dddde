"""Shared fixtures and hypothesis strategies"""
import json

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from partition_duality.algebra.base import GroundAlgebra
from partition_duality.algebra.partition_algebra import BooleanPartitionAlgebra, PartitionFilter, make_full_bpa
from partition_duality.algebra.partitions import Partition, all_partitions
from partition_duality.spaces.partition_space import PartitionSpace
from partition_duality.spaces.tree_models import TreeModel

settings.register_profile("partition_duality", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("partition_duality")


# Strategies

algebras = st.integers(min_value=1, max_value=4).map(GroundAlgebra)


@st.composite
def elements(draw, algebra=None):
    algebra = algebra or draw(algebras)
    return algebra.from_mask(draw(st.integers(min_value=0, max_value=algebra.top_mask)))


@st.composite
def element_pairs(draw):
    algebra = draw(algebras)
    return draw(elements(algebra)), draw(elements(algebra))


@st.composite
def partitions(draw, algebra=None):
    algebra = algebra or draw(algebras)
    return draw(st.sampled_from(all_partitions(algebra)))


@st.composite
def partition_pairs(draw):
    algebra = draw(algebras)
    return draw(partitions(algebra)), draw(partitions(algebra))


@st.composite
def principal_bpas(draw):
    p = draw(partitions())
    return BooleanPartitionAlgebra(p.algebra, PartitionFilter(p.algebra, (p,)))


@st.composite
def principal_spaces(draw, max_points=4):
    n = draw(st.integers(min_value=1, max_value=max_points))
    p = draw(st.sampled_from(all_partitions(GroundAlgebra(n))))
    return PartitionSpace(n, (p,))


# Fixtures


@pytest.fixture
def p4():
    return GroundAlgebra(4)


@pytest.fixture
def halves(p4):
    """{{0, 1}, {2, 3}} in the four-atom algebra"""
    return Partition.from_lists(p4, [[0, 1], [2, 3]])


@pytest.fixture
def invalid_bpa(p4, halves):
    """Filter generated by {{0, 1}, {2, 3}}: misses {b, b'} for single atoms"""
    return BooleanPartitionAlgebra(p4, PartitionFilter(p4, (halves,)))


@pytest.fixture
def full3():
    return make_full_bpa(GroundAlgebra(3))


@pytest.fixture
def lumpy_space():
    """Three points, 0 and 1 never separated"""
    return PartitionSpace.from_lists(3, [[[0, 1], [2]]])


@pytest.fixture
def discrete_space():
    return PartitionSpace.from_lists(3, [[[0], [1], [2]]])


@pytest.fixture
def binary_tree():
    return TreeModel(branching=(2,))


@pytest.fixture
def eventually_zero_tree():
    return TreeModel(branching=(2,), subspace="eventually-zero")


@pytest.fixture
def write_json(tmp_path):
    """Write a record to a temp file and return its path"""
    def write(record, name="record.json"):
        path = tmp_path / name
        path.write_text(json.dumps(record), encoding="utf-8")
        return str(path)
    return write
