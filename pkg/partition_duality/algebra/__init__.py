# Algebra side: finite Boolean algebras, partitions, Boolean partition algebras
from .base import AlgElement, ExtendedPartition, FunctionTable, GroundAlgebra
from .partitions import CellularFamily, CoarseningMap, Partition
from .partition_algebra import (
    BooleanPartitionAlgebra,
    FUltrafilter,
    InverseLimitPoint,
    PartitionBound,
    PartitionFilter,
)
from .morphisms import PartitionHom
