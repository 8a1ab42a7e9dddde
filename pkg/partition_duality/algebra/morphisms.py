"""Partitional functions and partition homomorphisms"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, Iterable, Iterator, List, Optional, Set, Tuple

from ..bits import mask_from_indices
from ..errors import (
    AlgebraMismatchError,
    InternalConsistencyError,
    InvalidInputError,
    MorphismMismatchError,
    NotAHomomorphismError,
)
from .base import FunctionTable, GroundAlgebra, _is_extended_masks, is_boolean_homomorphism
from .partition_algebra import BooleanPartitionAlgebra, make_full_bpa
from .partitions import Partition, _is_cellular_masks

logger = logging.getLogger(__name__)


def _checked_partitions(bpa: BooleanPartitionAlgebra, exhaustive: bool) -> List[Partition]:
    # Images of coarsenings coarsen the image of the least member, so the
    # least member and the generators decide the reduced check
    f = bpa.filter
    if exhaustive:
        return f.witnesses()
    return sorted(set(f.generators) | {f.base}, key=lambda p: (-len(p), p.blocks))


def nonzero_image(f: FunctionTable, p: Partition) -> Set[int]:
    """f''(p) \\ {0} as a set of target masks"""
    return f.image(p.blocks) - {0}


def _is_partition_masks(top: int, masks: Iterable[int]) -> bool:
    masks = list(masks)
    if not masks or not _is_cellular_masks(masks):
        return False
    joined = 0
    for m in masks:
        joined |= m
    return joined == top


def _check_source(f: FunctionTable, source: BooleanPartitionAlgebra) -> None:
    if f.source != source.algebra:
        raise AlgebraMismatchError(f"Table source {f.source} is not the algebra of the source")


def is_partitional(
    f: FunctionTable,
    source: BooleanPartitionAlgebra,
    target: Optional[GroundAlgebra] = None,
    exhaustive: bool = False
) -> bool:
    """
    True iff f is a Boolean homomorphism and f''(p) \\ {0} is a partition of
    the target for every p in the source filter

    Args:
        f: Total function table
        source: Source Boolean partition algebra
        target: Target algebra (defaults to the table's)
        exhaustive: Check every filter member instead of the least member and generators
    """
    _check_source(f, source)
    if target is not None and target != f.target:
        raise AlgebraMismatchError(f"Table target {f.target} is not {target}")
    if not is_boolean_homomorphism(f):
        return False
    top = f.target.top_mask
    return all(_is_partition_masks(top, nonzero_image(f, p)) for p in _checked_partitions(source, exhaustive))


def is_partition_hom(
    f: FunctionTable,
    source: BooleanPartitionAlgebra,
    target: BooleanPartitionAlgebra,
    exhaustive: bool = False
) -> bool:
    """True iff f is a Boolean homomorphism and f''(p) \\ {0} ∈ G for every p ∈ F"""
    _check_source(f, source)
    if f.target != target.algebra:
        raise AlgebraMismatchError(f"Table target {f.target} is not the algebra of the target")
    if not is_boolean_homomorphism(f):
        return False
    top = f.target.top_mask
    for p in _checked_partitions(source, exhaustive):
        image = nonzero_image(f, p)
        if not _is_partition_masks(top, image):
            return False
        if not target.filter.contains(Partition(f.target, tuple(image))):
            return False
    return True


def partitional_via_extended(f: FunctionTable, source: BooleanPartitionAlgebra) -> bool:
    """
    True iff f(0) = 0 and (f(a))_{a ∈ p} is an extended partition for every p ∈ F

    No homomorphism check is made; every filter member within the
    exhaustive limit is examined.
    """
    _check_source(f, source)
    if f.apply(0) != 0:
        return False
    top = f.target.top_mask
    return all(
        _is_extended_masks(top, [f.apply(b) for b in p.blocks])
        for p in source.filter.witnesses()
    )


def collapsed_blocks(f: FunctionTable, p: Partition) -> List[Tuple[int, int]]:
    """Pairs of distinct blocks of p sent to the same nonzero element"""
    seen: Dict[int, int] = {}
    collisions = []
    for b in p.blocks:
        y = f.apply(b)
        if y and y in seen:
            collisions.append((seen[y], b))
        else:
            seen.setdefault(y, b)
    return collisions


def partition_image_exact(
    f: FunctionTable,
    source: BooleanPartitionAlgebra,
    target: Optional[BooleanPartitionAlgebra] = None
) -> bool:
    """
    Injective form of the partitional / partition-homomorphism test:
    f''(p) itself, without removing 0, is a partition (or lies in G)

    Raises:
        InvalidInputError: f is not an injective homomorphism
    """
    _check_source(f, source)
    if not f.is_injective or not is_boolean_homomorphism(f):
        raise InvalidInputError("The exact image form applies to injective homomorphisms only")
    top = f.target.top_mask
    for p in source.filter.witnesses():
        image = f.image(p.blocks)
        if not _is_partition_masks(top, image):
            return False
        if target is not None and not target.filter.contains(Partition(f.target, tuple(image))):
            return False
    return True


@dataclass(frozen=True)
class PartitionHom:
    """
    Partition homomorphism (A, F) → (B, G)

    Construction checks the Boolean homomorphism axioms and the filter
    condition; a partitional map is a partition homomorphism into the
    full algebra of the target.
    """
    table: FunctionTable
    source: BooleanPartitionAlgebra
    target: BooleanPartitionAlgebra

    def __post_init__(self):
        _check_source(self.table, self.source)
        if not is_boolean_homomorphism(self.table):
            raise NotAHomomorphismError("Function table is not a Boolean homomorphism")
        if not is_partition_hom(self.table, self.source, self.target):
            raise NotAHomomorphismError("Filter members are not sent into the target filter")

    @classmethod
    def partitional(cls, table: FunctionTable, source: BooleanPartitionAlgebra) -> "PartitionHom":
        """Partitional map, as a partition homomorphism into (B, ℙ(B))"""
        return cls(table, source, make_full_bpa(table.target))

    def __call__(self, mask: int) -> int:
        return self.table.apply(mask)

    def then(self, other: "PartitionHom") -> "PartitionHom":
        """other ∘ self"""
        return compose(self, other)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "pairs": self.table.to_dict()["pairs"],
        }


def compose(f: PartitionHom, g: PartitionHom) -> PartitionHom:
    """
    g ∘ f

    Raises:
        MorphismMismatchError: g's source is not f's target
    """
    if f.target != g.source:
        raise MorphismMismatchError(
            f"Cannot compose: target {f.target.to_dict()} differs from source {g.source.to_dict()}"
        )
    try:
        return PartitionHom(f.table.then(g.table), f.source, g.target)
    except NotAHomomorphismError as e:
        raise InternalConsistencyError(f"Composite of partition homomorphisms failed its check: {e}") from e


def identity(bpa: BooleanPartitionAlgebra) -> PartitionHom:
    return PartitionHom(FunctionTable.identity(bpa.algebra), bpa, bpa)


def is_partition_isomorphism(h: PartitionHom) -> bool:
    """Bijective, with the inverse table again a partition homomorphism"""
    if not h.table.is_bijective:
        return False
    back = _inverse_table(h.table)
    return is_partition_hom(back, h.target, h.source)


def _inverse_table(f: FunctionTable) -> FunctionTable:
    images = [0] * f.source.size
    for m, y in enumerate(f.images):
        images[y] = m
    return FunctionTable(f.target, f.source, tuple(images))


def inverse(h: PartitionHom) -> PartitionHom:
    """
    Inverse of a partition isomorphism

    Raises:
        NotAHomomorphismError: h is not a partition isomorphism
    """
    if not is_partition_isomorphism(h):
        raise NotAHomomorphismError("Only partition isomorphisms have inverses")
    logger.debug("inverting %d-element isomorphism", h.table.source.size)
    return PartitionHom(_inverse_table(h.table), h.target, h.source)


def boolean_homs(source: GroundAlgebra, target: GroundAlgebra) -> Iterator[FunctionTable]:
    """
    Every Boolean homomorphism source → target

    A homomorphism sends each target atom into the image of exactly one
    source atom, so there are source.atom_count ** target.atom_count of them.
    """
    for owner in product(range(source.atom_count), repeat=target.atom_count):
        images = tuple(
            mask_from_indices(j for j, i in enumerate(owner) if m >> i & 1)
            for m in range(source.size)
        )
        yield FunctionTable(source, target, images)
