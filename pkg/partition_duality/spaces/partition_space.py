"""Partition spaces: finite point sets with a filter of crevasses"""
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

from ..algebra.base import GroundAlgebra
from ..algebra.partition_algebra import (
    BooleanPartitionAlgebra,
    FUltrafilter,
    InverseLimitPoint,
    PartitionFilter,
    coherent_selections,
    induced_bpa,
)
from ..algebra.partitions import Partition, all_partitions
from ..bits import mask_from_indices
from ..config import ATOM_CAP
from ..errors import InvalidInputError, MorphismMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PartitionSpace:
    """
    Points 0..points-1 with crevasses given by generating partitions

    Subsets of the points are the elements of GroundAlgebra(points), point i
    being atom i. The space with no points has no algebra. Spaces with the same
    points and the same least crevasse are equal.
    """
    points: int
    crevasses: Tuple[Partition, ...] = ()

    def __post_init__(self):
        if isinstance(self.points, bool) or not isinstance(self.points, int) or not 0 <= self.points <= ATOM_CAP:
            raise InvalidInputError(f"points must be an integer in [0, {ATOM_CAP}], got {self.points!r}")
        if self.points == 0:
            if self.crevasses:
                raise InvalidInputError("The empty space has no crevasses")
            return
        # Canonical generator tuple, {X} when none are given
        generators = PartitionFilter(GroundAlgebra(self.points), tuple(self.crevasses)).generators
        object.__setattr__(self, "crevasses", generators)

    @classmethod
    def empty(cls) -> "PartitionSpace":
        return cls(0)

    def _key(self) -> Tuple[int, Optional[Partition]]:
        return (self.points, None if self.is_empty else self.crevasse_filter.base)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartitionSpace):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @classmethod
    def from_lists(cls, points: int, crevasses: Iterable[Iterable[Iterable[int]]]) -> "PartitionSpace":
        """Build from block lists, e.g. from_lists(4, [[[0, 1], [2, 3]]])"""
        if points == 0:
            return cls(points)
        algebra = GroundAlgebra(points)
        return cls(points, tuple(Partition.from_lists(algebra, p) for p in crevasses))

    @property
    def is_empty(self) -> bool:
        return self.points == 0

    @property
    def algebra(self) -> GroundAlgebra:
        """Powerset algebra of the points"""
        if self.is_empty:
            raise InvalidInputError("The empty space has no powerset algebra")
        return GroundAlgebra(self.points)

    @cached_property
    def crevasse_filter(self) -> PartitionFilter:
        return PartitionFilter(self.algebra, self.crevasses)

    @cached_property
    def induced(self) -> BooleanPartitionAlgebra:
        """({∅} ∪ ∪M, M), with atoms recorded as point sets"""
        return induced_bpa(self.algebra, self.crevasse_filter)

    def block_of(self, point: int, crevasse: Partition) -> int:
        """Mask of the crevasse block containing the point"""
        self._check_point(point)
        return crevasse.block_of(point)

    def _check_point(self, point: int) -> None:
        if not isinstance(point, int) or not 0 <= point < self.points:
            raise InvalidInputError(f"Point {point!r} outside 0..{self.points - 1}")

    def to_dict(self) -> Dict[str, Any]:
        return {"points": self.points, "crevasses": [p.to_list() for p in self.crevasses]}


@dataclass(frozen=True)
class UniformMap:
    """Total point map between partition spaces; table[x] is the image of x"""
    source: PartitionSpace
    target: PartitionSpace
    table: Tuple[int, ...]

    def __post_init__(self):
        table = tuple(self.table)
        if len(table) != self.source.points:
            raise InvalidInputError(
                f"Map table has {len(table)} entries, source has {self.source.points} points"
            )
        for y in table:
            if not isinstance(y, int) or not 0 <= y < self.target.points:
                raise InvalidInputError(f"Image {y!r} is not a point of the target")
        object.__setattr__(self, "table", table)

    def __call__(self, point: int) -> int:
        self.source._check_point(point)
        return self.table[point]

    def preimage(self, mask: int) -> int:
        """f_{-1}(R) for a target point set R"""
        return mask_from_indices(x for x, y in enumerate(self.table) if mask >> y & 1)

    @property
    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    @property
    def is_surjective(self) -> bool:
        return set(self.table) == set(range(self.target.points))

    def to_dict(self) -> Dict[str, Any]:
        return {"source": self.source.to_dict(), "target": self.target.to_dict(), "table": list(self.table)}


def is_separating(space: PartitionSpace) -> bool:
    """True iff the meet of the crevasses is the partition into points"""
    if space.is_empty:
        return True
    return space.crevasse_filter.base == Partition.atoms(space.algebra)


def pull_back_partition(f: UniformMap, q: Partition) -> Partition:
    """{f_{-1}(R) : R ∈ Q} \\ {∅}"""
    blocks = {f.preimage(r) for r in q.blocks} - {0}
    return Partition(f.source.algebra, tuple(blocks))


def is_uniformly_continuous(f: UniformMap) -> bool:
    """
    True iff {f_{-1}(R) : R ∈ Q} \\ {∅} is a crevasse of the source for every
    crevasse Q of the target

    Preimages of coarsenings coarsen the preimage of the least crevasse, so
    the target's generators and least crevasse decide.
    """
    if f.source.is_empty:
        return True
    target = f.target.crevasse_filter
    checked = set(target.generators) | {target.base}
    return all(f.source.crevasse_filter.contains(pull_back_partition(f, q)) for q in checked)


def coherent_points(space: PartitionSpace) -> List[InverseLimitPoint]:
    """Every coherent crevasse-block selection"""
    if space.is_empty:
        return []
    return coherent_selections(space.crevasse_filter)


def realized_by(space: PartitionSpace, point: InverseLimitPoint) -> int:
    """Mask of the points lying in every selected block"""
    meet = space.algebra.top_mask
    for _, block in point.choices:
        meet &= block
    return meet


def is_complete(space: PartitionSpace) -> bool:
    """Separating, and every coherent point is realized by some point of the space"""
    if not is_separating(space):
        return False
    return all(realized_by(space, x) for x in coherent_points(space))


def c_map(space: PartitionSpace, point: int) -> FUltrafilter:
    """
    𝒞(x): the induced-algebra elements containing x

    Raises:
        InvalidInputError: the point is not in the space
    """
    space._check_point(point)
    bpa = space.induced
    for i, atom in enumerate(bpa.parent_atoms):
        if atom >> point & 1:
            return FUltrafilter(bpa.algebra, i)
    raise InvalidInputError(f"Point {point} lies in no induced atom")


def compose_maps(f: UniformMap, g: UniformMap) -> UniformMap:
    """
    g ∘ f

    Raises:
        MorphismMismatchError: g's source is not f's target
    """
    if f.target != g.source:
        raise MorphismMismatchError("Cannot compose: spaces do not match")
    return UniformMap(f.source, g.target, tuple(g.table[y] for y in f.table))


def identity_map(space: PartitionSpace) -> UniformMap:
    return UniformMap(space, space, tuple(range(space.points)))


def principal_spaces(points: int) -> List[PartitionSpace]:
    """One space per partition of the points, generated by that partition"""
    if points == 0:
        return [PartitionSpace.empty()]
    return [PartitionSpace(points, (p,)) for p in all_partitions(GroundAlgebra(points))]


def all_point_maps(source: PartitionSpace, target: PartitionSpace) -> Iterator[UniformMap]:
    """Every total point map source → target"""
    for table in product(range(target.points), repeat=source.points):
        yield UniformMap(source, target, table)


def uniform_maps(source: PartitionSpace, target: PartitionSpace) -> List[UniformMap]:
    return [f for f in all_point_maps(source, target) if is_uniformly_continuous(f)]


def cauchy_complete(space: PartitionSpace) -> bool:
    """
    Completeness through Cauchy filters, for small spaces

    A filter of point sets is Cauchy when it contains a block of every
    crevasse. Every such filter must converge: some point has each of its
    crevasse blocks in the filter. Filters on a finite set are principal,
    so the nonempty point sets stand in for them.
    """
    if space.is_empty:
        return True
    if not is_separating(space):
        return False
    algebra = space.algebra
    witnesses = space.crevasse_filter.witnesses()
    for generator in range(1, algebra.size):
        # The principal filter of `generator` holds every superset
        cauchy = all(
            any(generator & ~block == 0 for block in p.blocks) for p in witnesses
        )
        if not cauchy:
            continue
        converges = any(
            all(generator & ~p.block_of(x) == 0 for p in witnesses)
            for x in range(space.points)
        )
        if not converges:
            logger.debug("Cauchy filter at %s does not converge", generator)
            return False
    return True
