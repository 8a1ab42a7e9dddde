"""Cellular families, partitions and the refinement order"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, List, Sequence, Tuple

from ..bits import is_submask, lowest_bit, mask_to_indices, submasks
from ..errors import AlgebraMismatchError, InvalidInputError, RefinementError, SubcompletenessError
from .base import AlgElement, FunctionTable, GroundAlgebra


def _is_cellular_masks(masks: Sequence[int]) -> bool:
    seen = 0
    for m in masks:
        if m == 0 or seen & m:
            return False
        seen |= m
    return True


@dataclass(frozen=True)
class CellularFamily:
    """Set of nonzero, pairwise disjoint elements; blocks are kept sorted by lowest atom"""
    algebra: GroundAlgebra
    blocks: Tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(sorted(set(self.blocks), key=lowest_bit))
        top = self.algebra.top_mask
        for b in blocks:
            if b & ~top:
                raise InvalidInputError(f"Block {b:#x} is not an element of {self.algebra}")
        if not _is_cellular_masks(blocks):
            raise InvalidInputError(f"{[mask_to_indices(b) for b in blocks]} is not cellular")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_elements(cls, algebra: GroundAlgebra, elements: Iterable[AlgElement]):
        elements = list(elements)
        for e in elements:
            if e.algebra != algebra:
                raise AlgebraMismatchError(f"{e} is not in {algebra}")
        return cls(algebra, tuple(e.mask for e in elements))

    @classmethod
    def from_lists(cls, algebra: GroundAlgebra, blocks: Iterable[Iterable[int]]):
        """Build from atom lists, e.g. [[0, 1], [2, 3]]"""
        return cls(algebra, tuple(algebra.element(b).mask for b in blocks))

    @property
    def join(self) -> int:
        joined = 0
        for b in self.blocks:
            joined |= b
        return joined

    def elements(self) -> List[AlgElement]:
        return [AlgElement(self.algebra, b) for b in self.blocks]

    def block_of(self, atom: int) -> int:
        """Block containing the atom (0 when no block does)"""
        bit = 1 << atom
        for b in self.blocks:
            if b & bit:
                return b
        return 0

    def __len__(self) -> int:
        return len(self.blocks)

    def __contains__(self, mask: int) -> bool:
        return mask in self.blocks

    def to_list(self) -> List[List[int]]:
        return [mask_to_indices(b) for b in self.blocks]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_list()})"


@dataclass(frozen=True, repr=False)
class Partition(CellularFamily):
    """Cellular family whose blocks join to 1"""

    def __post_init__(self):
        super().__post_init__()
        if self.join != self.algebra.top_mask:
            raise InvalidInputError(f"{self.to_list()} does not cover every atom")

    @classmethod
    def top(cls, algebra: GroundAlgebra) -> "Partition":
        """The one-block partition {1}"""
        return cls(algebra, (algebra.top_mask,))

    @classmethod
    def atoms(cls, algebra: GroundAlgebra) -> "Partition":
        """The partition into atoms"""
        return cls(algebra, tuple(1 << i for i in range(algebra.atom_count)))


def is_cellular(family: Iterable[AlgElement]) -> bool:
    """True iff no element is 0 and distinct elements are disjoint"""
    family = list(dict.fromkeys(family))
    if family:
        algebra = family[0].algebra
        if any(e.algebra != algebra for e in family):
            raise AlgebraMismatchError("Family mixes algebras")
    return _is_cellular_masks([e.mask for e in family])


def is_partition(family: Iterable[AlgElement]) -> bool:
    """True iff the family is cellular and its join is 1"""
    family = list(dict.fromkeys(family))
    if not family or not is_cellular(family):
        return False
    joined = 0
    for e in family:
        joined |= e.mask
    return joined == family[0].algebra.top_mask


def extend_to_maximal_cellular(family: CellularFamily) -> Partition:
    """
    Extend a cellular family to a maximal one

    Atoms not covered by the family are added as singleton blocks in
    ascending order; in a finite powerset algebra the result is a partition.
    """
    leftover = family.algebra.top_mask & ~family.join
    extra = tuple(1 << i for i in mask_to_indices(leftover))
    return Partition(family.algebra, family.blocks + extra)


def _same_algebra(a: CellularFamily, b: CellularFamily) -> None:
    if a.algebra != b.algebra:
        raise AlgebraMismatchError(f"Families from different algebras: {a.algebra} vs {b.algebra}")


def _container(block: int, target: Sequence[int]) -> int:
    for t in target:
        if is_submask(block, t):
            return t
    return 0


def refines(a: CellularFamily, b: CellularFamily) -> bool:
    """A ⪯ B: every block of A lies below some block of B"""
    _same_algebra(a, b)
    return all(_container(block, b.blocks) for block in a.blocks)


@dataclass(frozen=True)
class CoarseningMap:
    """φ_{A,B}: each block of the source sent to the unique target block above it"""
    source: CellularFamily
    target: CellularFamily
    assignment: Tuple[int, ...]

    def __call__(self, block: int) -> int:
        try:
            return self.assignment[self.source.blocks.index(block)]
        except ValueError:
            raise InvalidInputError(f"{mask_to_indices(block)} is not a block of {self.source}") from None

    def then(self, other: "CoarseningMap") -> "CoarseningMap":
        """other ∘ self"""
        if self.target != other.source:
            raise RefinementError("Coarsening maps are not composable")
        return CoarseningMap(self.source, other.target, tuple(other(t) for t in self.assignment))

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and self.assignment == self.source.blocks


def coarsening_map(a: CellularFamily, b: CellularFamily) -> CoarseningMap:
    """
    The coarsening map φ_{A,B}

    Raises:
        RefinementError: A does not refine B
    """
    _same_algebra(a, b)
    assignment = []
    for block in a.blocks:
        t = _container(block, b.blocks)
        if not t:
            raise RefinementError(f"{a} does not refine {b}: block {mask_to_indices(block)} has no container")
        assignment.append(t)
    return CoarseningMap(a, b, tuple(assignment))


def meet_partitions(p: Partition, q: Partition) -> Partition:
    """P ∧ Q = {p ∧ q : p ∈ P, q ∈ Q, p ∧ q ≠ 0}"""
    _same_algebra(p, q)
    blocks = {x & y for x in p.blocks for y in q.blocks if x & y}
    return Partition(p.algebra, tuple(blocks))


def meet_all(algebra: GroundAlgebra, partitions: Iterable[Partition]) -> Partition:
    """Meet of finitely many partitions ({1} for none)"""
    result = Partition.top(algebra)
    for p in partitions:
        result = meet_partitions(result, p)
    return result


def _set_partitions(items: Sequence[int]) -> Iterator[List[int]]:
    # Insert the first item into each block of every partition of the rest,
    # or give it a block of its own
    if not items:
        yield []
        return
    first = items[0]
    for smaller in _set_partitions(items[1:]):
        for n, block in enumerate(smaller):
            yield smaller[:n] + [first | block] + smaller[n + 1:]
        yield [first] + smaller


@lru_cache(maxsize=None)
def _partition_masks(atom_count: int) -> Tuple[Tuple[int, ...], ...]:
    atoms = [1 << i for i in range(atom_count)]
    return tuple(tuple(blocks) for blocks in _set_partitions(atoms))


def all_partitions(algebra: GroundAlgebra) -> List[Partition]:
    """Every partition of the algebra (Bell(atom_count) of them)"""
    return [Partition(algebra, blocks) for blocks in _partition_masks(algebra.atom_count)]


def coarsenings(p: Partition) -> Iterator[Partition]:
    """Every partition Q with P ⪯ Q"""
    for blocks in _set_partitions(list(p.blocks)):
        yield Partition(p.algebra, tuple(blocks))


def all_cellular_families(algebra: GroundAlgebra) -> List[CellularFamily]:
    """Every cellular family: partitions of each subset of the atoms"""
    families = []
    for support in submasks(algebra.top_mask):
        atoms = [1 << i for i in mask_to_indices(support)]
        for blocks in _set_partitions(atoms):
            families.append(CellularFamily(algebra, tuple(blocks)))
    return families


def join_of_blocks_below(p: CellularFamily, element: int) -> int:
    """∨{a ∈ p : a ≤ element}"""
    joined = 0
    for a in p.blocks:
        if is_submask(a, element):
            joined |= a
    return joined


def is_subcomplete(p) -> bool:
    """
    True iff every subset of the partition's blocks has a join

    Finite powerset algebras have every join. Tree-model partitions answer
    through their own closure rule.
    """
    if isinstance(p, CellularFamily):
        return True
    return p.is_subcomplete()


def subcomplete_embedding(a: Partition) -> FunctionTable:
    """
    The map R ↦ ∨R from the powerset of A's blocks into the algebra

    Returns:
        FunctionTable whose source atoms are A's blocks in order

    Raises:
        SubcompletenessError: A is not subcomplete
    """
    if not is_subcomplete(a):
        raise SubcompletenessError(f"{a} is not subcomplete")
    source = GroundAlgebra(len(a.blocks))

    def join_of(selection: int) -> int:
        joined = 0
        for i in mask_to_indices(selection):
            joined |= a.blocks[i]
        return joined

    return FunctionTable.from_callable(source, a.algebra, join_of)
