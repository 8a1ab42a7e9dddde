"""Finite Boolean algebras presented by their atoms"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Callable, Dict, FrozenSet, Iterable, Iterator, List, Sequence, Set, Tuple

from ..bits import full_mask, is_submask, lowest_bit, mask_from_indices, mask_to_indices
from ..config import ATOM_CAP
from ..errors import AlgebraMismatchError, InvalidInputError


@dataclass(frozen=True)
class GroundAlgebra:
    """Powerset Boolean algebra over the atoms 0..atom_count-1"""
    atom_count: int

    def __post_init__(self):
        if isinstance(self.atom_count, bool) or not isinstance(self.atom_count, int) or not 1 <= self.atom_count <= ATOM_CAP:
            raise InvalidInputError(
                f"atom_count must be an integer in [1, {ATOM_CAP}], got {self.atom_count!r}"
            )

    @property
    def top_mask(self) -> int:
        return full_mask(self.atom_count)

    @property
    def size(self) -> int:
        """Number of elements (2^atom_count)"""
        return 1 << self.atom_count

    @property
    def zero(self) -> "AlgElement":
        return AlgElement(self, 0)

    @property
    def one(self) -> "AlgElement":
        return AlgElement(self, self.top_mask)

    def atom(self, index: int) -> "AlgElement":
        return self.element([index])

    def element(self, atoms: Iterable[int]) -> "AlgElement":
        """Element from a collection of atom labels"""
        atoms = list(atoms)
        for a in atoms:
            if not isinstance(a, int) or not 0 <= a < self.atom_count:
                raise InvalidInputError(f"Atom {a!r} outside 0..{self.atom_count - 1}")
        return AlgElement(self, mask_from_indices(atoms))

    def from_mask(self, mask: int) -> "AlgElement":
        if mask < 0 or mask & ~self.top_mask:
            raise InvalidInputError(f"Mask {mask:#x} is not an element of {self}")
        return AlgElement(self, mask)

    def elements(self) -> Iterator["AlgElement"]:
        """Every element, ordered by mask"""
        for mask in range(self.size):
            yield AlgElement(self, mask)

    def to_dict(self) -> Dict[str, Any]:
        return {"atoms": self.atom_count}


@dataclass(frozen=True)
class AlgElement:
    """An element of a GroundAlgebra, encoded as the bitmask of its atoms"""
    algebra: GroundAlgebra
    mask: int

    @property
    def member_atoms(self) -> List[int]:
        return mask_to_indices(self.mask)

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    @property
    def is_one(self) -> bool:
        return self.mask == self.algebra.top_mask

    def meet(self, other: "AlgElement") -> "AlgElement":
        return element_meet(self, other)

    def join(self, other: "AlgElement") -> "AlgElement":
        return element_join(self, other)

    def complement(self) -> "AlgElement":
        return element_complement(self)

    def leq(self, other: "AlgElement") -> bool:
        return element_leq(self, other)

    __and__ = meet
    __or__ = join
    __invert__ = complement

    def to_list(self) -> List[int]:
        return self.member_atoms

    def __repr__(self) -> str:
        return f"AlgElement({self.member_atoms})"


def _same_algebra(x: AlgElement, y: AlgElement) -> GroundAlgebra:
    if x.algebra != y.algebra:
        raise AlgebraMismatchError(f"Elements from different algebras: {x.algebra} vs {y.algebra}")
    return x.algebra


def element_meet(x: AlgElement, y: AlgElement) -> AlgElement:
    """x ∧ y (atomwise intersection)"""
    algebra = _same_algebra(x, y)
    return AlgElement(algebra, x.mask & y.mask)


def element_join(x: AlgElement, y: AlgElement) -> AlgElement:
    """x ∨ y (atomwise union)"""
    algebra = _same_algebra(x, y)
    return AlgElement(algebra, x.mask | y.mask)


def element_complement(x: AlgElement) -> AlgElement:
    """x' (atomwise complement)"""
    return AlgElement(x.algebra, x.algebra.top_mask ^ x.mask)


def element_leq(x: AlgElement, y: AlgElement) -> bool:
    """x ≤ y"""
    _same_algebra(x, y)
    return is_submask(x.mask, y.mask)


@dataclass(frozen=True)
class FunctionTable:
    """
    Total function between two ground algebras

    `images[m]` is the mask of the image of the source element with mask `m`.
    """
    source: GroundAlgebra
    target: GroundAlgebra
    images: Tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.size:
            raise InvalidInputError(
                f"Function table has {len(self.images)} entries, source has {self.source.size} elements"
            )
        top = self.target.top_mask
        for m in self.images:
            if m < 0 or m & ~top:
                raise InvalidInputError(f"Image mask {m:#x} is not an element of {self.target}")

    @classmethod
    def from_callable(
        cls,
        source: GroundAlgebra,
        target: GroundAlgebra,
        fn: Callable[[int], int]
    ) -> "FunctionTable":
        """Tabulate a mask-to-mask function"""
        return cls(source, target, tuple(fn(m) for m in range(source.size)))

    @classmethod
    def from_pairs(
        cls,
        source: GroundAlgebra,
        target: GroundAlgebra,
        pairs: Iterable[Tuple[AlgElement, AlgElement]]
    ) -> "FunctionTable":
        """
        Build a table from (input, output) pairs

        Raises:
            InvalidInputError: an input is missing or listed twice
        """
        images: Dict[int, int] = {}
        for x, y in pairs:
            if x.algebra != source or y.algebra != target:
                raise AlgebraMismatchError("Pair element outside the declared algebras")
            if x.mask in images:
                raise InvalidInputError(f"Input {x.member_atoms} listed twice")
            images[x.mask] = y.mask
        if len(images) != source.size:
            missing = [mask_to_indices(m) for m in range(source.size) if m not in images]
            raise InvalidInputError(f"Function table is not total, missing inputs {missing[:4]}")
        return cls(source, target, tuple(images[m] for m in range(source.size)))

    @classmethod
    def identity(cls, algebra: GroundAlgebra) -> "FunctionTable":
        return cls(algebra, algebra, tuple(range(algebra.size)))

    def __call__(self, x: AlgElement) -> AlgElement:
        if x.algebra != self.source:
            raise AlgebraMismatchError(f"{x} is not in the source algebra {self.source}")
        return AlgElement(self.target, self.images[x.mask])

    def apply(self, mask: int) -> int:
        return self.images[mask]

    def then(self, other: "FunctionTable") -> "FunctionTable":
        """other ∘ self"""
        if self.target != other.source:
            raise AlgebraMismatchError(f"Cannot compose: {self.target} is not {other.source}")
        return FunctionTable(self.source, other.target, tuple(other.images[m] for m in self.images))

    def image(self, masks: Iterable[int]) -> Set[int]:
        """f''(A) as a set of masks"""
        return {self.images[m] for m in masks}

    def preimage(self, masks: Iterable[int]) -> Set[int]:
        """f_{-1}(B) as a set of masks"""
        wanted = set(masks)
        return {m for m, y in enumerate(self.images) if y in wanted}

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.source.atom_count == self.target.atom_count

    def pairs(self) -> List[Tuple[AlgElement, AlgElement]]:
        return [(AlgElement(self.source, m), AlgElement(self.target, y)) for m, y in enumerate(self.images)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "pairs": [[mask_to_indices(m), mask_to_indices(y)] for m, y in enumerate(self.images)],
        }


def all_function_tables(source: GroundAlgebra, target: GroundAlgebra) -> Iterator[FunctionTable]:
    """Every total table source → target (target.size ** source.size of them)"""
    for images in product(range(target.size), repeat=source.size):
        yield FunctionTable(source, target, images)


@dataclass(frozen=True)
class ExtendedPartition:
    """Indexed family whose entries join to 1 and are pairwise disjoint across indices"""
    algebra: GroundAlgebra
    entries: Tuple[int, ...]

    def __post_init__(self):
        if not _is_extended_masks(self.algebra.top_mask, self.entries):
            raise InvalidInputError(f"{[mask_to_indices(e) for e in self.entries]} is not an extended partition")

    @classmethod
    def from_elements(cls, entries: Sequence[AlgElement]) -> "ExtendedPartition":
        algebra = _common_algebra(entries)
        return cls(algebra, tuple(e.mask for e in entries))

    def elements(self) -> List[AlgElement]:
        return [AlgElement(self.algebra, e) for e in self.entries]


def _common_algebra(entries: Sequence[AlgElement]) -> GroundAlgebra:
    if not entries:
        raise InvalidInputError("An extended partition needs at least one entry")
    algebra = entries[0].algebra
    for e in entries[1:]:
        if e.algebra != algebra:
            raise AlgebraMismatchError("Entries from different algebras")
    return algebra


def _is_extended_masks(top: int, entries: Sequence[int]) -> bool:
    seen = 0
    for e in entries:
        if seen & e:
            return False
        seen |= e
    return seen == top


def is_extended_partition(entries: Sequence[AlgElement]) -> bool:
    """True iff the entries join to 1 and distinct-index entries meet to 0"""
    algebra = _common_algebra(entries)
    return _is_extended_masks(algebra.top_mask, [e.mask for e in entries])


@lru_cache(maxsize=None)
def _extended_triple_masks(atom_count: int) -> Tuple[Tuple[int, int, int], ...]:
    # Each atom goes to exactly one of the three slots
    triples = []
    for slots in product(range(3), repeat=atom_count):
        parts = [0, 0, 0]
        for atom, slot in enumerate(slots):
            parts[slot] |= 1 << atom
        triples.append(tuple(parts))
    return tuple(triples)


def extended_triples(algebra: GroundAlgebra) -> Iterator[ExtendedPartition]:
    """Every extended partition (a, b, c) of the algebra"""
    for triple in _extended_triple_masks(algebra.atom_count):
        yield ExtendedPartition(algebra, triple)


def is_boolean_homomorphism(f: FunctionTable) -> bool:
    """Direct check: f preserves 0, 1, complement, meet and join"""
    images = f.images
    top_s = f.source.top_mask
    top_t = f.target.top_mask
    if images[0] != 0 or images[top_s] != top_t:
        return False
    size = f.source.size
    for a in range(size):
        if images[top_s ^ a] != top_t ^ images[a]:
            return False
    for a in range(size):
        fa = images[a]
        for b in range(a + 1, size):
            fb = images[b]
            if images[a & b] != fa & fb or images[a | b] != fa | fb:
                return False
    return True


def hom_via_triples(f: FunctionTable) -> bool:
    """True iff f maps every extended triple of the source to an extended triple of the target"""
    images = f.images
    top_t = f.target.top_mask
    for a, b, c in _extended_triple_masks(f.source.atom_count):
        fa, fb, fc = images[a], images[b], images[c]
        if fa & fb or fa & fc or fb & fc or (fa | fb | fc) != top_t:
            return False
    return True


def normalize_subalgebra(parent: GroundAlgebra, members: Iterable[int]) -> Tuple[GroundAlgebra, Tuple[int, ...]]:
    """
    Present a finite subalgebra of `parent` as the powerset of its atoms

    Args:
        parent: Ambient algebra
        members: Masks of the subalgebra's elements

    Returns:
        (algebra on the subalgebra's atoms, parent mask of each atom);
        atoms are ordered by their lowest parent atom

    Raises:
        InvalidInputError: members do not form a subalgebra
    """
    pool: FrozenSet[int] = frozenset(members) | {0}
    top = parent.top_mask
    if top not in pool:
        raise InvalidInputError("Subalgebra must contain 1")

    # The atom below parent atom i is the meet of every member containing i
    atoms: Set[int] = set()
    for i in range(parent.atom_count):
        bit = 1 << i
        meet = top
        for m in pool:
            if m & bit:
                meet &= m
        atoms.add(meet)

    ordered = sorted(atoms, key=lowest_bit)
    covered = 0
    for a in ordered:
        if covered & a:
            raise InvalidInputError("Members are not closed under meet")
        covered |= a
    if len(pool) != 1 << len(ordered):
        raise InvalidInputError(
            f"{len(pool)} members cannot be the powerset of {len(ordered)} atoms"
        )
    for m in pool:
        if m != _union_below(ordered, m):
            raise InvalidInputError(f"Member {mask_to_indices(m)} is not a union of atoms")
    return GroundAlgebra(len(ordered)), tuple(ordered)


def _union_below(atoms: Sequence[int], mask: int) -> int:
    union = 0
    for a in atoms:
        if a & ~mask == 0:
            union |= a
    return union
