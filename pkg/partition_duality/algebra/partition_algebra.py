"""Boolean partition algebras, F-ultrafilters and inverse limits"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from itertools import product
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union

from ..bits import mask_to_indices, popcount, submasks
from ..config import EXHAUSTIVE_BLOCK_LIMIT
from ..errors import (
    AlgebraMismatchError,
    CoherenceError,
    InvalidInputError,
    NotAnFUltrafilterError,
    ValidityError,
)
from .base import AlgElement, FunctionTable, GroundAlgebra, normalize_subalgebra
from .partitions import (
    CellularFamily,
    Partition,
    all_partitions,
    coarsening_map,
    coarsenings,
    is_subcomplete,
    meet_all,
    refines,
)

logger = logging.getLogger(__name__)


class PartitionBound(Enum):
    """Which partitions P_λ(B) keeps: those with fewer than ω blocks, or all"""
    FINITE = "finite"
    ALL = "all"


def _partition_key(p: CellularFamily) -> Tuple[int, Tuple[int, ...]]:
    return (-len(p.blocks), p.blocks)


@dataclass(frozen=True, eq=False)
class PartitionFilter:
    """
    Filter on the partition lattice, presented by generators

    A partition is a member iff the meet of the generators refines it.
    With no generators the filter is {{1}}. Two presentations with the
    same least member are the same filter and compare equal.
    """
    algebra: GroundAlgebra
    generators: Tuple[Partition, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators) or (Partition.top(self.algebra),)
        for g in gens:
            if not isinstance(g, Partition):
                raise InvalidInputError(f"Filter generator {g!r} is not a partition")
            if g.algebra != self.algebra:
                raise AlgebraMismatchError(f"Generator {g} is not a partition of {self.algebra}")
        object.__setattr__(self, "generators", tuple(sorted(set(gens), key=_partition_key)))

    @cached_property
    def base(self) -> Partition:
        """Least member: the meet of the generators"""
        return meet_all(self.algebra, self.generators)

    def _key(self) -> Tuple[GroundAlgebra, Partition]:
        return (self.algebra, self.base)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartitionFilter):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def contains(self, p: Partition) -> bool:
        return refines(self.base, p)

    def members(self) -> Iterator[Partition]:
        """Every member, i.e. every coarsening of the least member"""
        return coarsenings(self.base)

    @property
    def exhaustive(self) -> bool:
        """Whether member-quantified checks enumerate every member"""
        return len(self.base) <= EXHAUSTIVE_BLOCK_LIMIT

    @cached_property
    def _witnesses(self) -> Tuple[Partition, ...]:
        if self.exhaustive:
            return tuple(sorted(self.members(), key=_partition_key))
        return tuple(sorted(set(self.generators) | {self.base}, key=_partition_key))

    def witnesses(self) -> List[Partition]:
        """Members a quantified check looks at: all of them, or generators plus the least member"""
        return list(self._witnesses)

    def member_blocks(self) -> Set[int]:
        """
        Elements lying in some member (∪F)

        Beyond the exhaustive limit this uses the fact that a nonzero union u of
        least-member blocks lies in the member {u, u'} (or {1}).
        """
        if self.exhaustive:
            blocks: Set[int] = set()
            for p in self.members():
                blocks.update(p.blocks)
            return blocks
        base = self.base.blocks
        unions = set()
        for selection in submasks((1 << len(base)) - 1):
            if selection:
                unions.add(_union_of(base, selection))
        return unions

    def to_list(self) -> List[List[List[int]]]:
        return [g.to_list() for g in self.generators]


def _union_of(blocks: Sequence[int], selection: int) -> int:
    joined = 0
    for i in mask_to_indices(selection):
        joined |= blocks[i]
    return joined


def _is_union_of_blocks(blocks: Sequence[int], mask: int) -> bool:
    return all(b & ~mask == 0 or b & mask == 0 for b in blocks)


def filter_from_generators(algebra: GroundAlgebra, generators: Iterable[CellularFamily]) -> PartitionFilter:
    """
    Filter generated by finitely many partitions

    Raises:
        InvalidInputError: a generator is not a partition of the algebra
    """
    return PartitionFilter(algebra, tuple(generators))


def filter_contains(f: PartitionFilter, p: Partition) -> bool:
    """True iff the meet of the generators refines P"""
    return f.contains(p)


@dataclass(frozen=True)
class BooleanPartitionAlgebra:
    """
    Algebra paired with a filter of partitions

    Invalid candidates (missing some {b, b'}) are representable; see
    validate_bpa. `parent_atoms` records, for an induced algebra, the
    parent-algebra mask of each atom.
    """
    algebra: GroundAlgebra
    filter: PartitionFilter
    parent: Optional[GroundAlgebra] = None
    parent_atoms: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.filter.algebra != self.algebra:
            raise AlgebraMismatchError("Filter lives on a different algebra")
        if (self.parent is None) != (self.parent_atoms is None):
            raise InvalidInputError("parent and parent_atoms are given together")
        if self.parent_atoms is not None:
            atoms = tuple(self.parent_atoms)
            if len(atoms) != self.algebra.atom_count:
                raise InvalidInputError("parent_atoms must list one parent mask per atom")
            covered = 0
            for a in atoms:
                if a == 0 or covered & a or a & ~self.parent.top_mask:
                    raise InvalidInputError("parent_atoms must be disjoint nonzero parent elements")
                covered |= a
            if covered != self.parent.top_mask:
                raise InvalidInputError("parent_atoms must cover the parent algebra")
            object.__setattr__(self, "parent_atoms", atoms)

    @property
    def subcomplete_flag(self) -> bool:
        """Every member subcomplete; by upward closure the least member decides"""
        return is_subcomplete(self.filter.base)

    @property
    def is_valid(self) -> bool:
        """{b, b'} ∈ F for every b ∉ {0, 1}"""
        return validate_bpa(self, pair_only=True).pair_condition

    def to_parent(self, mask: int) -> int:
        """Parent-algebra mask of an element (identity when not induced)"""
        if self.parent_atoms is None:
            return mask
        return _union_of(self.parent_atoms, mask)

    def from_parent(self, parent_mask: int) -> int:
        """
        Element of this algebra with the given parent mask

        Raises:
            InvalidInputError: the parent element is not in the subalgebra
        """
        if self.parent_atoms is None:
            return self.algebra.from_mask(parent_mask).mask
        if not _is_union_of_blocks(self.parent_atoms, parent_mask):
            raise InvalidInputError(f"{mask_to_indices(parent_mask)} is not in the induced subalgebra")
        return sum(1 << i for i, a in enumerate(self.parent_atoms) if a & parent_mask)

    def to_dict(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {"algebra": self.algebra.to_dict(), "generators": self.filter.to_list()}
        if self.parent is not None:
            record["parent"] = self.parent.to_dict()
            record["parent_atoms"] = [mask_to_indices(a) for a in self.parent_atoms]
        return record


@dataclass(frozen=True)
class BPAValidity:
    """The three equivalent conditions for a filter to make a Boolean partition algebra"""
    pair_condition: bool
    cover_condition: bool
    finite_partition_condition: bool

    @property
    def all_true(self) -> bool:
        return self.pair_condition and self.cover_condition and self.finite_partition_condition

    @property
    def all_equal(self) -> bool:
        return self.pair_condition == self.cover_condition == self.finite_partition_condition

    def to_dict(self) -> Dict[str, bool]:
        return {
            "pair_condition": self.pair_condition,
            "cover_condition": self.cover_condition,
            "finite_partition_condition": self.finite_partition_condition,
        }


def validate_bpa(bpa: BooleanPartitionAlgebra, pair_only: bool = False) -> BPAValidity:
    """
    Evaluate the three conditions independently

    1. {b, b'} ∈ F for every b ∉ {0, 1}
    2. every b ≠ 0 lies in some member of F
    3. F contains every finite partition

    Args:
        bpa: Candidate algebra
        pair_only: Only evaluate condition 1 (the others are reported False)
    """
    algebra = bpa.algebra
    f = bpa.filter
    top = algebra.top_mask
    base = f.base.blocks

    pair = all(_is_union_of_blocks(base, b) for b in range(1, top))
    if pair_only:
        return BPAValidity(pair, False, False)

    blocks = f.member_blocks()
    cover = all(b in blocks for b in range(1, top + 1))

    if f.exhaustive and algebra.atom_count <= EXHAUSTIVE_BLOCK_LIMIT:
        finite = all(f.contains(p) for p in all_partitions(algebra))
    else:
        # The atom partition is finite, and every partition coarsens it
        finite = f.contains(Partition.atoms(algebra))
    return BPAValidity(pair, cover, finite)


@lru_cache(maxsize=None)
def make_full_bpa(algebra: GroundAlgebra, bound: Union[PartitionBound, str] = PartitionBound.FINITE) -> BooleanPartitionAlgebra:
    """
    (B, P_λ(B)) for λ = ω ("finite") or the collection of all partitions ("all")

    In a finite algebra both choices give every partition.
    """
    try:
        PartitionBound(bound)
    except ValueError:
        raise InvalidInputError(f"Unknown partition bound {bound!r}") from None
    return BooleanPartitionAlgebra(algebra, PartitionFilter(algebra, (Partition.atoms(algebra),)))


def induced_bpa(algebra: GroundAlgebra, f: PartitionFilter) -> BooleanPartitionAlgebra:
    """
    The Boolean partition algebra ({0} ∪ ∪F, F), normalized to its atoms

    Args:
        algebra: Ambient algebra B
        f: Any filter on the partitions of B

    Returns:
        BooleanPartitionAlgebra whose parent_atoms map back into B
    """
    if f.algebra != algebra:
        raise AlgebraMismatchError("Filter lives on a different algebra")
    sub, atoms = normalize_subalgebra(algebra, f.member_blocks() | {0})
    logger.debug("induced algebra: %d atoms inside %d", sub.atom_count, algebra.atom_count)

    def translate(p: Partition) -> Partition:
        return Partition(sub, tuple(
            sum(1 << i for i, a in enumerate(atoms) if a & block) for block in p.blocks
        ))

    return BooleanPartitionAlgebra(sub, PartitionFilter(sub, (translate(f.base),)), parent=algebra, parent_atoms=atoms)


class SpectrumPoint(ABC):
    """A point of S*(B, F): an ultrafilter meeting every filter member once"""

    @abstractmethod
    def contains(self, element: Any) -> bool:
        """Membership of an algebra element"""
        pass

    @property
    @abstractmethod
    def label(self) -> str:
        """Canonical label used when the spectrum becomes a space"""
        pass


@dataclass(frozen=True)
class FUltrafilter(SpectrumPoint):
    """Ultrafilter of a finite algebra, principal at `atom`"""
    algebra: GroundAlgebra
    atom: int

    def __post_init__(self):
        if not 0 <= self.atom < self.algebra.atom_count:
            raise InvalidInputError(f"Atom {self.atom} outside {self.algebra}")

    def contains(self, element: Union[AlgElement, int]) -> bool:
        if isinstance(element, AlgElement):
            if element.algebra != self.algebra:
                raise AlgebraMismatchError(f"{element} is not in {self.algebra}")
            element = element.mask
        return bool(element >> self.atom & 1)

    def choice(self, p: CellularFamily) -> int:
        """The block of P in the ultrafilter (0 if none)"""
        return p.block_of(self.atom)

    def member_masks(self) -> List[int]:
        return [m for m in range(self.algebra.size) if m >> self.atom & 1]

    @property
    def label(self) -> str:
        return f"u{self.atom}"

    def to_dict(self) -> Dict[str, Any]:
        return {"atom": self.atom}


def _meets_once(point: SpectrumPoint, p: CellularFamily) -> bool:
    return sum(1 for b in p.blocks if point.contains(b)) == 1


@lru_cache(maxsize=4096)
def _f_ultrafilters(bpa: BooleanPartitionAlgebra) -> Tuple[FUltrafilter, ...]:
    # Ultrafilters of a finite algebra are principal at its atoms
    candidates = [FUltrafilter(bpa.algebra, i) for i in range(bpa.algebra.atom_count)]
    witnesses = bpa.filter.witnesses()
    return tuple(u for u in candidates if all(_meets_once(u, p) for p in witnesses))


def enumerate_f_ultrafilters(bpa: BooleanPartitionAlgebra) -> List[FUltrafilter]:
    """
    S*(B, F) (also written S_F(B)), sorted by atom

    Raises:
        ValidityError: the candidate is not a Boolean partition algebra
    """
    if not bpa.is_valid:
        raise ValidityError(f"Not a Boolean partition algebra: {bpa.to_dict()}")
    return list(_f_ultrafilters(bpa))


def brute_force_ultrafilters(algebra: GroundAlgebra) -> List[FrozenSet[int]]:
    """
    Every ultrafilter of the algebra, found from the axioms alone

    An ultrafilter picks one side of each pair {b, b'}; each such choice is
    kept when it contains 1 and is upward closed and closed under meets.
    """
    top = algebra.top_mask
    high = 1 << (algebra.atom_count - 1)
    # One representative per complementary pair, excluding {0, 1}
    reps = [b for b in range(1, top) if not b & high]
    found = []
    for sides in product((False, True), repeat=len(reps)):
        chosen = {top}
        for b, flip in zip(reps, sides):
            chosen.add(top ^ b if flip else b)
        if _is_ultrafilter(chosen, algebra):
            found.append(frozenset(chosen))
    return found


def _is_ultrafilter(members: Set[int], algebra: GroundAlgebra) -> bool:
    if 0 in members or algebra.top_mask not in members:
        return False
    for a in members:
        for b in members:
            if a & b not in members:
                return False
        for sup in range(algebra.size):
            if a & ~sup == 0 and sup not in members:
                return False
    return True


@dataclass(frozen=True)
class InverseLimitPoint:
    """
    Block selection P ↦ x_P on some filter members

    Selections on other members follow by coarsening maps from a finer
    selected member.
    """
    filter: PartitionFilter
    choices: Tuple[Tuple[Partition, int], ...]

    @classmethod
    def from_mapping(cls, f: PartitionFilter, mapping: Mapping[Partition, int]) -> "InverseLimitPoint":
        return cls(f, tuple(sorted(mapping.items(), key=lambda kv: _partition_key(kv[0]))))

    @property
    def selection(self) -> Dict[Partition, int]:
        return dict(self.choices)

    def at(self, p: Partition) -> int:
        """
        Projection π_P

        Raises:
            CoherenceError: no selected member refines P
        """
        selection = self.selection
        if p in selection:
            return selection[p]
        for q, block in self.choices:
            if refines(q, p):
                return coarsening_map(q, p)(block)
        raise CoherenceError(f"Selection does not determine a block of {p}")

    def coherence_failures(self) -> List[Tuple[Partition, Partition]]:
        """Pairs P ⪯ Q whose selections disagree"""
        failures = []
        for p, x in self.choices:
            for q, y in self.choices:
                if p != q and refines(p, q) and coarsening_map(p, q)(x) != y:
                    failures.append((p, q))
        return failures

    def check_coherent(self) -> None:
        """
        Raises:
            CoherenceError: a selected block is not in its partition, a
                partition is not a member, or the selection is incoherent
        """
        for p, x in self.choices:
            if not self.filter.contains(p):
                raise CoherenceError(f"{p} is not a filter member")
            if x not in p.blocks:
                raise CoherenceError(f"{mask_to_indices(x)} is not a block of {p}")
        failures = self.coherence_failures()
        if failures:
            p, q = failures[0]
            raise CoherenceError(f"Selections on {p} and {q} are incoherent")

    @property
    def is_coherent(self) -> bool:
        try:
            self.check_coherent()
        except CoherenceError:
            return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        return {"choices": [[p.to_list(), mask_to_indices(x)] for p, x in self.choices]}


def coherent_selections(f: PartitionFilter) -> List[InverseLimitPoint]:
    """
    Every coherent selection (lim← F)

    Within the exhaustive limit the selections are found by backtracking
    over every member, finest first; beyond it they are generated from the
    least member's blocks and recorded on the generators.
    """
    if not f.exhaustive:
        points = []
        for block in f.base.blocks:
            mapping = {f.base: block}
            for g in f.generators:
                mapping[g] = coarsening_map(f.base, g)(block)
            points.append(InverseLimitPoint.from_mapping(f, mapping))
        return points

    members = f.witnesses()
    found: List[InverseLimitPoint] = []

    def extend(i: int, chosen: List[Tuple[Partition, int]]) -> None:
        if i == len(members):
            found.append(InverseLimitPoint.from_mapping(f, dict(chosen)))
            return
        p = members[i]
        for block in p.blocks:
            if all(
                not refines(q, p) or coarsening_map(q, p)(x) == block
                for q, x in chosen
            ):
                chosen.append((p, block))
                extend(i + 1, chosen)
                chosen.pop()

    extend(0, [])
    return found


def limit_to_ultrafilter(x: InverseLimitPoint) -> FUltrafilter:
    """
    The map L: the upward closure of {x_P}

    Raises:
        CoherenceError: x is not coherent
        NotAnFUltrafilterError: the closure is not an F-ultrafilter
    """
    x.check_coherent()
    f = x.filter
    partitions = {p for p, _ in x.choices} | set(f.generators) | {f.base}
    meet = f.algebra.top_mask
    for p in partitions:
        meet &= x.at(p)
    if popcount(meet) != 1:
        raise NotAnFUltrafilterError(
            f"Selected blocks meet in {mask_to_indices(meet)}, which is not an atom"
        )
    u = FUltrafilter(f.algebra, mask_to_indices(meet)[0])
    for p in f.witnesses():
        if not _meets_once(u, p):
            raise NotAnFUltrafilterError(f"{u.label} does not meet {p} exactly once")
    return u


def ultrafilter_to_limit(u: SpectrumPoint, f: PartitionFilter) -> InverseLimitPoint:
    """
    The map M: each member P sent to the unique block of P in U

    Raises:
        NotAnFUltrafilterError: U meets some member in zero or several blocks
    """
    mapping = {}
    for p in f.witnesses():
        hits = [b for b in p.blocks if u.contains(b)]
        if len(hits) != 1:
            raise NotAnFUltrafilterError(f"{u.label} meets {p} in {len(hits)} blocks")
        mapping[p] = hits[0]
    return InverseLimitPoint.from_mapping(f, mapping)


@dataclass(frozen=True)
class StabilityReport:
    """The four stability conditions, evaluated independently"""
    hit_by_limit: bool
    projections_surjective: bool
    union_covers: bool
    intersection_is_top: bool
    spectrum_size: int = 0

    @property
    def all_true(self) -> bool:
        return self.hit_by_limit and self.projections_surjective and self.union_covers and self.intersection_is_top

    @property
    def all_equal(self) -> bool:
        values = {self.hit_by_limit, self.projections_surjective, self.union_covers, self.intersection_is_top}
        return len(values) == 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "hit_by_limit": self.hit_by_limit,
            "projections_surjective": self.projections_surjective,
            "union_covers": self.union_covers,
            "intersection_is_top": self.intersection_is_top,
            "spectrum_size": self.spectrum_size,
        }


@lru_cache(maxsize=4096)
def stability_report(bpa: BooleanPartitionAlgebra) -> StabilityReport:
    """
    Evaluate the four stability conditions

    1. every b ≠ 0 equals x_P for some coherent x and member P
    2. every projection π_P is surjective
    3. the F-ultrafilters cover B \\ {0}
    4. the F-ultrafilters intersect in {1}

    Candidates failing validity are reported on as well.
    """
    f = bpa.filter
    top = bpa.algebra.top_mask
    selections = coherent_selections(f)
    witnesses = f.witnesses()

    if f.exhaustive:
        hit = {x.at(p) for x in selections for p in witnesses}
        hit_by_limit = all(b in hit for b in range(1, top + 1))
    else:
        base_hits = {x.at(f.base) for x in selections}
        hit_by_limit = all(
            _is_union_of_blocks(f.base.blocks, b) and any(h & ~b == 0 for h in base_hits)
            for b in range(1, top + 1)
        )

    projections = all(
        {x.at(p) for x in selections} == set(p.blocks) for p in witnesses
    )

    spectrum = _f_ultrafilters(bpa)
    union_covers = all(any(u.contains(b) for u in spectrum) for b in range(1, top + 1))
    in_all = [b for b in range(top + 1) if all(u.contains(b) for u in spectrum)]
    intersection_is_top = in_all == [top]

    if not spectrum:
        logger.debug("empty spectrum for %s", bpa.to_dict())
    return StabilityReport(hit_by_limit, projections, union_covers, intersection_is_top, len(spectrum))


def iota(bpa: BooleanPartitionAlgebra, a: AlgElement) -> FrozenSet[FUltrafilter]:
    """ι(a): the F-ultrafilters containing a"""
    if a.algebra != bpa.algebra:
        raise AlgebraMismatchError(f"{a} is not in {bpa.algebra}")
    return frozenset(u for u in enumerate_f_ultrafilters(bpa) if u.contains(a))


def iota_image(bpa: BooleanPartitionAlgebra, p: Partition) -> FrozenSet[FrozenSet[FUltrafilter]]:
    """ι''(p) \\ {∅}"""
    images = (iota(bpa, e) for e in p.elements())
    return frozenset(s for s in images if s)


def iota_mask(spectrum: Sequence[SpectrumPoint], mask: Any) -> int:
    """ι(a) as a bitmask over spectrum positions"""
    return sum(1 << i for i, u in enumerate(spectrum) if u.contains(mask))


def iota_table(bpa: BooleanPartitionAlgebra) -> FunctionTable:
    """
    ι as a function table into the powerset of the spectrum

    Raises:
        InvalidInputError: the spectrum is empty
    """
    spectrum = enumerate_f_ultrafilters(bpa)
    if not spectrum:
        raise InvalidInputError("Empty spectrum has no powerset algebra to map into")
    target = GroundAlgebra(len(spectrum))
    return FunctionTable.from_callable(bpa.algebra, target, lambda m: iota_mask(spectrum, m))
