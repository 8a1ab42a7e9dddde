"""
Tree models

A finitely branching tree whose level-k nodes form refining partitions p_k.
Elements of the node algebra are reduced node antichains; branches are the
points, and eventually periodic branches are the ones we can name exactly.
Everything past the materialization cap is checked lazily, level by level.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from math import gcd
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from ..algebra.base import GroundAlgebra
from ..algebra.partition_algebra import (
    BooleanPartitionAlgebra,
    BPAValidity,
    PartitionFilter,
    SpectrumPoint,
    enumerate_f_ultrafilters,
    validate_bpa,
)
from ..algebra.partitions import CoarseningMap, Partition, coarsening_map
from ..config import ATOM_CAP, TREE_DEPTH_BOUND
from ..errors import (
    AlgebraMismatchError,
    DepthOverflowError,
    InternalConsistencyError,
    InvalidInputError,
    MisuseError,
    RefinementError,
)
from .duality import CompletionReport, completion
from .partition_space import PartitionSpace

logger = logging.getLogger(__name__)

Node = Tuple[int, ...]


class Closure(Enum):
    """Which unions of nodes the element algebra admits"""
    FINITE_ANTICHAIN = "finite-antichain"
    FULL_UNION = "full-union"


class SubspaceKind(Enum):
    ALL = "all"
    EVENTUALLY_ZERO = "eventually-zero"
    FINITELY_MANY_ONES = "finitely-many-ones"
    EXPLICIT = "explicit"


def parse_word(word: Union[str, Sequence[int]]) -> Node:
    """Digits from "101", "1.12.0" (for digits above 9) or a list of ints"""
    if isinstance(word, str):
        parts = word.split(".") if "." in word else list(word)
        if not all(p.isdigit() for p in parts):
            raise InvalidInputError(f"Node word {word!r} must consist of digits")
        return tuple(int(p) for p in parts)
    digits = tuple(word)
    if not all(isinstance(d, int) and d >= 0 for d in digits):
        raise InvalidInputError(f"Node word {list(digits)!r} must consist of non-negative integers")
    return digits


def node_label(node: Node) -> str:
    if any(d > 9 for d in node):
        return ".".join(str(d) for d in node)
    return "".join(str(d) for d in node)


def _primitive_root(period: Node) -> Node:
    n = len(period)
    for size in range(1, n + 1):
        if n % size == 0 and period[:size] * (n // size) == period:
            return period[:size]
    return period


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class BranchDescriptor:
    """
    The branch prefix·period^ω

    Stored normalized: the period is primitive and the prefix does not end
    with the period's last digit, so equal branches compare equal.
    """
    prefix: Node = ()
    period: Node = (0,)

    def __post_init__(self):
        prefix = parse_word(self.prefix)
        period = parse_word(self.period)
        if not period:
            raise InvalidInputError("A branch needs a nonempty period")
        period = _primitive_root(period)
        while prefix and prefix[-1] == period[-1]:
            prefix = prefix[:-1]
            period = period[-1:] + period[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    def digit(self, k: int) -> int:
        """Digit taken at depth k (the edge from level k to k+1)"""
        if k < len(self.prefix):
            return self.prefix[k]
        return self.period[(k - len(self.prefix)) % len(self.period)]

    def node_at(self, depth: int) -> Node:
        return tuple(self.digit(k) for k in range(depth))

    def first_divergence(self, other: "BranchDescriptor") -> Optional[int]:
        """First depth k with differing digits, None for equal branches"""
        horizon = max(len(self.prefix), len(other.prefix)) + _lcm(len(self.period), len(other.period))
        for k in range(horizon):
            if self.digit(k) != other.digit(k):
                return k
        return None

    @property
    def label(self) -> str:
        return f"{node_label(self.prefix)}({node_label(self.period)})"

    def to_dict(self) -> Dict[str, str]:
        return {"prefix": node_label(self.prefix), "period": node_label(self.period)}


@dataclass(frozen=True)
class TreeModel:
    """
    Tree with periodic fan-out and a named subspace of branches

    Args:
        branching: Fan-out per level, repeated periodically (each at least 2)
        depth_bound: Deepest level any probe may reach
        subspace: Which branches are points of the space
        branches: The points, when the subspace is explicit
        closure: Which unions of nodes count as elements
    """
    branching: Tuple[int, ...] = (2,)
    depth_bound: int = TREE_DEPTH_BOUND
    subspace: SubspaceKind = SubspaceKind.ALL
    branches: Tuple[BranchDescriptor, ...] = ()
    closure: Closure = Closure.FINITE_ANTICHAIN

    def __post_init__(self):
        branching = tuple(self.branching)
        if not branching or not all(isinstance(b, int) and b >= 2 for b in branching):
            raise InvalidInputError(f"Branching must be a nonempty list of integers >= 2, got {list(branching)}")
        object.__setattr__(self, "branching", branching)
        if not isinstance(self.depth_bound, int) or self.depth_bound < 0:
            raise InvalidInputError(f"depth_bound must be a non-negative integer, got {self.depth_bound!r}")
        try:
            object.__setattr__(self, "subspace", SubspaceKind(self.subspace))
            object.__setattr__(self, "closure", Closure(self.closure))
        except ValueError as e:
            raise InvalidInputError(str(e)) from None
        branches = tuple(sorted(set(self.branches), key=lambda b: (b.prefix, b.period)))
        if self.subspace == SubspaceKind.EXPLICIT:
            if not branches:
                raise InvalidInputError("An explicit subspace needs at least one branch")
            for b in branches:
                if not self.is_branch(b):
                    raise InvalidInputError(f"Branch {b.label} does not fit the branching {list(branching)}")
        elif branches:
            raise InvalidInputError(f"Branches are only listed for an explicit subspace, not {self.subspace.value}")
        object.__setattr__(self, "branches", branches)

    def fanout(self, depth: int) -> int:
        """Number of children of a depth-`depth` node"""
        return self.branching[depth % len(self.branching)]

    def level_size(self, depth: int) -> int:
        size = 1
        for k in range(depth):
            size *= self.fanout(k)
        return size

    def check_depth(self, depth: int) -> None:
        """
        Raises:
            DepthOverflowError: depth exceeds the model's bound
        """
        if not isinstance(depth, int) or depth < 0:
            raise InvalidInputError(f"Depth must be a non-negative integer, got {depth!r}")
        if depth > self.depth_bound:
            raise DepthOverflowError(f"Depth {depth} exceeds the bound {self.depth_bound}")

    def level(self, depth: int) -> List[Node]:
        """Depth-`depth` nodes in lexicographic order"""
        self.check_depth(depth)
        return list(product(*(range(self.fanout(k)) for k in range(depth))))

    def extensions(self, node: Node, depth: int) -> List[Node]:
        """Depth-`depth` nodes below `node`"""
        tails = product(*(range(self.fanout(k)) for k in range(len(node), depth)))
        return [node + tail for tail in tails]

    def is_node(self, node: Node) -> bool:
        return len(node) <= self.depth_bound and all(0 <= d < self.fanout(k) for k, d in enumerate(node))

    def is_branch(self, branch: BranchDescriptor) -> bool:
        horizon = len(branch.prefix) + _lcm(len(branch.period), len(self.branching))
        return all(0 <= branch.digit(k) < self.fanout(k) for k in range(horizon))

    def contains_branch(self, branch: BranchDescriptor) -> bool:
        """
        Membership in the subspace

        Raises:
            InvalidInputError: the branch does not fit the tree
        """
        if not self.is_branch(branch):
            raise InvalidInputError(f"Branch {branch.label} does not fit the branching {list(self.branching)}")
        if self.subspace == SubspaceKind.ALL:
            return True
        if self.subspace == SubspaceKind.EVENTUALLY_ZERO:
            return set(branch.period) == {0}
        if self.subspace == SubspaceKind.FINITELY_MANY_ONES:
            return 1 not in branch.period
        return branch in self.branches

    def to_dict(self) -> Dict[str, Any]:
        subspace: Any = self.subspace.value
        if self.subspace == SubspaceKind.EXPLICIT:
            subspace = {"branches": [b.to_dict() for b in self.branches]}
        return {
            "branching": list(self.branching),
            "depth_bound": self.depth_bound,
            "subspace": subspace,
            "closure": self.closure.value,
        }


def _reduce(model: TreeModel, nodes: Iterable[Node]) -> Tuple[Node, ...]:
    # Drop nodes below another node, then merge full sibling sets upward
    pool = set(nodes)
    pool = {n for n in pool if not any(n[:i] in pool for i in range(len(n)))}
    merged = True
    while merged:
        merged = False
        siblings: Dict[Node, Set[Node]] = {}
        for n in pool:
            if n:
                siblings.setdefault(n[:-1], set()).add(n)
        # Each pass lifts every complete sibling set by one level
        for parent, kids in siblings.items():
            if len(kids) == model.fanout(len(parent)):
                pool -= kids
                pool.add(parent)
                merged = True
    return tuple(sorted(pool))


@dataclass(frozen=True)
class TreeElement:
    """Finite union of nodes, kept as its reduced antichain"""
    model: TreeModel
    nodes: Tuple[Node, ...] = ()

    def __post_init__(self):
        nodes = tuple(tuple(n) for n in self.nodes)
        for n in nodes:
            if not self.model.is_node(n):
                raise InvalidInputError(f"{node_label(n)!r} is not a node within depth {self.model.depth_bound}")
        object.__setattr__(self, "nodes", _reduce(self.model, nodes))

    @classmethod
    def zero(cls, model: TreeModel) -> "TreeElement":
        return cls(model, ())

    @classmethod
    def one(cls, model: TreeModel) -> "TreeElement":
        return cls(model, ((),))

    @classmethod
    def node(cls, model: TreeModel, node: Union[str, Node]) -> "TreeElement":
        return cls(model, (parse_word(node),))

    @property
    def depth(self) -> int:
        return max((len(n) for n in self.nodes), default=0)

    @property
    def is_zero(self) -> bool:
        return not self.nodes

    @property
    def is_one(self) -> bool:
        return self.nodes == ((),)

    def expand(self, depth: int) -> Set[Node]:
        """The element as a set of depth-`depth` nodes"""
        if depth < self.depth:
            raise InvalidInputError(f"Cannot express a depth-{self.depth} element at depth {depth}")
        expanded: Set[Node] = set()
        for n in self.nodes:
            expanded.update(self.model.extensions(n, depth))
        return expanded

    def _common_depth(self, other: "TreeElement") -> int:
        if self.model != other.model:
            raise AlgebraMismatchError("Elements from different tree models")
        return max(self.depth, other.depth)

    def __and__(self, other: "TreeElement") -> "TreeElement":
        d = self._common_depth(other)
        return TreeElement(self.model, tuple(self.expand(d) & other.expand(d)))

    def __or__(self, other: "TreeElement") -> "TreeElement":
        d = self._common_depth(other)
        return TreeElement(self.model, tuple(self.expand(d) | other.expand(d)))

    def __invert__(self) -> "TreeElement":
        d = self.depth
        return TreeElement(self.model, tuple(set(self.model.level(d)) - self.expand(d)))

    def __le__(self, other: "TreeElement") -> bool:
        d = self._common_depth(other)
        return self.expand(d) <= other.expand(d)

    def contains_branch(self, branch: BranchDescriptor) -> bool:
        return any(branch.node_at(len(n)) == n for n in self.nodes)

    def to_list(self) -> List[str]:
        return [node_label(n) for n in self.nodes]

    def __repr__(self) -> str:
        return f"TreeElement({self.to_list()})"


def _join_elements(model: TreeModel, elements: Iterable[TreeElement]) -> TreeElement:
    joined = TreeElement.zero(model)
    for e in elements:
        joined = joined | e
    return joined


@dataclass(frozen=True)
class TreePartition:
    """
    Partition of the node algebra

    Either finitely many blocks, or (when `spine` is set) the comb along a
    branch: for every depth k ≥ 1 the siblings leaving the spine at depth k
    form one block. The comb's blocks join to 1 but none contains the spine.
    """
    model: TreeModel
    blocks: Tuple[TreeElement, ...] = ()
    spine: Optional[BranchDescriptor] = None

    def __post_init__(self):
        if self.spine is not None:
            if self.blocks:
                raise InvalidInputError("A comb partition has no extra finite blocks")
            if not self.model.is_branch(self.spine):
                raise InvalidInputError(f"Spine {self.spine.label} does not fit the tree")
            return
        blocks = tuple(sorted(set(self.blocks), key=lambda b: b.nodes))
        if not blocks or any(b.is_zero for b in blocks):
            raise InvalidInputError("Partition blocks must be nonzero")
        for i, a in enumerate(blocks):
            for b in blocks[i + 1:]:
                if not (a & b).is_zero:
                    raise InvalidInputError(f"Blocks {a} and {b} overlap")
        if not _join_elements(self.model, blocks).is_one:
            raise InvalidInputError("Blocks do not join to 1")
        object.__setattr__(self, "blocks", blocks)

    @property
    def is_infinite(self) -> bool:
        return self.spine is not None

    def comb_block(self, depth: int) -> TreeElement:
        """Siblings leaving the spine at `depth` (depth ≥ 1)"""
        if self.spine is None or depth < 1:
            raise MisuseError("Comb blocks exist only on comb partitions, from depth 1")
        stem = self.spine.node_at(depth - 1)
        taken = self.spine.digit(depth - 1)
        return TreeElement(
            self.model,
            tuple(stem + (c,) for c in range(self.model.fanout(depth - 1)) if c != taken),
        )

    def blocks_to(self, depth: int) -> List[TreeElement]:
        """Every block for a finite partition; comb blocks down to `depth` otherwise"""
        if self.spine is None:
            return list(self.blocks)
        return [self.comb_block(k) for k in range(1, depth + 1)]

    def is_subcomplete(self) -> bool:
        """
        Finite partitions always are; the comb is exactly when the closure
        rule admits arbitrary unions of nodes
        """
        if self.spine is None:
            return True
        return self.model.closure == Closure.FULL_UNION

    def block_containing(self, branch: BranchDescriptor) -> Optional[TreeElement]:
        if self.spine is None:
            for b in self.blocks:
                if b.contains_branch(branch):
                    return b
            return None
        k = self.spine.first_divergence(branch)
        return None if k is None else self.comb_block(k + 1)

    def to_dict(self) -> Dict[str, Any]:
        if self.spine is not None:
            return {"comb": self.spine.to_dict()}
        return {"blocks": [b.to_list() for b in self.blocks]}


def level_partition(model: TreeModel, depth: int) -> TreePartition:
    """p_k: the depth-k nodes"""
    return TreePartition(model, tuple(TreeElement(model, (n,)) for n in model.level(depth)))


def comb_partition(model: TreeModel, spine: BranchDescriptor) -> TreePartition:
    return TreePartition(model, spine=spine)


def coarsen_comb(p: TreePartition, depth: int) -> TreePartition:
    """The comb with every block deeper than `depth` merged into the spine node"""
    if p.spine is None:
        raise MisuseError("Only comb partitions are coarsened this way")
    stem = TreeElement(p.model, (p.spine.node_at(depth),))
    return TreePartition(p.model, tuple(p.blocks_to(depth)) + (stem,))


def tree_refines(p: TreePartition, q: TreePartition) -> bool:
    """
    p ⪯ q for a finite q

    Comb blocks deeper than q's blocks lie below the spine node there, so
    checking one level past q's depth decides.
    """
    if q.is_infinite:
        raise MisuseError("Refinement is decided against finite partitions only")
    if p.model != q.model:
        raise AlgebraMismatchError("Partitions from different tree models")
    horizon = max((b.depth for b in q.blocks), default=0) + 1
    pieces = p.blocks_to(horizon)
    if p.spine is not None:
        pieces.append(TreeElement(p.model, (p.spine.node_at(horizon),)))
    return all(any(piece <= b for b in q.blocks) for piece in pieces)


def upper_bound_chain(p: TreePartition, depth: int) -> List[TreeElement]:
    """
    Upper bounds of the even-depth comb blocks, one per even depth ≤ `depth`

    Each bound is the union of the selected blocks so far with the spine node
    at that depth; the chain strictly decreases, so no element of depth at
    most `depth` is the least upper bound.
    """
    if p.spine is None:
        raise MisuseError("Only comb partitions have a missing join")
    p.model.check_depth(depth)
    chain = []
    selected = TreeElement.zero(p.model)
    for k in range(2, depth + 1, 2):
        selected = selected | p.comb_block(k)
        chain.append(selected | TreeElement(p.model, (p.spine.node_at(k),)))
    return chain


# Cellular node families: incompatible = neither node extends the other


def nodes_incompatible(a: Node, b: Node) -> bool:
    shorter = min(len(a), len(b))
    return a[:shorter] != b[:shorter]


def is_cellular_nodes(nodes: Iterable[Node]) -> bool:
    nodes = list(dict.fromkeys(tuple(n) for n in nodes))
    return all(nodes_incompatible(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:])


def extend_nodes_to_maximal(model: TreeModel, nodes: Iterable[Node], depth: int) -> List[Node]:
    """
    Extend a cellular node family to a maximal one

    Depth-`depth` nodes compatible with nothing in the family are added in
    lexicographic order.

    Raises:
        InvalidInputError: the family is not cellular or reaches below `depth`
    """
    nodes = [tuple(n) for n in nodes]
    if not is_cellular_nodes(nodes):
        raise InvalidInputError("Node family is not cellular")
    if any(len(n) > depth for n in nodes):
        raise InvalidInputError(f"Family has nodes deeper than {depth}")
    extra = [n for n in model.level(depth) if all(nodes_incompatible(n, m) for m in nodes)]
    return sorted(set(nodes)) + extra


def refines_nodes(a: Iterable[Node], b: Iterable[Node]) -> bool:
    """Every node of a extends some node of b"""
    b = [tuple(n) for n in b]
    return all(any(tuple(n)[:len(m)] == m for m in b) for n in a)


def coarsen_node(node: Node, coarser: Iterable[Node]) -> Node:
    """
    The node of the coarser family that `node` extends

    Raises:
        RefinementError: no such node
    """
    for m in coarser:
        m = tuple(m)
        if tuple(node)[:len(m)] == m:
            return m
    raise RefinementError(f"{node_label(node)!r} extends no node of the coarser family")


def representatives(model: TreeModel, depth: int) -> List[BranchDescriptor]:
    """
    One subspace branch through each depth-`depth` node that meets the subspace

    Dense subspaces use node·0^ω; explicit ones use their first listed branch
    through the node.
    """
    nodes = model.level(depth)
    if model.subspace != SubspaceKind.EXPLICIT:
        return [BranchDescriptor(n, (0,)) for n in nodes]
    found = []
    for n in nodes:
        for b in model.branches:
            if b.node_at(depth) == n:
                found.append(b)
                break
    return found


def _check_materializable(model: TreeModel, depth: int) -> None:
    model.check_depth(depth)
    if model.level_size(depth) > ATOM_CAP:
        raise DepthOverflowError(
            f"Level {depth} has {model.level_size(depth)} nodes, above the cap of {ATOM_CAP}"
        )


def _level_blocks(keys: Sequence[Node], depth: int) -> Tuple[int, ...]:
    groups: Dict[Node, int] = {}
    for i, key in enumerate(keys):
        groups[key[:depth]] = groups.get(key[:depth], 0) | 1 << i
    return tuple(groups.values())


def truncate(model: TreeModel, depth: int, saturate: bool = False) -> Tuple[BooleanPartitionAlgebra, PartitionSpace]:
    """
    The finite image at `depth`

    Returns:
        (algebra of the depth-`depth` nodes with the level partitions p_0..p_d
        as generators, space of the subspace representatives at that depth)

    Args:
        saturate: Also generate by every two-block coarsening of p_d

    Raises:
        DepthOverflowError: depth past the bound, or more than ATOM_CAP nodes
    """
    _check_materializable(model, depth)
    nodes = model.level(depth)
    algebra = GroundAlgebra(len(nodes))
    generators = [Partition(algebra, _level_blocks(nodes, k)) for k in range(depth + 1)]
    if saturate:
        top = algebra.top_mask
        generators.extend(Partition(algebra, (b, top ^ b)) for b in range(1, top))
    bpa = BooleanPartitionAlgebra(algebra, PartitionFilter(algebra, tuple(generators)))

    reps = representatives(model, depth)
    if not reps:
        return bpa, PartitionSpace.empty()
    keys = [r.node_at(depth) for r in reps]
    points = GroundAlgebra(len(reps))
    crevasses = tuple(Partition(points, _level_blocks(keys, k)) for k in range(depth + 1))
    return bpa, PartitionSpace(len(reps), crevasses)


def spectrum_nodes(model: TreeModel, depth: int) -> List[Node]:
    """The depth-`depth` node matching each point of the truncated spectrum"""
    bpa, _ = truncate(model, depth)
    nodes = model.level(depth)
    return [nodes[u.atom] for u in enumerate_f_ultrafilters(bpa)]


def level_coarsening(model: TreeModel, depth: int, coarser: int) -> CoarseningMap:
    """φ from the depth-`depth` atoms to p_coarser, inside the depth-`depth` image"""
    if coarser > depth:
        raise RefinementError(f"Level {depth} does not refine level {coarser}")
    bpa, _ = truncate(model, depth)
    nodes = model.level(depth)
    return coarsening_map(Partition.atoms(bpa.algebra), Partition(bpa.algebra, _level_blocks(nodes, coarser)))


def level_filter_validity(model: TreeModel, depth: int) -> List[Tuple[int, BPAValidity]]:
    """Validity of each materializable truncation up to `depth`"""
    model.check_depth(depth)
    return [
        (k, validate_bpa(truncate(model, k)[0]))
        for k in range(depth + 1)
        if model.level_size(k) <= ATOM_CAP
    ]


@dataclass(frozen=True)
class BranchUltrafilter(SpectrumPoint):
    """The F-ultrafilter of a branch: p_k ↦ the depth-k node on it"""
    model: TreeModel
    branch: BranchDescriptor

    def contains(self, element: TreeElement) -> bool:
        if element.model != self.model:
            raise AlgebraMismatchError("Element from a different tree model")
        return element.contains_branch(self.branch)

    def selection(self, depth: int) -> Node:
        return self.branch.node_at(depth)

    @property
    def label(self) -> str:
        return self.branch.label


def branch_ultrafilter(model: TreeModel, branch: BranchDescriptor) -> BranchUltrafilter:
    """
    Raises:
        InvalidInputError: the branch does not fit the tree
    """
    if not model.is_branch(branch):
        raise InvalidInputError(f"Branch {branch.label} does not fit the branching {list(model.branching)}")
    return BranchUltrafilter(model, branch)


def density_check(model: TreeModel, depth: int) -> bool:
    """True iff every depth-`depth` node contains a point of the subspace"""
    nodes = model.level(depth)
    if model.subspace != SubspaceKind.EXPLICIT:
        return all(model.contains_branch(BranchDescriptor(n, (0,))) for n in nodes)
    reached = {b.node_at(depth) for b in model.branches}
    return all(n in reached for n in nodes)


@dataclass(frozen=True)
class ProbeReport:
    """Depth at which each representative's 𝒞-image leaves the probed branch"""
    branch: BranchDescriptor
    depth: int
    divergence: Tuple[Tuple[str, int], ...]
    note: str = "bounded evidence: only representatives distinguishable at the probed depth are compared"

    @property
    def all_diverge(self) -> bool:
        return all(k is not None for _, k in self.divergence)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "branch": self.branch.to_dict(),
            "depth": self.depth,
            "divergence": dict(self.divergence),
            "note": self.note,
        }


def nonsurjectivity_probe(model: TreeModel, branch: BranchDescriptor, depth: int) -> ProbeReport:
    """
    For each subspace representative at `depth`, the depth where its
    ultrafilter first selects a node off `branch`

    Raises:
        MisuseError: the branch lies in the subspace
    """
    if model.contains_branch(branch):
        raise MisuseError(f"Branch {branch.label} lies in the {model.subspace.value} subspace")
    divergence = []
    for x in representatives(model, depth):
        k = x.first_divergence(branch)
        if k is None:
            raise InternalConsistencyError(f"Representative {x.label} equals the probed branch")
        divergence.append((x.label, k + 1))
    logger.debug("probe of %s: %d representatives", branch.label, len(divergence))
    return ProbeReport(branch, depth, tuple(divergence))


@dataclass(frozen=True)
class TreeCompleteness:
    complete: bool
    witness: Optional[BranchDescriptor] = None
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "complete": self.complete,
            "witness": self.witness.to_dict() if self.witness else None,
            "note": self.note,
        }


def tree_is_complete(model: TreeModel, depth: int) -> TreeCompleteness:
    """
    Search for a coherent point the subspace does not realize

    Dense subspaces have every branch as a coherent point; candidates are
    node·c^ω for nodes down to `depth`. A finite explicit subspace is closed,
    hence complete.
    """
    model.check_depth(depth)
    if model.subspace == SubspaceKind.ALL:
        return TreeCompleteness(True, note="every branch is a point")
    if model.subspace == SubspaceKind.EXPLICIT:
        return TreeCompleteness(True, note="finitely many branches form a closed subspace")
    digits = range(min(model.branching))
    for k in range(depth + 1):
        for n in model.level(k):
            for c in digits:
                candidate = BranchDescriptor(n, (c,))
                if not model.contains_branch(candidate):
                    return TreeCompleteness(False, candidate, f"coherent point {candidate.label} is not realized")
    return TreeCompleteness(True, note=f"no unrealized coherent point found down to depth {depth}")


@dataclass(frozen=True)
class TreeCompletionReport:
    model: TreeModel
    completion_model: TreeModel
    depth: int
    uniformly_continuous: bool
    dense: bool
    embedding: bool
    onto: bool
    homeomorphism: bool
    levels: Tuple[Tuple[int, CompletionReport], ...]
    c_rule: str = "x ↦ branch ultrafilter of x: p_k selects the depth-k node of x"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model.to_dict(),
            "completion": self.completion_model.to_dict(),
            "depth": self.depth,
            "c_rule": self.c_rule,
            "report": {
                "uniformly_continuous": self.uniformly_continuous,
                "dense": self.dense,
                "embedding": self.embedding,
                "onto": self.onto,
                "homeomorphism": self.homeomorphism,
            },
            "levels": {str(k): r.to_dict() for k, r in self.levels},
        }


def tree_completion(model: TreeModel, depth: int) -> TreeCompletionReport:
    """
    Completion of the subspace: all branches of the same tree, reached
    through branch ultrafilters

    At every depth k down to `depth` the truncated 𝒞 sends each subspace
    representative to the node its branch ultrafilter selects on p_k; it
    must be injective and onto the depth-k nodes of the completion. Levels
    small enough to materialize are also completed as finite spaces.
    """
    model.check_depth(depth)
    full = TreeModel(model.branching, model.depth_bound, SubspaceKind.ALL, (), model.closure)
    embedding = onto = True
    for k in range(depth + 1):
        selected = [branch_ultrafilter(model, r).selection(k) for r in representatives(model, k)]
        embedding = embedding and len(set(selected)) == len(selected)
        onto = onto and set(selected) == set(full.level(k))
    logger.debug("truncated completion to depth %d: embedding=%s onto=%s", depth, embedding, onto)
    levels = []
    for k in range(depth + 1):
        if model.level_size(k) > ATOM_CAP:
            break
        _, space = truncate(model, k)
        if not space.is_empty:
            levels.append((k, completion(space).report))
    dense = all(density_check(model, k) for k in range(depth + 1))
    uniformly_continuous = all(r.uniformly_continuous for _, r in levels)
    complete = tree_is_complete(model, depth).complete
    return TreeCompletionReport(
        model=model,
        completion_model=full,
        depth=depth,
        uniformly_continuous=uniformly_continuous,
        dense=dense,
        embedding=embedding,
        onto=onto,
        homeomorphism=complete and dense and embedding and onto,
        levels=tuple(levels),
    )
