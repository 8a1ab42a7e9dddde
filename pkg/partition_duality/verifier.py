"""
Theorem suites

Each check pairs a predicate with a generator of desk-scale instances.
SuiteRunner sweeps the instances in a fixed order, keeps the first failing
instance as a replayable counterexample, and times every suite.
"""
import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from itertools import combinations, product
from operator import or_
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .algebra.base import (
    FunctionTable,
    GroundAlgebra,
    all_function_tables,
    extended_triples,
    hom_via_triples,
    is_boolean_homomorphism,
    is_extended_partition,
)
from .algebra.morphisms import (
    PartitionHom,
    _is_partition_masks,
    boolean_homs,
    collapsed_blocks,
    compose,
    identity,
    is_partition_hom,
    is_partition_isomorphism,
    is_partitional,
    nonzero_image,
    partition_image_exact,
    partitional_via_extended,
)
from .algebra.partition_algebra import (
    BooleanPartitionAlgebra,
    PartitionFilter,
    brute_force_ultrafilters,
    coherent_selections,
    enumerate_f_ultrafilters,
    filter_contains,
    induced_bpa,
    iota_image,
    iota_mask,
    iota_table,
    limit_to_ultrafilter,
    make_full_bpa,
    stability_report,
    ultrafilter_to_limit,
    validate_bpa,
)
from .algebra.partitions import (
    CellularFamily,
    Partition,
    _is_cellular_masks,
    all_cellular_families,
    all_partitions,
    coarsening_map,
    extend_to_maximal_cellular,
    is_partition,
    join_of_blocks_below,
    meet_partitions,
    refines,
    subcomplete_embedding,
)
from .config import (
    ATOM_CAP,
    DEFAULT_DEPTH,
    DEFAULT_MAX_ATOMS,
    DEFAULT_MAX_POINTS,
    HOM_SWEEP_SOURCE_ATOMS,
    HOM_SWEEP_TARGET_ATOMS,
    MORPHISM_SWEEP_LIMIT,
    NODE_SWEEP_DEPTH,
    ORACLE_ATOM_LIMIT,
    SATURATION_DEPTH_LIMIT,
    SUITE_MAP,
    SUITE_TITLES,
    TREE_DEPTH_BOUND,
    Suite,
)
from .errors import InvalidInputError, RecordError, RefinementError
from .records import Counterexample, dump_record, load_record
from .spaces.duality import (
    algebra_of_space,
    algebra_round_trip,
    b_star_map,
    completion,
    naturality_algebras,
    naturality_spaces,
    psi,
    s_star_map,
    space_round_trip,
    spectrum_space,
)
from .spaces.partition_space import (
    PartitionSpace,
    UniformMap,
    c_map,
    cauchy_complete,
    compose_maps,
    identity_map,
    is_complete,
    is_separating,
    is_uniformly_continuous,
    principal_spaces,
    uniform_maps,
)
from .spaces.tree_models import (
    BranchDescriptor,
    Closure,
    TreeElement,
    TreeModel,
    branch_ultrafilter,
    coarsen_comb,
    comb_partition,
    density_check,
    extend_nodes_to_maximal,
    is_cellular_nodes,
    level_coarsening,
    level_filter_validity,
    level_partition,
    nodes_incompatible,
    nonsurjectivity_probe,
    refines_nodes,
    representatives,
    spectrum_nodes,
    tree_completion,
    tree_is_complete,
    tree_refines,
    truncate,
    upper_bound_chain,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Bounds:
    """Sweep sizes for one run"""
    max_atoms: int = DEFAULT_MAX_ATOMS
    max_points: int = DEFAULT_MAX_POINTS
    depth: int = DEFAULT_DEPTH

    def __post_init__(self):
        for name, value, low, high in (
            ("max_atoms", self.max_atoms, 1, ATOM_CAP),
            ("max_points", self.max_points, 1, ATOM_CAP),
            ("depth", self.depth, 0, TREE_DEPTH_BOUND),
        ):
            if not isinstance(value, int) or not low <= value <= high:
                raise InvalidInputError(f"{name} must be an integer in [{low}, {high}], got {value!r}")

    @property
    def morphism_atoms(self) -> int:
        return min(self.max_atoms, MORPHISM_SWEEP_LIMIT)

    @property
    def morphism_points(self) -> int:
        return min(self.max_points, MORPHISM_SWEEP_LIMIT)

    def to_dict(self) -> Dict[str, int]:
        return {"max_atoms": self.max_atoms, "max_points": self.max_points, "depth": self.depth}


@dataclass(frozen=True)
class Check:
    """A named property, the instances it is swept over and their record codec"""
    name: str
    suite: Suite
    description: str
    instances: Callable[[Bounds], Iterable[Any]]
    predicate: Callable[[Any], bool]
    encode: Callable[[Any], Any]
    decode: Callable[[Any], Any]


# Registration order is sweep order
CHECKS: Dict[str, Check] = {}


def _decode_value(obj: Any) -> Any:
    return load_record(obj)[1]


def check(
    name: str,
    suite: Suite,
    instances: Callable[[Bounds], Iterable[Any]],
    encode: Callable[[Any], Any] = dump_record,
    decode: Callable[[Any], Any] = _decode_value
):
    """Register the decorated predicate; its docstring describes the check"""
    def register(predicate: Callable[[Any], bool]) -> Callable[[Any], bool]:
        description = (predicate.__doc__ or name).strip()
        CHECKS[name] = Check(name, suite, description, instances, predicate, encode, decode)
        return predicate
    return register


def checks_for(suite: Suite) -> List[Check]:
    return [c for c in CHECKS.values() if c.suite == suite]


# Record codecs for compound instances


def _encode_partitions(partitions: Sequence[Partition]) -> Dict[str, Any]:
    return {
        "algebra": partitions[0].algebra.to_dict(),
        "partitions": [p.to_list() for p in partitions],
    }


def _decode_partitions(obj: Dict[str, Any]) -> Tuple[Partition, ...]:
    _, algebra = load_record(obj["algebra"])
    return tuple(load_record(p, algebra)[1] for p in obj["partitions"])


def _encode_family(family: CellularFamily) -> Dict[str, Any]:
    return {"algebra": family.algebra.to_dict(), "family": family.to_list()}


def _decode_family(obj: Dict[str, Any]) -> CellularFamily:
    _, algebra = load_record(obj["algebra"])
    return CellularFamily.from_lists(algebra, obj["family"])


def _encode_many(values: Sequence[Any]) -> List[Any]:
    return [dump_record(v) for v in values]


def _decode_many(obj: List[Any]) -> Tuple[Any, ...]:
    return tuple(_decode_value(x) for x in obj)


def _encode_tree_depth(instance: Tuple[TreeModel, int]) -> Dict[str, Any]:
    model, depth = instance
    return {"tree": model.to_dict(), "depth": depth}


def _decode_tree_depth(obj: Dict[str, Any]) -> Tuple[TreeModel, int]:
    return _decode_value(obj["tree"]), obj["depth"]


# Instance generators


def _algebras(bounds: Bounds) -> Iterator[GroundAlgebra]:
    for n in range(1, bounds.max_atoms + 1):
        yield GroundAlgebra(n)


def _oracle_algebras(bounds: Bounds) -> Iterator[GroundAlgebra]:
    for n in range(1, min(bounds.max_atoms, ORACLE_ATOM_LIMIT) + 1):
        yield GroundAlgebra(n)


def _single_partitions(bounds: Bounds) -> Iterator[Tuple[Partition]]:
    for algebra in _algebras(bounds):
        for p in all_partitions(algebra):
            yield (p,)


def _partition_pairs(bounds: Bounds) -> Iterator[Tuple[Partition, Partition]]:
    for algebra in _algebras(bounds):
        yield from combinations(all_partitions(algebra), 2)


def _cellular_families(bounds: Bounds) -> Iterator[CellularFamily]:
    for algebra in _algebras(bounds):
        yield from all_cellular_families(algebra)


def _principal_bpas(bounds: Bounds) -> Iterator[BooleanPartitionAlgebra]:
    for algebra in _algebras(bounds):
        for p in all_partitions(algebra):
            yield BooleanPartitionAlgebra(algebra, PartitionFilter(algebra, (p,)))


def _induced_bpas(bounds: Bounds) -> Iterator[BooleanPartitionAlgebra]:
    for bpa in _principal_bpas(bounds):
        yield induced_bpa(bpa.algebra, bpa.filter)


def _valid_bpas(bounds: Bounds) -> List[BooleanPartitionAlgebra]:
    found = [make_full_bpa(a) for a in _algebras(bounds)]
    found.extend(_induced_bpas(bounds))
    return list(dict.fromkeys(found))


def _sweep_tables(bounds: Bounds) -> Iterator[FunctionTable]:
    source = GroundAlgebra(min(bounds.max_atoms, HOM_SWEEP_SOURCE_ATOMS))
    target = GroundAlgebra(min(bounds.max_atoms, HOM_SWEEP_TARGET_ATOMS))
    return all_function_tables(source, target)


@lru_cache(maxsize=None)
def _full_homs(limit: int) -> Tuple[PartitionHom, ...]:
    homs = []
    for a, b in product(range(1, limit + 1), repeat=2):
        source = make_full_bpa(GroundAlgebra(a))
        target = make_full_bpa(GroundAlgebra(b))
        homs.extend(PartitionHom(t, source, target) for t in boolean_homs(source.algebra, target.algebra))
    return tuple(homs)


def _homs(bounds: Bounds) -> Tuple[PartitionHom, ...]:
    return _full_homs(bounds.morphism_atoms)


def _hom_pairs(bounds: Bounds) -> Iterator[Tuple[PartitionHom, PartitionHom]]:
    homs = _homs(bounds)
    for f in homs:
        for g in homs:
            if f.target == g.source:
                yield f, g


def _table_triples(bounds: Bounds) -> Iterator[Tuple[FunctionTable, ...]]:
    limit = bounds.morphism_atoms
    by_source: Dict[GroundAlgebra, List[FunctionTable]] = {}
    for a, b in product(range(1, limit + 1), repeat=2):
        source = GroundAlgebra(a)
        by_source.setdefault(source, []).extend(boolean_homs(source, GroundAlgebra(b)))
    for tables in by_source.values():
        for f in tables:
            for g in by_source[f.target]:
                for h in by_source[g.target]:
                    yield f, g, h


def _filter_hom_instances(bounds: Bounds) -> Iterator[Tuple[Any, ...]]:
    # Boolean homomorphisms against every pair of principal filters
    limit = bounds.morphism_atoms
    for a, b in product(range(1, limit + 1), repeat=2):
        source, target = GroundAlgebra(a), GroundAlgebra(b)
        for t in boolean_homs(source, target):
            for p, q in product(all_partitions(source), all_partitions(target)):
                yield (
                    t,
                    BooleanPartitionAlgebra(source, PartitionFilter(source, (p,))),
                    BooleanPartitionAlgebra(target, PartitionFilter(target, (q,))),
                )


def _injective_filter_hom_instances(bounds: Bounds) -> Iterator[Tuple[Any, ...]]:
    return (i for i in _filter_hom_instances(bounds) if i[0].is_injective)


def _spaces(bounds: Bounds) -> Iterator[PartitionSpace]:
    for n in range(1, bounds.max_points + 1):
        yield from principal_spaces(n)


@lru_cache(maxsize=None)
def _space_maps_upto(limit: int) -> Tuple[UniformMap, ...]:
    spaces = [s for n in range(1, limit + 1) for s in principal_spaces(n)]
    return tuple(f for x, y in product(spaces, repeat=2) for f in uniform_maps(x, y))


def _space_maps(bounds: Bounds) -> Tuple[UniformMap, ...]:
    return _space_maps_upto(bounds.morphism_points)


def _space_map_pairs(bounds: Bounds) -> Iterator[Tuple[UniformMap, UniformMap]]:
    maps = _space_maps(bounds)
    by_source: Dict[PartitionSpace, List[UniformMap]] = {}
    for f in maps:
        by_source.setdefault(f.source, []).append(f)
    for f in maps:
        for g in by_source.get(f.target, []):
            yield f, g


def _binary(subspace: str = "all", closure: str = "finite-antichain") -> TreeModel:
    return TreeModel(branching=(2,), subspace=subspace, closure=closure)


def _tree_models(bounds: Bounds) -> Iterator[Tuple[TreeModel, int]]:
    for subspace in ("all", "eventually-zero"):
        yield _binary(subspace), bounds.depth


def _all_tree(bounds: Bounds) -> Iterator[Tuple[TreeModel, int]]:
    yield _binary(), bounds.depth


def _eventually_zero_tree(bounds: Bounds) -> Iterator[Tuple[TreeModel, int]]:
    yield _binary("eventually-zero"), bounds.depth


def _closure_trees(bounds: Bounds) -> Iterator[Tuple[TreeModel, int]]:
    for closure in Closure:
        yield _binary(closure=closure.value), bounds.depth


def _tree_levels(bounds: Bounds) -> Iterator[Tuple[TreeModel, int]]:
    # Consecutive level pairs (k, k + 1) down to the run depth
    model = _binary()
    for k in range(bounds.depth):
        yield model, k


def _materialized_levels(bounds: Bounds) -> Iterator[Tuple[TreeModel, int]]:
    for model, _ in _tree_models(bounds):
        for k in range(bounds.depth + 1):
            if model.level_size(k) <= ATOM_CAP:
                yield model, k


def _saturation_levels(bounds: Bounds) -> Iterator[Tuple[TreeModel, int]]:
    model = _binary()
    for k in range(min(bounds.depth, SATURATION_DEPTH_LIMIT) + 1):
        yield model, k


def _node_sweep(bounds: Bounds) -> Iterator[Tuple[TreeModel, int]]:
    for k in range(min(bounds.depth, NODE_SWEEP_DEPTH) + 1):
        yield _binary(), k


# Lattice suite


def _bell(n: int) -> int:
    # Bell triangle: each row starts with the previous row's last entry
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


@check("lattice.partition_count", Suite.LATTICE, _algebras)
def _partition_count(algebra: GroundAlgebra) -> bool:
    """Partition enumeration yields Bell(n) distinct partitions"""
    parts = all_partitions(algebra)
    return len(parts) == len(set(parts)) == _bell(algebra.atom_count)


@check("lattice.boolean_laws", Suite.LATTICE, _algebras)
def _boolean_laws(algebra: GroundAlgebra) -> bool:
    """Complement, De Morgan and order laws on every pair of elements"""
    elements = list(algebra.elements())
    for x in elements:
        if (x | ~x) != algebra.one or (x & ~x) != algebra.zero or ~~x != x:
            return False
        for y in elements:
            if ~(x & y) != (~x | ~y) or ~(x | y) != (~x & ~y):
                return False
            if x.leq(y) != ((x & y) == x):
                return False
    return True


@check("lattice.extended_partitions", Suite.LATTICE, _oracle_algebras)
def _extended_partitions(algebra: GroundAlgebra) -> bool:
    """A triple is an extended partition iff its nonzero entries are distinct and form a partition"""
    elements = list(algebra.elements())
    for triple in product(elements, repeat=3):
        nonzero = [e for e in triple if not e.is_zero]
        expected = len(set(nonzero)) == len(nonzero) and is_partition(nonzero)
        if is_extended_partition(list(triple)) != expected:
            return False
    triples = list(extended_triples(algebra))
    return len(triples) == 3 ** algebra.atom_count and all(is_extended_partition(t.elements()) for t in triples)


@check("lattice.refinement_order", Suite.LATTICE, _algebras)
def _refinement_order(algebra: GroundAlgebra) -> bool:
    """Refinement is reflexive, antisymmetric and transitive"""
    parts = all_partitions(algebra)
    above = {p: {q for q in parts if refines(p, q)} for p in parts}
    for p in parts:
        if p not in above[p]:
            return False
        for q in above[p]:
            if q != p and p in above[q]:
                return False
            if not above[q] <= above[p]:
                return False
    return True


@check("lattice.coarsening_maps", Suite.LATTICE, _algebras)
def _coarsening_maps(algebra: GroundAlgebra) -> bool:
    """Coarsening maps exist exactly for refining pairs and compose as an inverse system"""
    parts = all_partitions(algebra)
    for a in parts:
        if not coarsening_map(a, a).is_identity:
            return False
        for b in parts:
            if not refines(a, b):
                try:
                    coarsening_map(a, b)
                except RefinementError:
                    continue
                return False
            ab = coarsening_map(a, b)
            for c in parts:
                if refines(b, c) and ab.then(coarsening_map(b, c)) != coarsening_map(a, c):
                    return False
    return True


@check("lattice.meet_is_glb", Suite.LATTICE, _partition_pairs, _encode_partitions, _decode_partitions)
def _meet_is_glb(pair: Tuple[Partition, Partition]) -> bool:
    """P ∧ Q is the greatest lower bound found by searching every partition"""
    p, q = pair
    lower = [r for r in all_partitions(p.algebra) if refines(r, p) and refines(r, q)]
    greatest = [r for r in lower if all(refines(s, r) for s in lower)]
    return greatest == [meet_partitions(p, q)] and meet_partitions(q, p) == greatest[0]


@check("lattice.join_decomposition", Suite.LATTICE, _algebras)
def _join_decomposition(algebra: GroundAlgebra) -> bool:
    """For P ⪯ Q each block of Q is the join of the blocks of P below it"""
    parts = all_partitions(algebra)
    return all(
        join_of_blocks_below(p, b) == b
        for p in parts
        for q in parts
        if refines(p, q)
        for b in q.blocks
    )


@check("lattice.maximal_cellular", Suite.LATTICE, _cellular_families, _encode_family, _decode_family)
def _maximal_cellular(family: CellularFamily) -> bool:
    """A cellular family is maximal iff it is a partition, and extension keeps its blocks"""
    top = family.algebra.top_mask
    extendable = any(
        x not in family.blocks and _is_cellular_masks(family.blocks + (x,))
        for x in range(1, top + 1)
    )
    if is_partition(family.elements()) == extendable:
        return False
    return set(family.blocks) <= set(extend_to_maximal_cellular(family).blocks)


@check("lattice.subcomplete_embedding", Suite.LATTICE, _single_partitions, _encode_partitions, _decode_partitions)
def _subcomplete_embedding(partitions: Tuple[Partition]) -> bool:
    """R ↦ ∨R is an injective Boolean homomorphism sending singletons to blocks"""
    (p,) = partitions
    e = subcomplete_embedding(p)
    if not e.is_injective or not is_boolean_homomorphism(e):
        return False
    return all(e.apply(1 << i) == b for i, b in enumerate(p.blocks))


# Boolean partition algebra suite


@check("bpa.validity_conditions", Suite.BPA, _principal_bpas)
def _validity_conditions(bpa: BooleanPartitionAlgebra) -> bool:
    """The three validity conditions agree, and hold exactly when the filter holds the atoms"""
    validity = validate_bpa(bpa)
    return validity.all_equal and validity.pair_condition == filter_contains(bpa.filter, Partition.atoms(bpa.algebra))


@check("bpa.induced_valid", Suite.BPA, _principal_bpas)
def _induced_valid(bpa: BooleanPartitionAlgebra) -> bool:
    """({0} ∪ ∪F, F) is a valid algebra whose least member maps back onto F's"""
    induced = induced_bpa(bpa.algebra, bpa.filter)
    if not validate_bpa(induced).all_true or not induced.subcomplete_flag:
        return False
    back = frozenset(induced.to_parent(b) for b in induced.filter.base.blocks)
    return back == frozenset(bpa.filter.base.blocks)


@check("bpa.invalid_unstable", Suite.BPA, _principal_bpas)
def _invalid_unstable(bpa: BooleanPartitionAlgebra) -> bool:
    """A candidate missing some {b, b'} is not stable"""
    return bpa.is_valid or not stability_report(bpa).all_true


@check("bpa.stability_agreement", Suite.BPA, _induced_bpas)
def _stability_agreement(bpa: BooleanPartitionAlgebra) -> bool:
    """The four stability conditions agree"""
    return stability_report(bpa).all_equal


@check("bpa.stable", Suite.BPA, _induced_bpas)
def _stable(bpa: BooleanPartitionAlgebra) -> bool:
    """All four stability conditions hold"""
    return stability_report(bpa).all_true


@check("bpa.spectrum_size", Suite.BPA, _principal_bpas)
def _spectrum_size(bpa: BooleanPartitionAlgebra) -> bool:
    """The induced algebra has one F-ultrafilter per atom"""
    induced = induced_bpa(bpa.algebra, bpa.filter)
    return len(enumerate_f_ultrafilters(induced)) == induced.algebra.atom_count


@check("bpa.limit_bijection", Suite.BPA, _induced_bpas)
def _limit_bijection(bpa: BooleanPartitionAlgebra) -> bool:
    """L and M are mutually inverse bijections between lim← F and the spectrum"""
    f = bpa.filter
    spectrum = enumerate_f_ultrafilters(bpa)
    selections = coherent_selections(f)
    images = [limit_to_ultrafilter(x) for x in selections]
    if len(images) != len(spectrum) or set(images) != set(spectrum):
        return False
    if any(limit_to_ultrafilter(ultrafilter_to_limit(u, f)) != u for u in spectrum):
        return False
    witnesses = f.witnesses()
    for x in selections:
        y = ultrafilter_to_limit(limit_to_ultrafilter(x), f)
        if any(y.at(p) != x.at(p) for p in witnesses):
            return False
    return True


@check("bpa.selection_meets", Suite.BPA, _induced_bpas)
def _selection_meets(bpa: BooleanPartitionAlgebra) -> bool:
    """x_{P∧Q} = x_P ∧ x_Q, and b ∈ L(x) iff x selects b from {b, b'}"""
    f = bpa.filter
    top = bpa.algebra.top_mask
    witnesses = f.witnesses()
    for x in coherent_selections(f):
        for p, q in combinations(witnesses, 2):
            if x.at(meet_partitions(p, q)) != x.at(p) & x.at(q):
                return False
        u = limit_to_ultrafilter(x)
        for b in range(1, top):
            if u.contains(b) != (x.at(Partition(bpa.algebra, (b, top ^ b))) == b):
                return False
    return True


@check("bpa.ultrafilter_oracle", Suite.BPA, _oracle_algebras)
def _ultrafilter_oracle(algebra: GroundAlgebra) -> bool:
    """The spectrum of the full algebra is every ultrafilter found from the axioms"""
    found = set(brute_force_ultrafilters(algebra))
    spectrum = {frozenset(u.member_masks()) for u in enumerate_f_ultrafilters(make_full_bpa(algebra))}
    return found == spectrum


@check("bpa.iota", Suite.BPA, _induced_bpas)
def _iota(bpa: BooleanPartitionAlgebra) -> bool:
    """ι is an injective homomorphism sending filter members to partitions of the spectrum"""
    table = iota_table(bpa)
    if not is_boolean_homomorphism(table) or table.is_injective != stability_report(bpa).all_true:
        return False
    top = table.target.top_mask
    for p in bpa.filter.witnesses():
        image = nonzero_image(table, p)
        if not _is_partition_masks(top, image) or len(iota_image(bpa, p)) != len(image):
            return False
    return True


# Homomorphism suite


@check("hom.triples", Suite.HOM, _sweep_tables)
def _triples(table: FunctionTable) -> bool:
    """Preserving extended triples is the same as being a Boolean homomorphism"""
    return hom_via_triples(table) == is_boolean_homomorphism(table)


@check("hom.partitional_readings", Suite.HOM, _sweep_tables)
def _partitional_readings(table: FunctionTable) -> bool:
    """The extended-partition and image readings of partitional agree, reduced or exhaustive"""
    source = make_full_bpa(table.source)
    exhaustive = is_partitional(table, source, exhaustive=True)
    return partitional_via_extended(table, source) == exhaustive == is_partitional(table, source)


@check("hom.no_collapsed_blocks", Suite.HOM, _homs)
def _no_collapsed_blocks(h: PartitionHom) -> bool:
    """A homomorphism never sends two blocks of a member to the same nonzero element"""
    return all(not collapsed_blocks(h.table, p) for p in h.source.filter.witnesses())


@check("hom.reduced_filter_check", Suite.HOM, _filter_hom_instances, _encode_many, _decode_many)
def _reduced_filter_check(instance: Tuple[FunctionTable, BooleanPartitionAlgebra, BooleanPartitionAlgebra]) -> bool:
    """Checking the least member and generators decides the partition homomorphism condition"""
    table, source, target = instance
    return is_partition_hom(table, source, target) == is_partition_hom(table, source, target, exhaustive=True)


@check("hom.injective_exact", Suite.HOM, _injective_filter_hom_instances, _encode_many, _decode_many)
def _injective_exact(instance: Tuple[FunctionTable, BooleanPartitionAlgebra, BooleanPartitionAlgebra]) -> bool:
    """For injective homomorphisms the image of a member needs no zero removed"""
    table, source, target = instance
    return (
        partition_image_exact(table, source) == is_partitional(table, source, exhaustive=True)
        and partition_image_exact(table, source, target) == is_partition_hom(table, source, target, exhaustive=True)
    )


@check("hom.composition", Suite.HOM, _hom_pairs, _encode_many, _decode_many)
def _composition(pair: Tuple[PartitionHom, PartitionHom]) -> bool:
    """(g ∘ f)''(p) \\ {0} = g''(f''(p) \\ {0}) \\ {0} for every member p"""
    f, g = pair
    h = compose(f, g)
    for p in f.source.filter.witnesses():
        inner = Partition(f.target.algebra, tuple(nonzero_image(f.table, p)))
        if nonzero_image(h.table, p) != nonzero_image(g.table, inner):
            return False
    return True


@check("hom.identity_laws", Suite.HOM, _homs)
def _identity_laws(h: PartitionHom) -> bool:
    """Identities are neutral for composition"""
    return compose(identity(h.source), h).table == h.table == compose(h, identity(h.target)).table


@check("hom.associativity", Suite.HOM, _table_triples, _encode_many, _decode_many)
def _associativity(triple: Tuple[FunctionTable, FunctionTable, FunctionTable]) -> bool:
    """Composition is associative"""
    f, g, h = triple
    return f.then(g).then(h) == f.then(g.then(h))


# Duality suite


@check("duality.algebra_of_space", Suite.DUALITY, _spaces)
def _algebra_of_space(space: PartitionSpace) -> bool:
    """The induced algebra of a space is valid, subcomplete and stable"""
    bpa = algebra_of_space(space)
    return validate_bpa(bpa).all_true and bpa.subcomplete_flag and stability_report(bpa).all_true


@check("duality.spectrum_space", Suite.DUALITY, _valid_bpas)
def _spectrum_space(bpa: BooleanPartitionAlgebra) -> bool:
    """The spectrum is separating and complete, with crevasses ι''(p)"""
    space = spectrum_space(bpa)
    if not is_separating(space) or not is_complete(space) or not cauchy_complete(space):
        return False
    spectrum = enumerate_f_ultrafilters(bpa)
    f, m = bpa.filter, space.crevasse_filter

    def image(p: Partition) -> frozenset:
        return frozenset(iota_mask(spectrum, b) for b in p.blocks) - {0}

    if not f.exhaustive or not m.exhaustive:
        return image(f.base) == frozenset(m.base.blocks)
    return {image(p) for p in f.members()} == {frozenset(q.blocks) for q in m.members()}


@check("duality.psi_isomorphism", Suite.DUALITY, _valid_bpas)
def _psi_isomorphism(bpa: BooleanPartitionAlgebra) -> bool:
    """ψ is a partition isomorphism onto the algebra of the spectrum"""
    h = psi(bpa)
    return is_partition_isomorphism(h) and h(0) == 0 and h(bpa.algebra.top_mask) == h.target.algebra.top_mask


@check("duality.completion", Suite.DUALITY, _spaces)
def _completion(space: PartitionSpace) -> bool:
    """𝒞 is uniformly continuous and dense, and a homeomorphism iff the space separates"""
    result = completion(space)
    report = result.report
    return (
        report.uniformly_continuous
        and report.dense
        and report.homeomorphism == report.separating
        and result.c_map.is_injective == report.separating
    )


@check("duality.cauchy_oracle", Suite.DUALITY, _spaces)
def _cauchy_oracle(space: PartitionSpace) -> bool:
    """Completeness agrees with convergence of every Cauchy filter"""
    return cauchy_complete(space) == is_complete(space)


@check("duality.c_map_selection", Suite.DUALITY, _spaces)
def _c_map_selection(space: PartitionSpace) -> bool:
    """M(𝒞(x)) selects the crevasse block containing x"""
    bpa = space.induced
    for x in range(space.points):
        point = ultrafilter_to_limit(c_map(space, x), bpa.filter)
        if any(not bpa.to_parent(block) >> x & 1 for _, block in point.choices):
            return False
    return True


@check("duality.algebra_round_trip", Suite.DUALITY, _spaces)
def _algebra_round_trip(space: PartitionSpace) -> bool:
    """B*(𝒞) ∘ ψ is the identity on the algebra of the space"""
    witness = algebra_round_trip(space)
    return all(witness.laws.values()) and witness.consistent


@check("duality.space_round_trip", Suite.DUALITY, _valid_bpas)
def _space_round_trip(bpa: BooleanPartitionAlgebra) -> bool:
    """S*(ψ) ∘ 𝒞 is the identity on the spectrum"""
    witness = space_round_trip(bpa)
    return all(witness.laws.values()) and witness.consistent


@check("duality.identity_functors", Suite.DUALITY, _spaces)
def _identity_functors(space: PartitionSpace) -> bool:
    """Both functors send identities to identities"""
    bpa = algebra_of_space(space)
    if b_star_map(identity_map(space)).table != FunctionTable.identity(bpa.algebra):
        return False
    return s_star_map(identity(bpa)).table == tuple(range(bpa.algebra.atom_count))


@check("duality.functor_spaces", Suite.DUALITY, _space_map_pairs, _encode_many, _decode_many)
def _functor_spaces(pair: Tuple[UniformMap, UniformMap]) -> bool:
    """Uniform maps compose, and B*(g ∘ f) = B*(f) ∘ B*(g)"""
    f, g = pair
    gf = compose_maps(f, g)
    if not is_uniformly_continuous(gf):
        return False
    return b_star_map(gf).table == b_star_map(g).table.then(b_star_map(f).table)


@check("duality.functor_algebras", Suite.DUALITY, _hom_pairs, _encode_many, _decode_many)
def _functor_algebras(pair: Tuple[PartitionHom, PartitionHom]) -> bool:
    """S*(g ∘ f) = S*(f) ∘ S*(g)"""
    f, g = pair
    return s_star_map(compose(f, g)).table == compose_maps(s_star_map(g), s_star_map(f)).table


@check("duality.naturality_spaces", Suite.DUALITY, _space_maps)
def _naturality_spaces(f: UniformMap) -> bool:
    """S*(B*(f)) ∘ 𝒞_X = 𝒞_Y ∘ f"""
    return naturality_spaces(f)


@check("duality.naturality_algebras", Suite.DUALITY, _homs)
def _naturality_algebras(h: PartitionHom) -> bool:
    """B*(S*(f)) ∘ ψ_A = ψ_B ∘ f"""
    return naturality_algebras(h)


# Tree suite


@check("tree.levels_refine", Suite.TREE, _tree_levels, _encode_tree_depth, _decode_tree_depth)
def _levels_refine(instance: Tuple[TreeModel, int]) -> bool:
    """p_{k+1} strictly refines p_k, each block of p_k joining the blocks below it"""
    model, k = instance
    coarse, fine = level_partition(model, k), level_partition(model, k + 1)
    if not tree_refines(fine, coarse) or tree_refines(coarse, fine):
        return False
    if not refines_nodes(model.level(k + 1), model.level(k)):
        return False
    if not coarse.is_subcomplete() or not fine.is_subcomplete():
        return False
    for b in coarse.blocks:
        below = [c for c in fine.blocks if c <= b]
        if reduce(or_, below, TreeElement.zero(model)) != b:
            return False
    return True


@check("tree.level_validity", Suite.TREE, _tree_models, _encode_tree_depth, _decode_tree_depth)
def _level_validity(instance: Tuple[TreeModel, int]) -> bool:
    """Every materializable level filter passes the three validity conditions"""
    model, depth = instance
    return all(v.all_true for _, v in level_filter_validity(model, depth))


@check("tree.truncation_spectrum", Suite.TREE, _materialized_levels, _encode_tree_depth, _decode_tree_depth)
def _truncation_spectrum(instance: Tuple[TreeModel, int]) -> bool:
    """The truncated spectrum is the level's nodes, and level coarsening follows prefixes"""
    model, k = instance
    nodes = model.level(k)
    if spectrum_nodes(model, k) != nodes:
        return False
    for coarser in range(k + 1):
        phi = level_coarsening(model, k, coarser)
        for i, n in enumerate(nodes):
            expected = sum(1 << j for j, m in enumerate(nodes) if m[:coarser] == n[:coarser])
            if phi(1 << i) != expected:
                return False
    return True


@check("tree.truncated_completion", Suite.TREE, _materialized_levels, _encode_tree_depth, _decode_tree_depth)
def _truncated_completion(instance: Tuple[TreeModel, int]) -> bool:
    """Every truncated space completes by a homeomorphism"""
    model, k = instance
    _, space = truncate(model, k)
    return completion(space).report.homeomorphism


@check("tree.all_subspace", Suite.TREE, _all_tree, _encode_tree_depth, _decode_tree_depth)
def _all_subspace(instance: Tuple[TreeModel, int]) -> bool:
    """With every branch a point the space is complete and 𝒞 is a homeomorphism"""
    model, depth = instance
    return tree_is_complete(model, depth).complete and tree_completion(model, depth).homeomorphism


@check("tree.eventually_zero", Suite.TREE, _eventually_zero_tree, _encode_tree_depth, _decode_tree_depth)
def _eventually_zero(instance: Tuple[TreeModel, int]) -> bool:
    """The eventually-zero branches are dense but incomplete, and 1^ω is never reached"""
    model, depth = instance
    if not all(density_check(model, k) for k in range(depth + 1)):
        return False
    if tree_is_complete(model, depth).complete:
        return False
    probe = nonsurjectivity_probe(model, BranchDescriptor((), (1,)), depth)
    report = tree_completion(model, depth)
    return probe.all_diverge and report.dense and report.embedding and report.onto and not report.homeomorphism


@check("tree.comb", Suite.TREE, _closure_trees, _encode_tree_depth, _decode_tree_depth)
def _comb(instance: Tuple[TreeModel, int]) -> bool:
    """The comb along 0^ω has no join of its even blocks unless every union of nodes is admitted"""
    model, depth = instance
    comb = comb_partition(model, BranchDescriptor((), (0,)))
    if comb.is_subcomplete() != (model.closure == Closure.FULL_UNION):
        return False
    chain = upper_bound_chain(comb, depth)
    if any(not (b <= a) or a == b for a, b in zip(chain, chain[1:])):
        return False
    coarse = coarsen_comb(comb, depth)
    return coarse.is_subcomplete() and tree_refines(comb, coarse)


@check("tree.branch_ultrafilters", Suite.TREE, _all_tree, _encode_tree_depth, _decode_tree_depth)
def _branch_ultrafilters(instance: Tuple[TreeModel, int]) -> bool:
    """A branch meets each level once, and the comb along it not at all"""
    model, depth = instance
    shallow = min(depth, NODE_SWEEP_DEPTH + 1)
    for branch in representatives(model, shallow) + [BranchDescriptor((), (1,)), BranchDescriptor((0,), (1, 0))]:
        u = branch_ultrafilter(model, branch)
        for k in range(depth + 1):
            hits = [n for n in model.level(k) if u.contains(TreeElement(model, (n,)))]
            if hits != [u.selection(k)]:
                return False
        comb = comb_partition(model, branch)
        if any(u.contains(b) for b in comb.blocks_to(depth)):
            return False
    return True


@check("tree.saturation", Suite.TREE, _saturation_levels, _encode_tree_depth, _decode_tree_depth)
def _saturation(instance: Tuple[TreeModel, int]) -> bool:
    """Level-generated and saturated truncations have the same members and spectrum"""
    model, k = instance
    plain, _ = truncate(model, k)
    saturated, _ = truncate(model, k, saturate=True)
    if plain.filter.base != saturated.filter.base:
        return False
    if not validate_bpa(plain).all_true or not validate_bpa(saturated).all_true:
        return False
    return enumerate_f_ultrafilters(plain) == enumerate_f_ultrafilters(saturated)


@check("tree.cellular_nodes", Suite.TREE, _node_sweep, _encode_tree_depth, _decode_tree_depth)
def _cellular_nodes(instance: Tuple[TreeModel, int]) -> bool:
    """Every cellular node family extends to a maximal one at a given depth"""
    model, k = instance
    nodes = [n for d in range(k + 1) for n in model.level(d)]
    for size in range(len(nodes) + 1):
        for family in combinations(nodes, size):
            if not is_cellular_nodes(family):
                continue
            extended = extend_nodes_to_maximal(model, family, k)
            if not is_cellular_nodes(extended) or not set(family) <= set(extended):
                return False
            if any(all(nodes_incompatible(n, m) for m in extended) for n in nodes):
                return False
    return True


@check("tree.element_laws", Suite.TREE, _node_sweep, _encode_tree_depth, _decode_tree_depth)
def _element_laws(instance: Tuple[TreeModel, int]) -> bool:
    """Reduced node antichains behave as a Boolean algebra of level-k node sets"""
    model, k = instance
    level = model.level(k)
    one, zero = TreeElement.one(model), TreeElement.zero(model)
    for size in range(len(level) + 1):
        for subset in combinations(level, size):
            e = TreeElement(model, subset)
            if e.expand(k) != set(subset):
                return False
            if (e | ~e) != one or (e & ~e) != zero or ~~e != e:
                return False
    return True


# Running


@dataclass
class CheckResult:
    """Outcome of one check over its instances"""
    name: str
    description: str
    instances: int = 0
    failures: int = 0
    counterexample: Optional[Counterexample] = None
    error: Optional[str] = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "instances": self.instances,
            "failures": self.failures,
            "passed": self.passed,
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
            "error": self.error,
            "elapsed": round(self.elapsed, 4),
        }


@dataclass
class SuiteReport:
    """Every check of one suite at the given bounds"""
    suite: str
    bounds: Dict[str, int]
    checks: List[CheckResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def title(self) -> str:
        return SUITE_TITLES.get(self.suite, self.suite)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def instance_count(self) -> int:
        return sum(c.instances for c in self.checks)

    @property
    def failure_count(self) -> int:
        return sum(c.failures for c in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "title": self.title,
            "bounds": self.bounds,
            "passed": self.passed,
            "instances": self.instance_count,
            "failures": self.failure_count,
            "elapsed": round(self.elapsed, 4),
            "checks": [c.to_dict() for c in self.checks],
        }


def resolve_suite(suite: Union[Suite, str]) -> Suite:
    """
    Raises:
        InvalidInputError: unknown suite name
    """
    if isinstance(suite, Suite):
        return suite
    if suite not in SUITE_MAP:
        raise InvalidInputError(f"Unknown suite {suite!r}; choose from {', '.join(SUITE_MAP)}")
    return SUITE_MAP[suite]


def _evaluate(predicate: Callable[[Any], bool], instance: Any) -> Tuple[bool, Optional[str]]:
    # An exception inside a predicate counts as a failure of that instance
    try:
        return bool(predicate(instance)), None
    except Exception as e:
        return False, f"{type(e).__name__}: {e}"


class SuiteRunner:
    """Run theorem suites at fixed bounds"""

    def __init__(
        self,
        max_atoms: int = DEFAULT_MAX_ATOMS,
        max_points: int = DEFAULT_MAX_POINTS,
        depth: int = DEFAULT_DEPTH
    ):
        """
        Initialize suite runner

        Args:
            max_atoms: Largest algebra swept
            max_points: Largest partition space swept
            depth: Deepest tree level probed

        Raises:
            InvalidInputError: a bound lies outside its cap
        """
        self.bounds = Bounds(max_atoms, max_points, depth)
        self.reports: Dict[Suite, SuiteReport] = {}

    def run_check(self, check: Check) -> CheckResult:
        """Sweep one check over its instances in generation order"""
        result = CheckResult(check.name, check.description)
        started = time.perf_counter()
        for instance in check.instances(self.bounds):
            result.instances += 1
            ok, error = _evaluate(check.predicate, instance)
            if ok:
                continue
            result.failures += 1
            if result.counterexample is None:
                result.counterexample = Counterexample(check.name, check.encode(instance))
                result.error = error
                logger.warning("%s failed on instance %d%s", check.name, result.instances, f" ({error})" if error else "")
        result.elapsed = time.perf_counter() - started
        logger.debug("%s: %d instances in %.3fs", check.name, result.instances, result.elapsed)
        return result

    def run_suite(self, suite: Union[Suite, str]) -> SuiteReport:
        """
        Run (or return the cached report of) one suite

        Raises:
            InvalidInputError: unknown suite name
        """
        suite = resolve_suite(suite)
        if suite in self.reports:
            return self.reports[suite]

        started = time.perf_counter()
        report = SuiteReport(suite.value, self.bounds.to_dict())
        for c in checks_for(suite):
            logger.info("running %s", c.name)
            report.checks.append(self.run_check(c))
        report.elapsed = time.perf_counter() - started
        self.reports[suite] = report
        return report

    def run_all(self, suites: Optional[Iterable[Union[Suite, str]]] = None) -> List[SuiteReport]:
        """Run the named suites (every suite by default) in order"""
        chosen = [resolve_suite(s) for s in suites] if suites is not None else list(Suite)
        return [self.run_suite(s) for s in chosen]


def replay(counterexample: Counterexample) -> CheckResult:
    """
    Re-run the named check on the recorded instance

    The returned result has one instance; it fails when the counterexample
    still reproduces.

    Raises:
        RecordError: unknown check, or an instance that does not decode
    """
    if counterexample.check not in CHECKS:
        raise RecordError(f"Unknown check {counterexample.check!r}")
    c = CHECKS[counterexample.check]
    try:
        instance = c.decode(counterexample.instance)
    except RecordError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise RecordError(f"Instance does not decode for {c.name}: {e}") from e
    ok, error = _evaluate(c.predicate, instance)
    result = CheckResult(c.name, c.description, instances=1)
    if not ok:
        result.failures = 1
        result.counterexample = counterexample
        result.error = error
    return result
