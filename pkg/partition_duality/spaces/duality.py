"""The contravariant functors between partition algebras and partition spaces"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Union

from ..algebra.base import FunctionTable, GroundAlgebra
from ..algebra.morphisms import PartitionHom, compose
from ..algebra.partition_algebra import (
    BooleanPartitionAlgebra,
    FUltrafilter,
    enumerate_f_ultrafilters,
    iota_mask,
    stability_report,
)
from ..algebra.partitions import Partition
from ..errors import (
    InternalConsistencyError,
    InvalidInputError,
    NotUniformlyContinuousError,
    StabilityError,
)
from .partition_space import (
    PartitionSpace,
    UniformMap,
    c_map,
    compose_maps,
    is_complete,
    is_separating,
    is_uniformly_continuous,
    pull_back_partition,
)

logger = logging.getLogger(__name__)


def _stable_spectrum(bpa: BooleanPartitionAlgebra) -> List[FUltrafilter]:
    report = stability_report(bpa)
    if not report.all_true:
        raise StabilityError(f"Boolean partition algebra is not stable: {report.to_dict()}")
    return enumerate_f_ultrafilters(bpa)


@lru_cache(maxsize=4096)
def spectrum_space(bpa: BooleanPartitionAlgebra) -> PartitionSpace:
    """
    S*(B, F): the F-ultrafilters with crevasses ι''(p)

    Point i is the i-th F-ultrafilter in atom order.

    Raises:
        StabilityError: the algebra is not stable
    """
    spectrum = _stable_spectrum(bpa)
    if not spectrum:
        return PartitionSpace.empty()
    points = GroundAlgebra(len(spectrum))
    # ι'' of the least member generates the whole crevasse filter
    blocks = {iota_mask(spectrum, b) for b in bpa.filter.base.blocks} - {0}
    logger.debug("spectrum space: %d points", len(spectrum))
    return PartitionSpace(len(spectrum), (Partition(points, tuple(blocks)),))


@lru_cache(maxsize=4096)
def algebra_of_space(space: PartitionSpace) -> BooleanPartitionAlgebra:
    """
    B*(X, M) = ({∅} ∪ ∪M, M), checked subcomplete and stable

    Raises:
        InvalidInputError: the space is empty
    """
    bpa = space.induced
    if not bpa.subcomplete_flag or not stability_report(bpa).all_true:
        raise InternalConsistencyError(f"Induced algebra of {space.to_dict()} is not subcomplete and stable")
    return bpa


def psi(bpa: BooleanPartitionAlgebra) -> PartitionHom:
    """
    ψ(x) = ι(x), into B*(S*(B, F))

    Raises:
        StabilityError: the algebra is not stable
    """
    spectrum = _stable_spectrum(bpa)
    space = spectrum_space(bpa)
    target = algebra_of_space(space)
    table = FunctionTable.from_callable(
        bpa.algebra,
        target.algebra,
        lambda m: target.from_parent(iota_mask(spectrum, m)),
    )
    return PartitionHom(table, bpa, target)


@lru_cache(maxsize=4096)
def b_star_map(f: UniformMap) -> PartitionHom:
    """
    B*(f)(R) = f_{-1}(R), from B*(Y, N) to B*(X, M)

    Raises:
        NotUniformlyContinuousError: f fails the uniform continuity criterion
    """
    if not is_uniformly_continuous(f):
        raise NotUniformlyContinuousError(f"Map {list(f.table)} is not uniformly continuous")
    source = algebra_of_space(f.target)
    target = algebra_of_space(f.source)

    def pull_back(mask: int) -> int:
        try:
            return target.from_parent(f.preimage(source.to_parent(mask)))
        except InvalidInputError as e:
            raise InternalConsistencyError(f"Preimage left the induced algebra: {e}") from e

    table = FunctionTable.from_callable(source.algebra, target.algebra, pull_back)
    return PartitionHom(table, source, target)


def pull_back_ultrafilter(phi: PartitionHom, u: FUltrafilter) -> FUltrafilter:
    """
    φ_{-1}(U), an F-ultrafilter of the source

    Raises:
        InternalConsistencyError: the preimage is not an F-ultrafilter
    """
    source = phi.source.algebra
    atoms = [i for i in range(source.atom_count) if u.contains(phi(1 << i))]
    if len(atoms) != 1:
        raise InternalConsistencyError(f"Preimage of {u.label} contains {len(atoms)} atoms")
    pulled = FUltrafilter(source, atoms[0])
    for m in range(source.size):
        if pulled.contains(m) != u.contains(phi(m)):
            raise InternalConsistencyError(f"Preimage of {u.label} is not principal at atom {atoms[0]}")
    for p in phi.source.filter.witnesses():
        if sum(1 for b in p.blocks if pulled.contains(b)) != 1:
            raise InternalConsistencyError(f"Preimage of {u.label} is not an F-ultrafilter")
    return pulled


@lru_cache(maxsize=4096)
def s_star_map(phi: PartitionHom) -> UniformMap:
    """
    S*(φ)(U) = φ_{-1}(U), from S*(B, G) to S*(A, F)

    Raises:
        StabilityError: either algebra is not stable
    """
    source_space = spectrum_space(phi.target)
    target_space = spectrum_space(phi.source)
    position = {u: i for i, u in enumerate(enumerate_f_ultrafilters(phi.source))}
    table = tuple(position[pull_back_ultrafilter(phi, u)] for u in enumerate_f_ultrafilters(phi.target))
    result = UniformMap(source_space, target_space, table)
    if not is_uniformly_continuous(result):
        raise InternalConsistencyError("Induced spectrum map is not uniformly continuous")
    return result


@lru_cache(maxsize=4096)
def c_uniform_map(space: PartitionSpace) -> UniformMap:
    """𝒞 as a point map X → S*(B*(X, M))"""
    bpa = algebra_of_space(space)
    completion_space = spectrum_space(bpa)
    position = {u: i for i, u in enumerate(enumerate_f_ultrafilters(bpa))}
    table = tuple(position[c_map(space, x)] for x in range(space.points))
    return UniformMap(space, completion_space, table)


@dataclass(frozen=True)
class CompletionReport:
    """Which conclusions about 𝒞 hold for this space"""
    separating: bool
    complete: bool
    uniformly_continuous: bool
    dense: bool
    embedding: bool
    homeomorphism: bool

    def to_dict(self) -> Dict[str, bool]:
        return {
            "separating": self.separating,
            "complete": self.complete,
            "uniformly_continuous": self.uniformly_continuous,
            "dense": self.dense,
            "embedding": self.embedding,
            "homeomorphism": self.homeomorphism,
        }


@dataclass(frozen=True)
class CompletionResult:
    space: PartitionSpace
    c_map: UniformMap
    report: CompletionReport

    def to_dict(self) -> Dict[str, Any]:
        return {
            "completion": self.space.to_dict(),
            "c_map": list(self.c_map.table),
            "report": self.report.to_dict(),
        }


def _is_dense(c: UniformMap) -> bool:
    # Every nonempty crevasse block of the completion meets the image
    image = 0
    for y in c.table:
        image |= 1 << y
    witnesses = c.target.crevasse_filter.witnesses()
    return all(block & image for p in witnesses for block in p.blocks)


def _is_embedding(c: UniformMap) -> bool:
    # Injective, and the least crevasse pulls back to the source's
    if not c.is_injective:
        return False
    pulled = pull_back_partition(c, c.target.crevasse_filter.base)
    return pulled == c.source.crevasse_filter.base


def completion(space: PartitionSpace) -> CompletionResult:
    """
    The completion S*(B*(X, M)) with 𝒞, and which of its properties hold

    Raises:
        InvalidInputError: the space is empty
    """
    c = c_uniform_map(space)
    embedding = _is_embedding(c)
    report = CompletionReport(
        separating=is_separating(space),
        complete=is_complete(space),
        uniformly_continuous=is_uniformly_continuous(c),
        dense=_is_dense(c),
        embedding=embedding,
        homeomorphism=embedding and c.is_surjective,
    )
    return CompletionResult(c.target, c, report)


@dataclass(frozen=True)
class DualityWitness:
    """
    Forward and backward maps of a round trip, with the checked laws

    `kind` is "algebra" (partition homomorphisms) or "space" (uniform maps).
    """
    kind: str
    forward: Union[PartitionHom, UniformMap]
    backward: Union[PartitionHom, UniformMap]
    laws: Dict[str, bool] = field(default_factory=dict)

    def recheck(self) -> Dict[str, bool]:
        """Recompute the laws from the stored maps"""
        return _round_trip_laws(self.kind, self.forward, self.backward)

    @property
    def consistent(self) -> bool:
        return self.recheck() == self.laws

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "forward": self.forward.to_dict(), "backward": self.backward.to_dict(), "laws": self.laws}


def _round_trip_laws(kind: str, forward, backward) -> Dict[str, bool]:
    if kind == "algebra":
        composite = compose(forward, backward)
        return {
            "composite_is_identity": composite.table == FunctionTable.identity(forward.source.algebra),
            "forward_bijective": forward.table.is_bijective,
        }
    if kind == "space":
        composite = compose_maps(forward, backward)
        return {
            "composite_is_identity": composite.table == tuple(range(forward.source.points)),
            "forward_bijective": forward.is_injective and forward.is_surjective,
        }
    raise InvalidInputError(f"Unknown round trip kind {kind!r}")


def algebra_round_trip(space: PartitionSpace) -> DualityWitness:
    """B*(𝒞_X) ∘ ψ_{B*(X, M)}, which is the identity on B*(X, M)"""
    forward = psi(algebra_of_space(space))
    backward = b_star_map(c_uniform_map(space))
    return DualityWitness("algebra", forward, backward, _round_trip_laws("algebra", forward, backward))


def space_round_trip(bpa: BooleanPartitionAlgebra) -> DualityWitness:
    """S*(ψ_B) ∘ 𝒞_{S*(B, F)}, which is the identity on S*(B, F)"""
    forward = c_uniform_map(spectrum_space(bpa))
    backward = s_star_map(psi(bpa))
    return DualityWitness("space", forward, backward, _round_trip_laws("space", forward, backward))


def naturality_spaces(f: UniformMap) -> bool:
    """S*(B*(f)) ∘ 𝒞_X = 𝒞_Y ∘ f"""
    left = compose_maps(c_uniform_map(f.source), s_star_map(b_star_map(f)))
    right = compose_maps(f, c_uniform_map(f.target))
    return left.table == right.table


def naturality_algebras(f: PartitionHom) -> bool:
    """B*(S*(f)) ∘ ψ_A = ψ_B ∘ f"""
    left = compose(psi(f.source), b_star_map(s_star_map(f)))
    right = compose(f, psi(f.target))
    return left.table == right.table
