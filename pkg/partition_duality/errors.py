"""Exceptions raised by partition_duality"""


class PartitionDualityError(Exception):
    """Base class for every error raised by this package"""


class AlgebraMismatchError(PartitionDualityError, ValueError):
    """Operands belong to different algebras"""


class InvalidInputError(PartitionDualityError, ValueError):
    """Input violates the shape an operation requires"""


class RefinementError(PartitionDualityError, ValueError):
    """A coarsening map was requested for a pair that does not refine"""


class SubcompletenessError(PartitionDualityError, ValueError):
    """A partition is not subcomplete"""


class CoherenceError(PartitionDualityError, ValueError):
    """An inverse-limit selection is not coherent"""


class NotAnFUltrafilterError(PartitionDualityError, ValueError):
    """An ultrafilter misses a filter partition or meets it twice"""


class ValidityError(PartitionDualityError, ValueError):
    """The candidate is not a Boolean partition algebra"""


class StabilityError(PartitionDualityError, ValueError):
    """The Boolean partition algebra is not stable"""


class NotAHomomorphismError(PartitionDualityError, ValueError):
    """A function table fails the Boolean homomorphism axioms"""


class MorphismMismatchError(PartitionDualityError, ValueError):
    """Morphisms cannot be composed or compared"""


class NotUniformlyContinuousError(PartitionDualityError, ValueError):
    """A point map fails the uniform continuity criterion"""


class MisuseError(PartitionDualityError, ValueError):
    """Operation called outside its precondition"""


class DepthOverflowError(PartitionDualityError, ValueError):
    """Requested depth exceeds the model's bound or the materialization cap"""


class RecordError(PartitionDualityError, ValueError):
    """Malformed structured-text record"""


class InternalConsistencyError(PartitionDualityError, RuntimeError):
    """A result that the theory guarantees failed its own check"""
