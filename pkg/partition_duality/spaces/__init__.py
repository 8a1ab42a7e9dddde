# Space side: partition spaces, the duality functors and tree models
from .partition_space import PartitionSpace, UniformMap
from .duality import CompletionResult, DualityWitness
from .tree_models import BranchDescriptor, TreeElement, TreeModel, TreePartition
