"""Configuration and constants"""
import os
from enum import Enum
from pathlib import Path

from dotenv import load_dotenv

PROJECT_ROOT = Path(__file__).parent.parent

# Load environment variables
load_dotenv(PROJECT_ROOT / ".env")


def _env_int(name: str, default: int) -> int:
    """Read an integer setting, falling back to the default on bad values"""
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


class Suite(Enum):
    """Theorem suites run by `verify`"""
    LATTICE = "lattice"
    BPA = "bpa"
    HOM = "hom"
    DUALITY = "duality"
    TREE = "tree"


# Hard caps
ATOM_CAP = 16
TREE_DEPTH_BOUND = _env_int("PD_TREE_DEPTH_BOUND", 12)

# Desk-scale sweep bounds (CLI defaults)
DEFAULT_MAX_ATOMS = _env_int("PD_MAX_ATOMS", 4)
DEFAULT_MAX_POINTS = _env_int("PD_MAX_POINTS", 4)
DEFAULT_DEPTH = _env_int("PD_DEPTH", 8)

# Above this many blocks in a filter's least member, member-quantified checks
# only look at the least member and the generators
EXHAUSTIVE_BLOCK_LIMIT = _env_int("PD_EXHAUSTIVE_BLOCK_LIMIT", 6)

# Function-table sweep sizes for the homomorphism suite (4^8 tables)
HOM_SWEEP_SOURCE_ATOMS = 3
HOM_SWEEP_TARGET_ATOMS = 2

# Morphism and naturality sweeps stay below this many atoms / points
MORPHISM_SWEEP_LIMIT = 3

# Brute-force ultrafilter search stays below this many atoms
ORACLE_ATOM_LIMIT = 4

# Saturated truncations add 2^(2^depth) generators; keep them shallow
SATURATION_DEPTH_LIMIT = 3

# Exhaustive node-family sweeps in the tree suite
NODE_SWEEP_DEPTH = 2

# Suite mapping
SUITE_MAP = {suite.value: suite for suite in Suite}

SUITE_TITLES = {
    "lattice": "Partition lattice",
    "bpa": "Boolean partition algebras",
    "hom": "Homomorphisms and partitional maps",
    "duality": "Spaces, spectra and duality",
    "tree": "Tree models",
}

OUTPUT_FORMATS = ("json", "text")

# Exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
