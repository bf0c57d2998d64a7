"""
Constants used throughout the nbcube toolkit.
"""

from dataclasses import dataclass
from enum import Enum, IntEnum
from pathlib import Path
from typing import Optional

# Search defaults
DEFAULT_BUDGET = 4  # largest fault-set size tried by the exact search
DEFAULT_WORKERS = 1  # reproducibility first
WORKERS_ENV_VAR = "NBCUBE_WORKERS"
CHUNKS_PER_WORKER = 4  # subset chunks handed to each worker per layer

# Certificate format
CERTIFICATE_VERSION = 1

# CSV header of the `table` command
TABLE_COLUMNS = ("n", "k", "delta", "formula", "search", "match", "witness")

# Logging
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Vertices of cubes with more than this many symbols per digit are printed dotted
MAX_PLAIN_DIGIT_RADIX = 10


class Classification(Enum):
    """Category of a graph as used by the neighbor-connectivity definition"""

    EMPTY = "Empty"
    COMPLETE = "Complete"
    DISCONNECTED = "Disconnected"
    OTHER = "Other"

    @property
    def qualifies(self) -> bool:
        """Whether a survival graph of this kind terminates the search"""
        return self is not Classification.OTHER


class Symmetry(Enum):
    """Symmetry assumption the exact search may exploit"""

    NONE = "none"
    VERTEX_TRANSITIVE = "vertex_transitive"


class OutputFormat(Enum):
    """Output formats of the command-line interface"""

    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class ExitCode(IntEnum):
    """Process exit codes of the command-line interface"""

    OK = 0
    VERIFICATION_FAILED = 1
    USAGE_ERROR = 2
    BUDGET_EXHAUSTED = 3


class DiagnosticCode(Enum):
    """Failure kinds reported by the certificate validator"""

    MALFORMED_SPEC = "MalformedSpec"
    VERTEX_OUT_OF_RANGE = "VertexOutOfRange"
    SAME_ENDPOINTS = "SameEndpoints"
    UNHEALTHY_ENDPOINT = "UnhealthyEndpoint"
    EMPTY_PATH = "EmptyPath"
    WRONG_ENDPOINT = "WrongEndpoint"
    REPEATED_VERTEX = "RepeatedVertex"
    NOT_ADJACENT = "NotAdjacent"
    UNHEALTHY_VERTEX = "UnhealthyVertex"
    NOT_INTERNALLY_DISJOINT = "NotInternallyDisjoint"
    TOO_FEW_PATHS = "TooFewPaths"
    BOUND_MISMATCH = "BoundMismatch"


@dataclass(frozen=True)
class RunConfig:
    """Settings of one command-line run"""

    command: str
    n_values: tuple[int, ...] = ()
    k_values: tuple[int, ...] = ()
    group: Optional[str] = None
    generators: Optional[str] = None
    budget: int = DEFAULT_BUDGET
    symmetry: Symmetry = Symmetry.VERTEX_TRANSITIVE
    workers: int = DEFAULT_WORKERS
    output_format: OutputFormat = OutputFormat.TEXT
    output_path: Optional[Path] = None

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise ValueError(f"worker count must be at least 1, got {self.workers}")
        if self.budget < 0:
            raise ValueError(f"budget must be non-negative, got {self.budget}")
