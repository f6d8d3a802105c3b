"""Coverage-based regression test selection and prioritization."""

from .errors import (
    GoldenMismatchError,
    IngestWarning,
    MismatchError,
    OverlapError,
    ParseError,
    SemanticError,
    TcspError,
    UnknownStatementError,
    UnknownTestError,
)
from .matrix import ChangeSet, CoverageMatrix, validate
from .prioritization import (
    PrioritizedSuite,
    TraceStep,
    append_unchosen,
    coverage_curve,
    prioritization_metrics,
    prioritize,
)
from .selection import SelectionPartition, select, selection_metrics

__version__ = "0.1.0"

__all__ = [
    "ChangeSet",
    "CoverageMatrix",
    "GoldenMismatchError",
    "IngestWarning",
    "MismatchError",
    "OverlapError",
    "ParseError",
    "PrioritizedSuite",
    "SelectionPartition",
    "SemanticError",
    "TcspError",
    "TraceStep",
    "UnknownStatementError",
    "UnknownTestError",
    "append_unchosen",
    "coverage_curve",
    "prioritization_metrics",
    "prioritize",
    "select",
    "selection_metrics",
    "validate",
]
