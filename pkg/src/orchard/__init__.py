"""Exact-arithmetic toolkit for the Orchard two-coloring of generic planar
point configurations: predicates, chirotopes, flips and contractions,
monochromatic families, and an exhaustive order-type census."""

from .errors import (
    BudgetExceededError,
    ConeOutOfRangeError,
    IllegalFlipError,
    IndexOutOfRangeError,
    InvalidChirotopeError,
    MalformedFileError,
    NonGenericError,
    NotClosePairError,
    OrchardError,
    PlacementFailedError,
    PointFormatError,
    PrecisionExhaustedError,
)
from .geometry import (
    Configuration,
    LemmaDecomposition,
    OrchardPartition,
    Point,
    hull_indices,
    is_generic,
    lemma_decomposition,
    orchard_partition,
    orient,
    separating_count,
)
from .ordertype import (
    CanonicalKey,
    Chirotope,
    ChirotopeValidation,
    canonical_key,
    chirotope_of,
    hull_size_chi,
    is_isomorphic,
    orchard_partition_chi,
    separating_count_chi,
    validate_chirotope,
)

__all__ = [
    "BudgetExceededError",
    "CanonicalKey",
    "Chirotope",
    "ChirotopeValidation",
    "ConeOutOfRangeError",
    "Configuration",
    "IllegalFlipError",
    "IndexOutOfRangeError",
    "InvalidChirotopeError",
    "LemmaDecomposition",
    "MalformedFileError",
    "NonGenericError",
    "NotClosePairError",
    "OrchardError",
    "OrchardPartition",
    "PlacementFailedError",
    "Point",
    "PointFormatError",
    "PrecisionExhaustedError",
    "canonical_key",
    "chirotope_of",
    "hull_indices",
    "hull_size_chi",
    "is_generic",
    "is_isomorphic",
    "lemma_decomposition",
    "orchard_partition",
    "orchard_partition_chi",
    "orient",
    "separating_count",
    "separating_count_chi",
    "validate_chirotope",
]
