"""Interval-partition certificates for the Stanley depth of squarefree
Veronese ideals: block structures on the circular representation of [n],
lifted interval families, a layered partition builder, an independent
verifier, and a brute-force exact oracle for tiny instances."""

from .blocks import (
    BlockStructure,
    Density,
    ValidationReport,
    block_structure,
    check_tight_pair_disjoint,
    f_delta,
    validate_block_structure,
)
from .builder import (
    BuilderTrace,
    DEFAULT_SWEEP_CAP,
    IntervalPartition,
    LayerTrace,
    LayeredCertificate,
    build_partition,
    build_partition_k3,
    certify_layered,
    coverage_query,
)
from .core import (
    CircularBlock,
    CircularSet,
    Regime,
    RegimeDecomposition,
    conjectured_sdepth,
    k3_band_exact,
    large_n_density_shift,
    lower_bound_large_n,
    regime_of,
    sdepth_upper_bound,
    threshold,
)
from .errors import (
    DensityOutOfRangeError,
    EmptySetError,
    InternalCheckError,
    InvalidPartitionError,
    PartitionFileError,
    PreconditionViolatedError,
    SdepthError,
    SizeMismatchError,
    SOutOfRangeError,
    UniverseMismatchError,
)
from .lifting import (
    IntervalFamily,
    LiftParams,
    PosetInterval,
    check_cross_level_disjoint,
    check_mixed_density_disjoint,
    check_superset_closure,
    extended_block_structure,
    interval_family,
    is_covered,
    lift,
    lifted_closure,
    validate_lift_params,
)
from .verify import (
    DEFAULT_ORACLE_BUDGET,
    SdepthReport,
    VerificationVerdict,
    exact_sdepth,
    render_stanley_decomposition,
    sdepth_of_partition,
    sdepth_report,
    verify_partition,
)

__version__ = "0.1.0"

__all__ = [
    "BlockStructure",
    "BuilderTrace",
    "CircularBlock",
    "CircularSet",
    "DEFAULT_ORACLE_BUDGET",
    "DEFAULT_SWEEP_CAP",
    "Density",
    "DensityOutOfRangeError",
    "EmptySetError",
    "IntervalFamily",
    "IntervalPartition",
    "InternalCheckError",
    "InvalidPartitionError",
    "LayerTrace",
    "LayeredCertificate",
    "LiftParams",
    "PartitionFileError",
    "PosetInterval",
    "PreconditionViolatedError",
    "Regime",
    "RegimeDecomposition",
    "SdepthError",
    "SdepthReport",
    "SizeMismatchError",
    "SOutOfRangeError",
    "UniverseMismatchError",
    "ValidationReport",
    "VerificationVerdict",
    "block_structure",
    "build_partition",
    "build_partition_k3",
    "certify_layered",
    "check_cross_level_disjoint",
    "check_mixed_density_disjoint",
    "check_superset_closure",
    "check_tight_pair_disjoint",
    "conjectured_sdepth",
    "coverage_query",
    "exact_sdepth",
    "extended_block_structure",
    "f_delta",
    "interval_family",
    "is_covered",
    "k3_band_exact",
    "large_n_density_shift",
    "lift",
    "lifted_closure",
    "lower_bound_large_n",
    "regime_of",
    "render_stanley_decomposition",
    "sdepth_of_partition",
    "sdepth_report",
    "sdepth_upper_bound",
    "threshold",
    "validate_block_structure",
    "validate_lift_params",
    "verify_partition",
]
