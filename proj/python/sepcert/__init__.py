"""Two-qubit separability certification.

Thin wrapper around the C++ core: the chiral-frame separability criterion
with an exact PPT cross-check, plus concurrence and CHSH diagnostics.
"""

from ._sepcert import (
    CriterionReport,
    DensityMatrix,
    ExpansionCoefficients,
    HefeiExpectations,
    HefeiMargins,
    LocalFrame,
    PptResult,
    PureState,
    SchmidtForm,
    SearchConfig,
    SepcertError,
    certify,
    chsh_max,
    concurrence,
    correlation_matrix,
    expansion_coefficients,
    hefei_margins,
    partial_time_reversal,
    partial_transpose,
    ppt_test,
    pure_to_density,
    random_mixed,
    random_pure,
    random_separable,
    schmidt_decompose,
    seed_frames,
    validate_density,
    verify_algebra,
    werner,
    __version__,
)

__all__ = [
    "CriterionReport",
    "DensityMatrix",
    "ExpansionCoefficients",
    "HefeiExpectations",
    "HefeiMargins",
    "LocalFrame",
    "PptResult",
    "PureState",
    "SchmidtForm",
    "SearchConfig",
    "SepcertError",
    "certify",
    "chsh_max",
    "concurrence",
    "correlation_matrix",
    "expansion_coefficients",
    "hefei_margins",
    "partial_time_reversal",
    "partial_transpose",
    "ppt_test",
    "pure_to_density",
    "random_mixed",
    "random_pure",
    "random_separable",
    "schmidt_decompose",
    "seed_frames",
    "validate_density",
    "verify_algebra",
    "werner",
    "__version__",
]
