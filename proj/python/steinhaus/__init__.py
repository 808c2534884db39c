"""Exact interval decompositions into countably many congruent translates.

The heavy lifting lives in the compiled extension; this package re-exports
its surface: basis construction over theta = e, the group algebra, the
decomposition engine, verification, and the n-dimensional product layer.
"""

from ._core import (  # noqa: F401
    BasisSpec,
    CandidateBoundExceeded,
    Decomposition,
    DimensionMismatch,
    Error,
    ExactPoint,
    GroupElement,
    HeightCapExceeded,
    IntervalTooShort,
    InvalidEpsilon,
    InvariantViolation,
    ParseError,
    PrecisionExhausted,
    ProductDecomposition,
    RationalMatrix,
    RealInterval,
    SingularMatrix,
    Translate,
    TranslateND,
    UnknownBasisIndex,
    __version__,
    cmp_elements,
    cmp_exact,
    decompose,
    enumerate_C,
    eval_enclosure,
    find_covering_translate,
    find_group_element_in,
    new_basis,
    parse_interval,
    point_in_interval,
    power_enclosure,
    product_decompose,
    rational_in_G,
    theta_enclosure,
    translate_contains,
    translate_in_interval,
    translates_disjoint,
    verify_mapped_product,
)
