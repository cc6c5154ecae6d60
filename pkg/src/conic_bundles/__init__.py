"""Exact arithmetic of conic bundle surfaces over Q and its quadratic extensions."""
from .arith import QuadElem, normalize_discriminant, parse_rational
from .brauer import (
    BrauerQuotient,
    ConicBundleData,
    FiberDatum,
    base_change_locus,
    brauer_quotient,
    classify_nonsurjective,
    critical_extensions_four_fibers,
    norm_vector_space,
    problematic_set_M,
    restriction_map,
    singular_locus,
)
from .errors import (
    ComputationLimitError,
    ConicBundleError,
    DegenerateInputError,
    DepthExhaustedError,
    FactorizationLimitError,
    ParseError,
    PrecisionError,
    UnsupportedError,
)
from .local import HALF, ZERO, InvariantValue, Place, hilbert_symbol, symbol_value_set
from .obstruction import (
    CITATIONS,
    Verdict,
    adelic_solvable,
    bm_obstruction_quadratic,
    chatelet_local_solvable,
    evaluation_image,
    hasse_verdict,
    parity_criterion,
)
from .poly import Poly

__all__ = [
    "CITATIONS", "HALF", "ZERO",
    "BrauerQuotient", "ComputationLimitError", "ConicBundleData", "ConicBundleError",
    "DegenerateInputError", "DepthExhaustedError", "FactorizationLimitError", "FiberDatum",
    "InvariantValue", "ParseError", "Place", "Poly", "PrecisionError", "QuadElem",
    "UnsupportedError", "Verdict",
    "adelic_solvable", "base_change_locus", "bm_obstruction_quadratic", "brauer_quotient",
    "chatelet_local_solvable", "classify_nonsurjective", "critical_extensions_four_fibers",
    "evaluation_image", "hasse_verdict", "hilbert_symbol", "normalize_discriminant",
    "norm_vector_space", "parity_criterion", "parse_rational", "problematic_set_M",
    "restriction_map", "singular_locus", "symbol_value_set",
]
