"""Local arithmetic at the places of Q and of quadratic fields."""
from .discs import DEFAULT_MAX_DEPTH, INF
from .hilbert import (
    candidate_places,
    conic_solvable_over_local_ext,
    hilbert_symbol,
    is_square_at,
    ramified_places,
    square_in_local_quad_ext,
)
from .padic import DEFAULT_PRECISION, PadicNum, padic_is_square, padic_sqrt
from .places import HALF, ZERO, InvariantValue, LocalQuadExt, Place, splitting_type, sumset
from .values import ValueSet, chatelet_symbol_at, symbol_value_set

__all__ = [
    "DEFAULT_MAX_DEPTH", "DEFAULT_PRECISION", "HALF", "INF", "ZERO",
    "InvariantValue", "LocalQuadExt", "PadicNum", "Place", "ValueSet",
    "candidate_places", "chatelet_symbol_at", "conic_solvable_over_local_ext",
    "hilbert_symbol", "is_square_at", "padic_is_square", "padic_sqrt",
    "ramified_places", "splitting_type", "square_in_local_quad_ext",
    "sumset", "symbol_value_set",
]
