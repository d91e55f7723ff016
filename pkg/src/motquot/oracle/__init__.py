"""Independent verification machinery: Hilbert symbols with exhaustive
cross-checks, conic point searches, quaternary fixed-point forms, and
finite-field point counting."""

from ..ntheory import hilbert_symbol
from .counting import (
    CountReport,
    Presentation,
    count_affine_points,
    invariant_presentation,
    presentation_from_weights,
    render_count_table,
    twisted_orbit_count,
)
from .finitefield import FiniteField, FiniteFieldSpec, get_field
from .hilbert import (
    QuaternionSymbol,
    conic_rational_point,
    hilbert_symbol_search,
    search_conic_point,
)
from .quadform import (
    FixedPointReport,
    fixed_point_forms,
    quaternary_fixed_point_test,
)

__all__ = [
    "CountReport",
    "FiniteField",
    "FiniteFieldSpec",
    "FixedPointReport",
    "Presentation",
    "QuaternionSymbol",
    "conic_rational_point",
    "count_affine_points",
    "fixed_point_forms",
    "get_field",
    "hilbert_symbol",
    "hilbert_symbol_search",
    "invariant_presentation",
    "presentation_from_weights",
    "quaternary_fixed_point_test",
    "render_count_table",
    "search_conic_point",
    "twisted_orbit_count",
]
