"""Exact arithmetic layer: rationals, polynomials, number fields, matrices,
and root-of-unity factorization."""

from .field import (
    QQ,
    FieldElem,
    NumberField,
    cyclotomic_field,
    cyclotomic_map,
    elem_to_str,
    galois_conj,
    multiplicative_order,
    norm_to_base,
    quadratic_field,
    relative_quadratic_field,
    trace_to_base,
)
from .factor import (
    factor_unity_poly,
    linear_roots,
    poly_over_field,
)
from .matrix import Matrix
from .poly import (
    RAT,
    UniPoly,
    cyclotomic_poly,
    order_of_t_mod,
    poly_const,
    poly_ext_gcd,
    poly_gcd,
    poly_x,
    xn_minus_1,
)

__all__ = [
    "QQ",
    "RAT",
    "FieldElem",
    "Matrix",
    "NumberField",
    "UniPoly",
    "cyclotomic_field",
    "cyclotomic_map",
    "cyclotomic_poly",
    "elem_to_str",
    "factor_unity_poly",
    "galois_conj",
    "linear_roots",
    "multiplicative_order",
    "norm_to_base",
    "order_of_t_mod",
    "poly_const",
    "poly_ext_gcd",
    "poly_gcd",
    "poly_over_field",
    "poly_x",
    "quadratic_field",
    "relative_quadratic_field",
    "trace_to_base",
    "xn_minus_1",
]
