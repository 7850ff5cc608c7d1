"""Finite element spaces on triangles."""

from .dofmap import build_dofmap
from .elements import (
    REFERENCE_VERTICES,
    BasisValues,
    ReferenceElement,
    eval_basis,
    legendre,
    map_covariant,
    map_gradients,
    reference_element,
)
from .space import (
    curl_matrix,
    curl_rank,
    element_matrix_to_global,
    element_quadrature,
    evaluate_at,
    evaluate_field,
    interpolate,
    locate_in_ancestors,
    mapped_basis,
    prolongate,
    trace_moments,
)

__all__ = [
    "REFERENCE_VERTICES",
    "BasisValues",
    "ReferenceElement",
    "build_dofmap",
    "curl_matrix",
    "curl_rank",
    "element_matrix_to_global",
    "element_quadrature",
    "eval_basis",
    "evaluate_at",
    "evaluate_field",
    "interpolate",
    "legendre",
    "locate_in_ancestors",
    "map_covariant",
    "map_gradients",
    "mapped_basis",
    "prolongate",
    "reference_element",
    "trace_moments",
]
