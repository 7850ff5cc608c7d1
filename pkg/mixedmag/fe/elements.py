"""Reference elements, basis evaluation and the covariant Piola map."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from mixedmag.exceptions import SingularJacobianError, UnsupportedSpaceError
from mixedmag.models import (
    LOCAL_EDGES,
    DofDescriptor,
    DofEntity,
    FloatArray,
    SpaceFamily,
)
from mixedmag.quadrature import edge_rule, rule_for_degree

# monomials x^p y^q up to degree 2, shared by every element family
_POWERS = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
_NUM_MONOMIALS = len(_POWERS)

REFERENCE_VERTICES: FloatArray = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])

SUPPORTED_ORDERS: dict[SpaceFamily, tuple[int, ...]] = {
    SpaceFamily.LAGRANGE: (1, 2),
    SpaceFamily.NEDELEC: (0, 1),
    SpaceFamily.DISCONTINUOUS_P: (0, 1),
    SpaceFamily.EDGE_TRACE: (0, 1),
}


class BasisValues(NamedTuple):
    """Basis values and their curls (vector families) or gradients (scalar families)."""

    values: FloatArray
    derivatives: FloatArray


class _Functional(NamedTuple):
    """Linear functional l(p) = sum_q weight_q * direction_q . p(point_q)."""

    points: FloatArray
    weights: FloatArray
    directions: FloatArray


@dataclass(frozen=True, eq=False)
class ReferenceElement:
    """Finite element on the reference triangle (0,0),(1,0),(0,1)."""

    family: SpaceFamily
    order: int
    coefficients: FloatArray  # (ndofs, ncomp, monomials)
    descriptors: tuple[DofDescriptor, ...]
    functionals: tuple[_Functional, ...]

    @property
    def ndofs(self) -> int:
        """Return the number of local dofs."""
        return len(self.descriptors)

    @property
    def is_vector(self) -> bool:
        """Return True for vector-valued families."""
        return self.family is SpaceFamily.NEDELEC

    def dual_matrix(self) -> FloatArray:
        """Apply every dof functional to every basis function (identity if unisolvent)."""
        return _apply_functionals(self.functionals, self.coefficients).T


def legendre(order: int, s: npt.ArrayLike) -> FloatArray:
    """Legendre polynomials shifted to [0, 1], shape (n, order + 1)."""
    s = np.asarray(s, dtype=np.float64)
    columns = [np.ones_like(s), 2.0 * s - 1.0]
    return np.stack(columns[: order + 1], axis=-1)


def _monomials(points: FloatArray) -> tuple[FloatArray, FloatArray, FloatArray]:
    """Monomial values and partial derivatives at points (n, 2)."""
    x = points[:, 0:1]
    y = points[:, 1:2]
    powers = np.array(_POWERS)
    p, q = powers[:, 0], powers[:, 1]
    values = x**p * y**q
    dx = np.where(p > 0, p * x ** np.maximum(p - 1, 0) * y**q, 0.0)
    dy = np.where(q > 0, q * x**p * y ** np.maximum(q - 1, 0), 0.0)
    return values, dx, dy


def _polynomial(*terms: tuple[float, int, int]) -> FloatArray:
    """Build a scalar polynomial from (coefficient, p, q) terms."""
    coefficients = np.zeros(_NUM_MONOMIALS)
    for coefficient, p, q in terms:
        coefficients[_POWERS.index((p, q))] += coefficient
    return coefficients


def _scalar_span(degree: int) -> FloatArray:
    """Monomials of total degree <= degree, shape (m, 1, monomials)."""
    selected = [i for i, (p, q) in enumerate(_POWERS) if p + q <= degree]
    return np.eye(_NUM_MONOMIALS)[selected][:, None, :]


def _line_span(degree: int) -> FloatArray:
    """Monomials 1, s, ... in the edge parameter (stored as x), shape (m, 1, monomials)."""
    selected = [_POWERS.index((p, 0)) for p in range(degree + 1)]
    return np.eye(_NUM_MONOMIALS)[selected][:, None, :]


def _nedelec_span(order: int) -> FloatArray:
    """Spanning set of P_k^2 + x_perp * homogeneous P_k, shape (m, 2, monomials)."""
    zero = np.zeros(_NUM_MONOMIALS)
    members: list[tuple[FloatArray, FloatArray]] = []
    for scalar in _scalar_span(order)[:, 0, :]:
        members.append((scalar, zero))
        members.append((zero, scalar))
    if order == 0:
        members.append((_polynomial((-1.0, 0, 1)), _polynomial((1.0, 1, 0))))
    else:
        members.append((_polynomial((-1.0, 1, 1)), _polynomial((1.0, 2, 0))))
        members.append((_polynomial((-1.0, 0, 2)), _polynomial((1.0, 1, 1))))
    return np.array([np.stack(member) for member in members])


def _apply_functionals(
    functionals: tuple[_Functional, ...], coefficients: FloatArray
) -> FloatArray:
    """Matrix D[j, m] = l_j(p_m) for polynomials given by coefficients (m, ncomp, monomials)."""
    matrix = np.empty((len(functionals), coefficients.shape[0]))
    for row, functional in enumerate(functionals):
        values, _, _ = _monomials(functional.points)
        evaluated = np.einsum("qk,mck->mqc", values, coefficients)
        matrix[row] = np.einsum(
            "q,qc,mqc->m", functional.weights, functional.directions, evaluated
        )
    return matrix


def _point_functional(point: npt.ArrayLike) -> _Functional:
    return _Functional(np.atleast_2d(np.asarray(point, float)), np.ones(1), np.ones((1, 1)))


def _edge_moment(edge: int, moment: int) -> _Functional:
    """Tangential moment against a Legendre polynomial along a local edge."""
    start, end = REFERENCE_VERTICES[list(LOCAL_EDGES[edge])]
    s, weights = edge_rule(3)
    points = start + s[:, None] * (end - start)
    return _Functional(
        points,
        weights * legendre(moment, s)[:, moment],
        np.tile(end - start, (s.shape[0], 1)),
    )


def _interior_moment(component: int) -> _Functional:
    """Moment against a constant unit vector field."""
    rule = rule_for_degree(4)
    directions = np.zeros((rule.num_points, 2))
    directions[:, component] = 1.0
    return _Functional(rule.ref_points, 0.5 * rule.weights, directions)


def _trace_moment(moment: int) -> _Functional:
    """Normalized moment on [0, 1] against a Legendre polynomial."""
    s, weights = edge_rule(3)
    points = np.stack((s, np.zeros_like(s)), axis=1)
    return _Functional(
        points,
        (2 * moment + 1) * weights * legendre(moment, s)[:, moment],
        np.ones((s.shape[0], 1)),
    )


def _layout(
    family: SpaceFamily, order: int
) -> tuple[FloatArray, list[DofDescriptor], list[_Functional]]:
    """Spanning set, descriptors and functionals of a family."""
    descriptors: list[DofDescriptor] = []
    functionals: list[_Functional] = []
    if family is SpaceFamily.NEDELEC:
        for edge in range(3):
            for moment in range(order + 1):
                descriptors.append(DofDescriptor(DofEntity.EDGE, edge, moment))
                functionals.append(_edge_moment(edge, moment))
        if order == 1:
            for component in range(2):
                descriptors.append(DofDescriptor(DofEntity.INTERIOR, 0, component))
                functionals.append(_interior_moment(component))
        return _nedelec_span(order), descriptors, functionals
    if family is SpaceFamily.LAGRANGE:
        for vertex in range(3):
            descriptors.append(DofDescriptor(DofEntity.VERTEX, vertex, 0))
            functionals.append(_point_functional(REFERENCE_VERTICES[vertex]))
        if order == 2:
            for edge, (a, b) in enumerate(LOCAL_EDGES):
                descriptors.append(DofDescriptor(DofEntity.EDGE, edge, 0))
                functionals.append(
                    _point_functional(0.5 * (REFERENCE_VERTICES[a] + REFERENCE_VERTICES[b]))
                )
        return _scalar_span(order), descriptors, functionals
    if family is SpaceFamily.DISCONTINUOUS_P:
        if order == 0:
            descriptors.append(DofDescriptor(DofEntity.INTERIOR, 0, 0))
            functionals.append(_point_functional([1.0 / 3.0, 1.0 / 3.0]))
        else:
            for vertex in range(3):
                descriptors.append(DofDescriptor(DofEntity.INTERIOR, vertex, 0))
                functionals.append(_point_functional(REFERENCE_VERTICES[vertex]))
        return _scalar_span(order), descriptors, functionals
    for moment in range(order + 1):
        descriptors.append(DofDescriptor(DofEntity.EDGE, 0, moment))
        functionals.append(_trace_moment(moment))
    return _line_span(order), descriptors, functionals


@lru_cache(maxsize=None)
def reference_element(family: SpaceFamily, order: int) -> ReferenceElement:
    """Construct the nodal basis dual to the family's dof functionals."""
    if order not in SUPPORTED_ORDERS[family]:
        raise UnsupportedSpaceError(f"{family.value} of order {order} is not available")
    span, descriptors, functionals = _layout(family, order)
    dual = _apply_functionals(tuple(functionals), span)
    coefficients = np.einsum("im,mck->ick", np.linalg.inv(dual.T), span)
    coefficients.setflags(write=False)
    return ReferenceElement(
        family=family,
        order=order,
        coefficients=coefficients,
        descriptors=tuple(descriptors),
        functionals=tuple(functionals),
    )


def eval_basis(element: ReferenceElement, ref_points: npt.ArrayLike) -> BasisValues:
    """Evaluate the basis at reference points.

    Nedelec: values (n, ndofs, 2) and scalar curls (n, ndofs).
    Scalar families: values (n, ndofs) and gradients (n, ndofs, 2).
    Edge traces take edge parameters s in [0, 1] and return d/ds as derivative.
    """
    points = np.asarray(ref_points, dtype=np.float64)
    if element.family is SpaceFamily.EDGE_TRACE:
        points = np.stack((points.reshape(-1), np.zeros(points.size)), axis=1)
    points = points.reshape(-1, 2)
    values, dx, dy = _monomials(points)
    coefficients = element.coefficients
    if element.is_vector:
        basis = np.einsum("pk,ick->pic", values, coefficients)
        curls = np.einsum("pk,ik->pi", dx, coefficients[:, 1]) - np.einsum(
            "pk,ik->pi", dy, coefficients[:, 0]
        )
        return BasisValues(basis, curls)
    basis = np.einsum("pk,ik->pi", values, coefficients[:, 0])
    if element.family is SpaceFamily.EDGE_TRACE:
        return BasisValues(basis, np.einsum("pk,ik->pi", dx, coefficients[:, 0]))
    gradients = np.stack(
        (
            np.einsum("pk,ik->pi", dx, coefficients[:, 0]),
            np.einsum("pk,ik->pi", dy, coefficients[:, 0]),
        ),
        axis=-1,
    )
    return BasisValues(basis, gradients)


def _inverse(jacobian: FloatArray) -> tuple[FloatArray, FloatArray]:
    """Invert one (2, 2) or a stack (T, 2, 2) of Jacobians."""
    det = jacobian[..., 0, 0] * jacobian[..., 1, 1] - jacobian[..., 0, 1] * jacobian[..., 1, 0]
    scale = np.maximum(np.abs(jacobian).max(axis=(-2, -1)), 1e-300) ** 2
    if np.any(np.abs(det) <= 1e-14 * scale):
        raise SingularJacobianError("element map is not invertible")
    return np.linalg.inv(jacobian), det


def map_covariant(
    ref_values: npt.ArrayLike, ref_curls: npt.ArrayLike, jacobian: npt.ArrayLike
) -> tuple[FloatArray, FloatArray]:
    """Apply v = J^-T v_ref and curl v = curl v_ref / det J.

    With a single (2, 2) Jacobian the shapes are kept; with a stack (T, 2, 2)
    a leading element axis is added.
    """
    values = np.asarray(ref_values, dtype=np.float64)
    curls = np.asarray(ref_curls, dtype=np.float64)
    jac = np.asarray(jacobian, dtype=np.float64)
    inverse, det = _inverse(jac)
    if jac.ndim == 2:
        return values @ inverse, curls / det
    mapped = np.einsum("...c,tcd->t...d", values, inverse)
    return mapped, curls[None, ...] / det.reshape((-1,) + (1,) * curls.ndim)


def map_gradients(ref_gradients: npt.ArrayLike, jacobian: npt.ArrayLike) -> FloatArray:
    """Apply grad phi = J^-T grad phi_ref (same transform as Nedelec values)."""
    gradients = np.asarray(ref_gradients, dtype=np.float64)
    jac = np.asarray(jacobian, dtype=np.float64)
    inverse, _ = _inverse(jac)
    if jac.ndim == 2:
        return np.asarray(gradients @ inverse)
    return np.asarray(np.einsum("...c,tcd->t...d", gradients, inverse))
