"""Flux density post-processing and L2 errors."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from mixedmag.assembly import MixedDiscretization, PrimalDiscretization, rotated_gradient
from mixedmag.const import ERROR_QUADRATURE_DEGREE
from mixedmag.exceptions import FieldSizeMismatchError
from mixedmag.fe import eval_basis, map_gradients, reference_element
from mixedmag.material import MaterialMap
from mixedmag.models import FloatArray, IntArray, Mesh, SpaceFamily
from mixedmag.quadrature import rule_for_degree

VectorFunction = Callable[[FloatArray], FloatArray]


@dataclass(frozen=True, eq=False)
class FluxField:
    """Discontinuous P_k^2 field given by nodal coefficients per element and component."""

    mesh: Mesh
    order: int
    coefficients: FloatArray  # (T, nloc, 2)

    def __post_init__(self) -> None:
        """Check the coefficient layout."""
        nloc = reference_element(SpaceFamily.DISCONTINUOUS_P, self.order).ndofs
        if self.coefficients.shape != (self.mesh.num_triangles, nloc, 2):
            raise FieldSizeMismatchError(
                f"flux coefficients of shape {self.coefficients.shape} do not match "
                f"{self.mesh.num_triangles} elements of order {self.order}"
            )

    def evaluate(self, ref_points: npt.ArrayLike) -> FloatArray:
        """Values at reference points mapped into every element, (T, n, 2)."""
        element = reference_element(SpaceFamily.DISCONTINUOUS_P, self.order)
        basis = eval_basis(element, ref_points).values
        return np.asarray(np.einsum("qi,tic->tqc", basis, self.coefficients))

    def evaluate_at(self, elements: IntArray, ref_points: FloatArray) -> FloatArray:
        """Values at one reference point per listed element, (N, 2)."""
        element = reference_element(SpaceFamily.DISCONTINUOUS_P, self.order)
        basis = eval_basis(element, ref_points).values
        return np.asarray(np.einsum("ni,nic->nc", basis, self.coefficients[elements]))

    def cell_average(self) -> FloatArray:
        """Mean value per element, (T, 2)."""
        rule = rule_for_degree(max(1, self.order))
        return np.asarray(np.einsum("q,tqc->tc", rule.weights, self.evaluate(rule.ref_points)))


def _nodal_points(order: int) -> FloatArray:
    element = reference_element(SpaceFamily.DISCONTINUOUS_P, order)
    return np.array([functional.points[0] for functional in element.functionals])


def post_b_primal(disc: PrimalDiscretization, coefficients: FloatArray) -> FluxField:
    """Exact elementwise Curl a of the Lagrange solution."""
    dofmap = disc.dofmap
    if coefficients.shape[0] != dofmap.ndofs:
        coefficients = disc.expand(coefficients)
    nodes = _nodal_points(disc.order)
    element = reference_element(SpaceFamily.LAGRANGE, disc.order + 1)
    gradients = map_gradients(eval_basis(element, nodes).derivatives, disc.mesh.jacobians)
    local = coefficients[dofmap.cell_dofs]
    flux = rotated_gradient(np.einsum("tqic,ti->tqc", gradients, local))
    return FluxField(disc.mesh, disc.order, np.ascontiguousarray(flux))


def project_elementwise(
    mesh: Mesh, order: int, weights: FloatArray, ref_points: FloatArray, values: FloatArray
) -> FluxField:
    """Elementwise L2 projection onto P_k^2 of values (T, q, 2) given at quadrature points."""
    element = reference_element(SpaceFamily.DISCONTINUOUS_P, order)
    basis = eval_basis(element, ref_points).values  # (q, n)
    mass = np.einsum("tq,qi,qj->tij", weights, basis, basis)
    rhs = np.einsum("tq,qi,tqc->tic", weights, basis, values)
    return FluxField(mesh, order, np.linalg.solve(mass, rhs))


def post_b_mixed(
    mix: MixedDiscretization, materials: MaterialMap, field: FloatArray
) -> FluxField:
    """Elementwise L2 projection of g'(H) with the formulation's quadrature."""
    flux = materials.g_grad(mix.mesh.region_tags, mix.field_at_points(field))
    return project_elementwise(mix.mesh, mix.order, mix.weights, mix.rule.ref_points, flux)


def l2_error(
    field: FluxField,
    reference: FluxField | VectorFunction,
    degree: int = ERROR_QUADRATURE_DEGREE,
) -> float:
    """sqrt(sum_T int_T |field - reference|^2).

    A FluxField reference may live on the same mesh or on a uniform refinement
    of it; the integration then runs over the finer of the two meshes.
    """
    rule = rule_for_degree(degree)
    if callable(reference):
        mesh = field.mesh
        difference = field.evaluate(rule.ref_points) - np.asarray(
            reference(mesh.to_physical(rule.ref_points))
        )
    elif reference.mesh is field.mesh:
        mesh = field.mesh
        difference = field.evaluate(rule.ref_points) - reference.evaluate(rule.ref_points)
    else:
        fine, coarse = (reference, field) if _refines(reference.mesh, field.mesh) else (
            field,
            reference,
        )
        mesh = fine.mesh
        points = mesh.to_physical(rule.ref_points)
        cells = np.repeat(mesh.ancestors(coarse.mesh), rule.num_points)
        coarse_values = coarse.evaluate_at(
            cells, coarse.mesh.to_reference(cells, points.reshape(-1, 2))
        ).reshape(points.shape)
        difference = fine.evaluate(rule.ref_points) - coarse_values
    weights = np.outer(mesh.areas, rule.weights)
    return float(np.sqrt(np.sum(weights * np.sum(difference * difference, axis=-1))))


def _refines(fine: Mesh, coarse: Mesh) -> bool:
    mesh: Mesh | None = fine
    while mesh is not None:
        if mesh is coarse:
            return True
        mesh = mesh.coarser
    return False
