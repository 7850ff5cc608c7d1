"""Mapped bases, field evaluation and interpolation on a mesh."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
import numpy.typing as npt
import scipy.sparse as sp

from mixedmag.fe.dofmap import build_dofmap
from mixedmag.fe.elements import (
    BasisValues,
    eval_basis,
    legendre,
    map_covariant,
    map_gradients,
    reference_element,
)
from mixedmag.models import DofMap, FloatArray, Mesh, QuadRule, SpaceFamily
from mixedmag.quadrature import edge_rule, rule_for_degree

FieldFunction = Callable[[FloatArray], FloatArray]


def element_quadrature(mesh: Mesh, degree: int) -> tuple[QuadRule, FloatArray]:
    """Quadrature rule of at least `degree` and its physical weights (T, n)."""
    rule = rule_for_degree(degree)
    return rule, np.outer(mesh.areas, rule.weights)


def mapped_basis(dofmap: DofMap, mesh: Mesh, ref_points: npt.ArrayLike) -> BasisValues:
    """Signed physical basis functions on every element.

    Nedelec: values (T, n, nloc, 2), curls (T, n, nloc).
    Scalar families: values (T, n, nloc), gradients (T, n, nloc, 2).
    """
    element = reference_element(dofmap.family, dofmap.order)
    ref = eval_basis(element, ref_points)
    signs = dofmap.cell_signs[:, None, :]
    if element.is_vector:
        values, curls = map_covariant(ref.values, ref.derivatives, mesh.jacobians)
        return BasisValues(values * signs[..., None], curls * signs)
    gradients = map_gradients(ref.derivatives, mesh.jacobians)
    values = np.broadcast_to(ref.values, (mesh.num_triangles,) + ref.values.shape)
    return BasisValues(values * signs, gradients * signs[..., None])


def evaluate_field(
    dofmap: DofMap, coefficients: FloatArray, mesh: Mesh, ref_points: npt.ArrayLike
) -> BasisValues:
    """Field values and curls/gradients at mapped reference points on every element."""
    basis = mapped_basis(dofmap, mesh, ref_points)
    local = coefficients[dofmap.cell_dofs]
    if basis.values.ndim == 4:
        return BasisValues(
            np.einsum("tqic,ti->tqc", basis.values, local),
            np.einsum("tqi,ti->tq", basis.derivatives, local),
        )
    return BasisValues(
        np.einsum("tqi,ti->tq", basis.values, local),
        np.einsum("tqic,ti->tqc", basis.derivatives, local),
    )


def interpolate(dofmap: DofMap, mesh: Mesh, fn: FieldFunction) -> FloatArray:
    """Canonical interpolant of fn by the element dof functionals.

    `fn` maps physical points (..., 2) to values (...,) for scalar spaces or
    (..., 2) for Nedelec spaces. Shared dofs take the value computed on the
    last element visiting them; for continuous fn all visits agree.
    """
    if dofmap.family is SpaceFamily.EDGE_TRACE:
        raise ValueError("edge traces are interpolated through trace_moments")
    element = reference_element(dofmap.family, dofmap.order)
    local = np.empty((mesh.num_triangles, element.ndofs))
    for column, functional in enumerate(element.functionals):
        physical = mesh.to_physical(functional.points)
        values = np.asarray(fn(physical), dtype=np.float64)
        if element.is_vector:
            # pull back: v_ref = J^T v
            pulled = np.einsum("tdc,tqd->tqc", mesh.jacobians, values)
        else:
            pulled = values[..., None]
        local[:, column] = np.einsum(
            "q,qc,tqc->t", functional.weights, functional.directions, pulled
        )
    result = np.zeros(dofmap.ndofs)
    result[dofmap.cell_dofs] = local * dofmap.cell_signs
    return result


def trace_moments(
    dofmap: DofMap, mesh: Mesh, fn: FieldFunction, num_points: int = 4
) -> FloatArray:
    """L2 projection of a scalar function onto the edge trace space, edge by edge."""
    if dofmap.edge_dofs is None:
        raise ValueError("trace moments need an edge trace dofmap")
    s, weights = edge_rule(num_points)
    start = mesh.nodes[mesh.edges[:, 0]]
    end = mesh.nodes[mesh.edges[:, 1]]
    points = start[:, None, :] + s[None, :, None] * (end - start)[:, None, :]
    values = np.asarray(fn(points), dtype=np.float64)
    basis = legendre(dofmap.order, s)
    scale = 2.0 * np.arange(dofmap.order + 1) + 1.0
    moments = np.einsum("q,eq,qm->em", weights, values, basis) * scale
    result = np.zeros(dofmap.ndofs)
    result[dofmap.edge_dofs] = moments
    return result


def element_matrix_to_global(
    dofmap_rows: DofMap, dofmap_cols: DofMap, local: FloatArray
) -> sp.csr_matrix:
    """Scatter element matrices (T, nrow, ncol) into a global sparse matrix."""
    rows = np.repeat(dofmap_rows.cell_dofs[:, :, None], dofmap_cols.local_size, axis=2)
    cols = np.repeat(dofmap_cols.cell_dofs[:, None, :], dofmap_rows.local_size, axis=1)
    return sp.coo_matrix(
        (local.reshape(-1), (rows.reshape(-1), cols.reshape(-1))),
        shape=(dofmap_rows.ndofs, dofmap_cols.ndofs),
    ).tocsr()


def curl_matrix(mesh: Mesh, order: int) -> sp.csr_matrix:
    """Matrix of (curl psi_j, q_i) between conforming Nedelec and DG spaces of one order."""
    nedelec = build_dofmap(SpaceFamily.NEDELEC, order, mesh)
    potential = build_dofmap(SpaceFamily.DISCONTINUOUS_P, order, mesh)
    rule, weights = element_quadrature(mesh, 2 * order + 1)
    psi = mapped_basis(nedelec, mesh, rule.ref_points)
    q = mapped_basis(potential, mesh, rule.ref_points)
    local = np.einsum("tq,tqi,tqj->tij", weights, q.values, psi.derivatives)
    return element_matrix_to_global(potential, nedelec, local)


def curl_rank(mesh: Mesh, order: int) -> int:
    """Rank of the discrete curl; equals the DG dimension when the curl is onto."""
    return int(np.linalg.matrix_rank(curl_matrix(mesh, order).toarray()))


def evaluate_at(
    dofmap: DofMap,
    coefficients: FloatArray,
    mesh: Mesh,
    elements: npt.ArrayLike,
    ref_points: npt.ArrayLike,
) -> FloatArray:
    """Field values at one reference point per entry of `elements`.

    Returns (N,) for scalar spaces and (N, 2) for Nedelec spaces.
    """
    cells = np.asarray(elements, dtype=np.int64).reshape(-1)
    points = np.asarray(ref_points, dtype=np.float64).reshape(-1, 2)
    element = reference_element(dofmap.family, dofmap.order)
    ref = eval_basis(element, points)
    local = coefficients[dofmap.cell_dofs[cells]] * dofmap.cell_signs[cells]
    if element.is_vector:
        mapped = np.einsum("nic,ncd->nid", ref.values, mesh.inverse_jacobians[cells])
        return np.asarray(np.einsum("nic,ni->nc", mapped, local))
    return np.asarray(np.einsum("ni,ni->n", ref.values, local))


def locate_in_ancestors(
    fine: Mesh, coarse: Mesh, fine_points: FloatArray
) -> tuple[FloatArray, FloatArray]:
    """Coarse element and reference coordinates of per-element points (T_fine, q, 2)."""
    ancestors = fine.ancestors(coarse)
    cells = np.repeat(ancestors, fine_points.shape[1])
    flat = fine_points.reshape(-1, 2)
    return cells, coarse.to_reference(cells, flat)


def prolongate(
    dofmap: DofMap, coefficients: FloatArray, coarse: Mesh, fine_dofmap: DofMap, fine: Mesh
) -> FloatArray:
    """Interpolate a field given on `coarse` into the matching space on a refinement."""

    def sample(points: FloatArray) -> FloatArray:
        cells, ref_points = locate_in_ancestors(fine, coarse, points)
        values = evaluate_at(dofmap, coefficients, coarse, cells, ref_points)
        return values.reshape(points.shape[:-1] + values.shape[1:])

    return interpolate(fine_dofmap, fine, sample)
