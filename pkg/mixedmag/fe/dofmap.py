"""Global dof numbering of the finite element spaces."""

from __future__ import annotations

import numpy as np

from mixedmag.exceptions import UnsupportedSpaceError
from mixedmag.fe.elements import reference_element
from mixedmag.models import DofEntity, DofMap, IntArray, Mesh, SpaceFamily


def build_dofmap(
    family: SpaceFamily,
    order: int,
    mesh: Mesh,
    *,
    broken: bool = False,
    constrain_boundary: bool = True,
) -> DofMap:
    """Number the dofs of a space on a mesh.

    Conforming Nedelec dofs are shared across edges and carry orientation
    signs; the broken variant duplicates them per element but keeps the same
    signs so that a conforming field has identical coefficients in both.
    Boundary dofs of Lagrange and edge-trace spaces are constrained when
    `constrain_boundary` is set.
    """
    element = reference_element(family, order)
    if family is SpaceFamily.LAGRANGE:
        if broken:
            raise UnsupportedSpaceError("broken Lagrange spaces are not available")
        return _lagrange(order, mesh, constrain_boundary)
    if family is SpaceFamily.EDGE_TRACE:
        if broken:
            raise UnsupportedSpaceError("edge traces are never broken")
        return _edge_trace(order, mesh, constrain_boundary)

    num_triangles = mesh.num_triangles
    nloc = element.ndofs
    signs = np.ones((num_triangles, nloc))
    if family is SpaceFamily.NEDELEC:
        signs = _nedelec_signs(order, mesh)
    if broken or family is SpaceFamily.DISCONTINUOUS_P:
        cell_dofs = np.arange(num_triangles * nloc, dtype=np.int64).reshape(num_triangles, nloc)
        return DofMap(
            family=family,
            order=order,
            broken=broken or family is SpaceFamily.DISCONTINUOUS_P,
            ndofs=num_triangles * nloc,
            cell_dofs=cell_dofs,
            cell_signs=signs,
            constrained=np.zeros(0, dtype=np.int64),
        )

    per_edge = order + 1
    columns: list[IntArray] = []
    for descriptor in element.descriptors:
        if descriptor.entity is DofEntity.EDGE:
            columns.append(mesh.triangle_edges[:, descriptor.index] * per_edge + descriptor.moment)
        else:
            columns.append(
                per_edge * mesh.num_edges
                + 2 * np.arange(num_triangles, dtype=np.int64)
                + descriptor.moment
            )
    return DofMap(
        family=family,
        order=order,
        broken=False,
        ndofs=per_edge * mesh.num_edges + (2 * num_triangles if order == 1 else 0),
        cell_dofs=np.stack(columns, axis=1),
        cell_signs=signs,
        constrained=np.zeros(0, dtype=np.int64),
    )


def _nedelec_signs(order: int, mesh: Mesh) -> np.ndarray:
    """Orientation sign per local dof; odd Legendre moments are reversal invariant."""
    element = reference_element(SpaceFamily.NEDELEC, order)
    columns = []
    for descriptor in element.descriptors:
        if descriptor.entity is DofEntity.EDGE:
            sign = mesh.triangle_edge_signs[:, descriptor.index].astype(np.float64)
            columns.append(sign if descriptor.moment % 2 == 0 else np.ones_like(sign))
        else:
            columns.append(np.ones(mesh.num_triangles))
    return np.stack(columns, axis=1)


def _lagrange(order: int, mesh: Mesh, constrain_boundary: bool) -> DofMap:
    cell_dofs = mesh.triangles
    ndofs = mesh.num_nodes
    constrained = mesh.boundary_nodes
    if order == 2:
        cell_dofs = np.concatenate((mesh.triangles, mesh.num_nodes + mesh.triangle_edges), axis=1)
        ndofs += mesh.num_edges
        constrained = np.concatenate((constrained, mesh.num_nodes + mesh.boundary_edges))
    return DofMap(
        family=SpaceFamily.LAGRANGE,
        order=order,
        broken=False,
        ndofs=ndofs,
        cell_dofs=np.ascontiguousarray(cell_dofs, dtype=np.int64),
        cell_signs=np.ones(cell_dofs.shape),
        constrained=np.sort(constrained) if constrain_boundary else np.zeros(0, dtype=np.int64),
    )


def _edge_trace(order: int, mesh: Mesh, constrain_boundary: bool) -> DofMap:
    per_edge = order + 1
    edge_dofs = np.arange(mesh.num_edges * per_edge, dtype=np.int64).reshape(-1, per_edge)
    cell_dofs = edge_dofs[mesh.triangle_edges].reshape(mesh.num_triangles, 3 * per_edge)
    constrained = (
        edge_dofs[mesh.boundary_edges].reshape(-1)
        if constrain_boundary
        else np.zeros(0, dtype=np.int64)
    )
    return DofMap(
        family=SpaceFamily.EDGE_TRACE,
        order=order,
        broken=False,
        ndofs=int(edge_dofs.size),
        cell_dofs=cell_dofs,
        cell_signs=np.ones(cell_dofs.shape),
        constrained=constrained,
        edge_dofs=edge_dofs,
    )
