"""Build, refine and query conforming triangulations."""

from __future__ import annotations

from collections.abc import Callable, Mapping
import logging

import numpy as np
import numpy.typing as npt

from mixedmag.exceptions import (
    DegenerateTriangleError,
    IndexOutOfRangeError,
    NonConformingError,
)
from mixedmag.models import LOCAL_EDGES, FloatArray, IntArray, Mesh, MeshInfo, MeshQuality

_LOGGER = logging.getLogger("mixedmag.log")

RegionFunction = Callable[[float, float], int]

_AREA_RTOL = 1e-14
_COLLINEAR_RTOL = 1e-12


def build_mesh(
    nodes: npt.ArrayLike,
    triangles: npt.ArrayLike,
    region_tags: npt.ArrayLike | None = None,
    boundary_markers: Mapping[tuple[int, int], int] | None = None,
    *,
    check_conformity: bool = True,
    parent: IntArray | None = None,
    coarser: Mesh | None = None,
) -> Mesh:
    """Build a mesh with canonical edge table and counterclockwise triangles."""
    node_array = np.array(nodes, dtype=np.float64).reshape(-1, 2)
    tri_array = np.array(triangles, dtype=np.int64).reshape(-1, 3)
    num_nodes = node_array.shape[0]
    num_triangles = tri_array.shape[0]
    tags = (
        np.zeros(num_triangles, dtype=np.int64)
        if region_tags is None
        else np.array(region_tags, dtype=np.int64).reshape(-1)
    )
    if tags.shape[0] != num_triangles:
        raise IndexOutOfRangeError(
            f"{tags.shape[0]} region tags given for {num_triangles} triangles"
        )
    if tri_array.size and (tri_array.min() < 0 or tri_array.max() >= num_nodes):
        raise IndexOutOfRangeError(
            f"triangle node index outside [0, {num_nodes - 1}]"
        )
    if check_conformity:
        _check_duplicates(tri_array)

    tri_array = _orient_counterclockwise(node_array, tri_array)

    local_pairs = tri_array[:, np.array(LOCAL_EDGES)]  # (T, 3, 2)
    low = local_pairs.min(axis=2).reshape(-1)
    high = local_pairs.max(axis=2).reshape(-1)
    edges, inverse = np.unique(np.stack((low, high), axis=1), axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    signs = np.where(local_pairs[..., 0] < local_pairs[..., 1], 1, -1).astype(np.int64)
    edge_triangles = _edge_adjacency(inverse, signs.reshape(-1), edges.shape[0])

    mesh = Mesh(
        nodes=node_array,
        triangles=tri_array,
        region_tags=tags,
        edges=edges.astype(np.int64),
        edge_triangles=edge_triangles,
        triangle_edges=inverse.reshape(num_triangles, 3).astype(np.int64),
        triangle_edge_signs=signs,
        boundary_markers={
            (min(i, j), max(i, j)): int(tag)
            for (i, j), tag in (boundary_markers or {}).items()
        },
        parent=parent,
        coarser=coarser,
    )
    if check_conformity:
        _check_hanging_nodes(mesh)
    _check_boundary_markers(mesh)
    if mesh.euler_characteristic != 1:
        _LOGGER.warning(
            "Mesh is not simply connected: V - E + T = %s", mesh.euler_characteristic
        )
    for array in (
        mesh.nodes,
        mesh.triangles,
        mesh.region_tags,
        mesh.edges,
        mesh.edge_triangles,
        mesh.triangle_edges,
        mesh.triangle_edge_signs,
    ):
        array.setflags(write=False)
    return mesh


def _check_duplicates(triangles: IntArray) -> None:
    """Reject triangles listed twice."""
    if not triangles.size:
        return
    _, counts = np.unique(np.sort(triangles, axis=1), axis=0, return_counts=True)
    if np.any(counts > 1):
        raise NonConformingError("duplicate triangles in input")


def _orient_counterclockwise(nodes: FloatArray, triangles: IntArray) -> IntArray:
    """Reorder clockwise triangles and reject degenerate ones."""
    if not triangles.size:
        return triangles
    corners = nodes[triangles]
    first = corners[:, 1] - corners[:, 0]
    second = corners[:, 2] - corners[:, 0]
    det = first[:, 0] * second[:, 1] - first[:, 1] * second[:, 0]
    scale = max(float(np.ptp(nodes, axis=0).max()), 1.0) ** 2
    degenerate = np.flatnonzero(np.abs(det) <= _AREA_RTOL * scale)
    if degenerate.size:
        raise DegenerateTriangleError(f"triangle {int(degenerate[0])} has zero area")
    oriented = triangles.copy()
    clockwise = det < 0
    oriented[clockwise] = triangles[clockwise][:, [0, 2, 1]]
    return oriented


def _edge_adjacency(inverse: IntArray, signs: IntArray, num_edges: int) -> IntArray:
    """Collect the one or two triangles adjacent to every edge."""
    counts = np.bincount(inverse, minlength=num_edges)
    if np.any(counts > 2):
        raise NonConformingError(
            f"edge {int(np.argmax(counts))} is shared by more than two triangles"
        )
    owner = np.arange(inverse.shape[0]) // 3
    order = np.lexsort((owner, inverse))
    starts = np.searchsorted(inverse[order], np.arange(num_edges))
    adjacency = np.full((num_edges, 2), -1, dtype=np.int64)
    adjacency[:, 0] = owner[order][starts]
    shared = np.flatnonzero(counts == 2)
    adjacency[shared, 1] = owner[order][starts[shared] + 1]
    # both neighbours of an interior edge must traverse it in opposite directions
    first_sign = signs[order][starts[shared]]
    second_sign = signs[order][starts[shared] + 1]
    folded = shared[first_sign == second_sign]
    if folded.size:
        raise NonConformingError(f"triangles overlap along edge {int(folded[0])}")
    return adjacency


def _check_boundary_markers(mesh: Mesh) -> None:
    """Reject markers that do not name a boundary edge of the mesh."""
    if not mesh.boundary_markers:
        return
    edge_index = {
        (int(lo), int(hi)): number for number, (lo, hi) in enumerate(mesh.edges)
    }
    for pair in mesh.boundary_markers:
        number = edge_index.get(pair)
        if number is None:
            raise NonConformingError(f"boundary marker on {pair} is not a mesh edge")
        if not mesh.boundary_flag[number]:
            raise NonConformingError(
                f"boundary marker on {pair} is an interior edge"
            )


def _check_hanging_nodes(mesh: Mesh) -> None:
    """Reject boundary nodes lying inside another boundary edge."""
    candidates = mesh.boundary_nodes
    points = mesh.nodes[candidates]
    for edge in mesh.boundary_edges:
        start, end = mesh.nodes[mesh.edges[edge]]
        direction = end - start
        length2 = float(direction @ direction)
        offset = points - start
        cross = offset[:, 0] * direction[1] - offset[:, 1] * direction[0]
        along = (offset @ direction) / length2
        inside = (
            (np.abs(cross) <= _COLLINEAR_RTOL * length2)
            & (along > _COLLINEAR_RTOL)
            & (along < 1.0 - _COLLINEAR_RTOL)
        )
        if np.any(inside):
            node = int(candidates[np.flatnonzero(inside)[0]])
            raise NonConformingError(
                f"hanging node {node} on edge {tuple(int(i) for i in mesh.edges[edge])}"
            )


def refine_uniform(mesh: Mesh) -> Mesh:
    """Split every triangle into four congruent children through its edge midpoints."""
    num_nodes = mesh.num_nodes
    midpoints = 0.5 * (mesh.nodes[mesh.edges[:, 0]] + mesh.nodes[mesh.edges[:, 1]])
    nodes = np.concatenate((mesh.nodes, midpoints))
    v0, v1, v2 = mesh.triangles.T
    m0, m1, m2 = (num_nodes + mesh.triangle_edges).T
    children = np.stack(
        (
            np.stack((v0, m2, m1), axis=1),
            np.stack((m2, v1, m0), axis=1),
            np.stack((m1, m0, v2), axis=1),
            np.stack((m0, m1, m2), axis=1),
        ),
        axis=1,
    ).reshape(-1, 3)
    markers: dict[tuple[int, int], int] = {}
    if mesh.boundary_markers:
        edge_lookup = {
            (int(lo), int(hi)): index for index, (lo, hi) in enumerate(mesh.edges)
        }
        for (lo, hi), tag in mesh.boundary_markers.items():
            middle = num_nodes + edge_lookup[(lo, hi)]
            markers[(lo, middle)] = tag
            markers[(hi, middle)] = tag
    return build_mesh(
        nodes,
        children,
        np.repeat(mesh.region_tags, 4),
        markers,
        check_conformity=False,
        parent=np.repeat(np.arange(mesh.num_triangles), 4),
        coarser=mesh,
    )


def mesh_quality(mesh: Mesh) -> MeshQuality:
    """Compute global mesh size, smallest diameter and worst shape ratio."""
    edge_vectors = mesh.nodes[mesh.edges[:, 1]] - mesh.nodes[mesh.edges[:, 0]]
    lengths = np.hypot(edge_vectors[:, 0], edge_vectors[:, 1])[mesh.triangle_edges]
    diameters = lengths.max(axis=1)
    inradius = 2.0 * mesh.areas / lengths.sum(axis=1)
    return MeshQuality(
        h=float(diameters.max()),
        h_min=float(diameters.min()),
        shape_ratio=float((diameters / inradius).max()),
    )


def structured_square_mesh(n: int, region_fn: RegionFunction | None = None) -> Mesh:
    """Triangulate the unit square with n x n cells split along their diagonal."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    coords = np.linspace(0.0, 1.0, n + 1)
    grid_x, grid_y = np.meshgrid(coords, coords)
    nodes = np.stack((grid_x.ravel(), grid_y.ravel()), axis=1)
    col, row = np.meshgrid(np.arange(n), np.arange(n))
    p00 = (row * (n + 1) + col).ravel()
    p10 = p00 + 1
    p01 = p00 + n + 1
    p11 = p01 + 1
    triangles = np.stack(
        (np.stack((p00, p10, p11), axis=1), np.stack((p00, p11, p01), axis=1)), axis=1
    ).reshape(-1, 3)
    tags = np.zeros(triangles.shape[0], dtype=np.int64)
    if region_fn is not None:
        centroids = nodes[triangles].mean(axis=1)
        tags = np.array([region_fn(float(x), float(y)) for x, y in centroids])
    return build_mesh(nodes, triangles, tags, check_conformity=False)


def refine(mesh: Mesh, levels: int) -> Mesh:
    """Apply uniform refinement `levels` times."""
    for _ in range(levels):
        mesh = refine_uniform(mesh)
    return mesh


def mesh_info(mesh: Mesh) -> MeshInfo:
    """Summarize counts, quality and the Euler check."""
    quality = mesh_quality(mesh)
    return MeshInfo(
        num_nodes=mesh.num_nodes,
        num_edges=mesh.num_edges,
        num_triangles=mesh.num_triangles,
        num_boundary_edges=int(mesh.boundary_edges.shape[0]),
        h=quality.h,
        h_min=quality.h_min,
        shape_ratio=quality.shape_ratio,
        euler_ok=mesh.euler_characteristic == 1,
    )
