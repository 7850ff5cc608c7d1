"""Test mesh construction, refinement and quality measures."""

import logging
import math

import numpy as np
import pytest

from mixedmag.exceptions import (
    DegenerateTriangleError,
    IndexOutOfRangeError,
    NonConformingError,
)
from mixedmag.mesh import (
    build_mesh,
    mesh_info,
    mesh_quality,
    refine,
    refine_uniform,
    structured_square_mesh,
)


def test_two_triangle_counts(two_triangle_mesh):
    """Test counts, boundary and the Euler check of the two-triangle square."""
    mesh = two_triangle_mesh
    assert (mesh.num_nodes, mesh.num_edges, mesh.num_triangles) == (4, 5, 2)
    assert mesh.boundary_edges.shape == (4,)
    assert mesh.interior_edges.shape == (1,)
    assert mesh.euler_characteristic == 1
    assert np.all(mesh.edges[:, 0] < mesh.edges[:, 1])
    assert np.allclose(mesh.areas, 0.5)


def test_clockwise_triangles_are_reoriented():
    """Test triangles are stored counterclockwise."""
    mesh = build_mesh([[0, 0], [1, 0], [0, 1]], [[0, 2, 1]])
    assert mesh.determinants[0] > 0


def test_edge_signs_are_opposite_on_interior_edges(square_mesh):
    """Test both neighbours traverse an interior edge in opposite directions."""
    mesh = square_mesh
    for edge in mesh.interior_edges:
        signs = []
        for triangle in mesh.edge_triangles[edge]:
            local = int(np.flatnonzero(mesh.triangle_edges[triangle] == edge)[0])
            signs.append(mesh.triangle_edge_signs[triangle, local])
        assert sorted(signs) == [-1, 1]


@pytest.mark.parametrize(
    ("nodes", "triangles", "error"),
    [
        ([[0, 0], [1, 0], [2, 0]], [[0, 1, 2]], DegenerateTriangleError),
        ([[0, 0], [1, 0], [0, 1]], [[0, 1, 3]], IndexOutOfRangeError),
        ([[0, 0], [1, 0], [0, 1]], [[0, 1, 2], [1, 2, 0]], NonConformingError),
        (
            [[0, 0], [1, 0], [0, 1], [1, 1], [-1, 1]],
            [[0, 1, 2], [1, 3, 2], [0, 2, 4], [1, 2, 4]],
            NonConformingError,
        ),
        (
            [[0, 0], [2, 0], [1, 1], [1, 0], [1, -1], [0, -1]],
            [[0, 1, 2], [0, 5, 3], [3, 5, 4], [3, 4, 1]],
            NonConformingError,
        ),
    ],
)
def test_invalid_meshes(nodes, triangles, error):
    """Test degenerate, out of range, duplicate, overlapping and hanging-node inputs."""
    with pytest.raises(error):
        build_mesh(nodes, triangles)


@pytest.mark.parametrize(
    ("markers", "message"),
    [
        ({(2, 0): 1}, "interior edge"),
        ({(1, 3): 1}, "not a mesh edge"),
        ({(0, 1): 1, (3, 9): 2}, "not a mesh edge"),
    ],
)
def test_markers_off_the_boundary(markers, message):
    """Test markers must name boundary edges of the triangulation."""
    with pytest.raises(NonConformingError, match=message):
        build_mesh([[0, 0], [1, 0], [1, 1], [0, 1]], [[0, 1, 2], [0, 2, 3]], None, markers)


def test_region_tag_count_mismatch():
    """Test region tags must match the triangle count."""
    with pytest.raises(IndexOutOfRangeError):
        build_mesh([[0, 0], [1, 0], [0, 1]], [[0, 1, 2]], [1, 2])


def test_multiply_connected_mesh_warns(caplog):
    """Test a ring of triangles builds with a warning about the Euler characteristic."""
    outer = [[0, 0], [3, 0], [3, 3], [0, 3]]
    inner = [[1, 1], [2, 1], [2, 2], [1, 2]]
    triangles = [
        [0, 1, 4], [1, 5, 4], [1, 2, 5], [2, 6, 5],
        [2, 3, 6], [3, 7, 6], [3, 0, 7], [0, 4, 7],
    ]
    with caplog.at_level(logging.WARNING, logger="mixedmag.log"):
        mesh = build_mesh(outer + inner, triangles)
    assert mesh.euler_characteristic == 0
    assert "not simply connected" in caplog.text
    assert not mesh_info(mesh)["euler_ok"]


def test_refine_uniform(two_triangle_mesh):
    """Test uniform refinement quadruples triangles and keeps the Euler relation."""
    fine = refine_uniform(two_triangle_mesh)
    assert fine.num_triangles == 8
    assert fine.num_nodes == 9
    assert fine.euler_characteristic == 1
    assert np.isclose(fine.areas.sum(), 1.0)
    assert np.array_equal(fine.ancestors(two_triangle_mesh), np.repeat([0, 1], 4))
    assert mesh_quality(fine).h == pytest.approx(0.5 * mesh_quality(two_triangle_mesh).h)


def test_refine_keeps_region_tags_and_markers():
    """Test children inherit tags and boundary markers are split."""
    mesh = build_mesh(
        [[0, 0], [1, 0], [0, 1]], [[0, 1, 2]], [7], {(1, 0): 3, (0, 2): 4}
    )
    fine = refine(mesh, 2)
    assert np.all(fine.region_tags == 7)
    assert sorted(fine.boundary_markers.values()).count(3) == 4
    assert sorted(fine.boundary_markers.values()).count(4) == 4
    with pytest.raises(ValueError):
        mesh.ancestors(fine)


def test_equilateral_shape_ratio():
    """Test the shape ratio lower bound 2 sqrt(3) is attained by an equilateral triangle."""
    mesh = build_mesh([[0, 0], [1, 0], [0.5, math.sqrt(3.0) / 2.0]], [[0, 1, 2]])
    quality = mesh_quality(mesh)
    assert quality.shape_ratio == pytest.approx(2.0 * math.sqrt(3.0))
    assert quality.h == pytest.approx(1.0)
    assert quality.h_min == pytest.approx(1.0)


@pytest.mark.parametrize("n", [1, 3, 8])
def test_structured_square_mesh(n):
    """Test counts of the structured square mesh."""
    mesh = structured_square_mesh(n)
    assert mesh.num_triangles == 2 * n * n
    assert mesh.num_nodes == (n + 1) ** 2
    assert mesh.euler_characteristic == 1
    assert mesh_quality(mesh).h == pytest.approx(math.sqrt(2.0) / n)


def test_structured_square_mesh_regions():
    """Test region tags follow the region function at the centroids."""
    mesh = structured_square_mesh(2, lambda x, y: int(x > 0.5))
    assert sorted(np.unique(mesh.region_tags).tolist()) == [0, 1]
    assert int(mesh.region_tags.sum()) == 4


def test_structured_square_mesh_needs_cells():
    """Test n < 1 is rejected."""
    with pytest.raises(ValueError):
        structured_square_mesh(0)


def test_mesh_info(two_triangle_mesh):
    """Test the mesh summary."""
    info = mesh_info(two_triangle_mesh)
    assert info["num_nodes"] == 4
    assert info["num_edges"] == 5
    assert info["num_triangles"] == 2
    assert info["num_boundary_edges"] == 4
    assert info["euler_ok"]
