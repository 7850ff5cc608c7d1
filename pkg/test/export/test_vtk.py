"""Test the legacy VTK writer."""

import numpy as np
import pytest

from mixedmag.exceptions import FieldSizeMismatchError
from mixedmag.export import save_vtk, solution_cell_fields, solution_point_fields, write_vtk_legacy
from mixedmag.mesh import refine_uniform
from mixedmag.models import Formulation
from mixedmag.post import manufactured_case_linear, solve_formulation


def test_geometry_only(two_triangle_mesh):
    """Test a file without fields holds the grid only."""
    text = write_vtk_legacy(two_triangle_mesh)
    lines = text.splitlines()
    assert lines[0] == "# vtk DataFile Version 3.0"
    assert lines[2:4] == ["ASCII", "DATASET UNSTRUCTURED_GRID"]
    assert "POINTS 4 double" in lines
    assert "CELLS 2 8" in lines
    assert lines[-2:] == ["5", "5"]
    assert "CELL_DATA" not in text
    assert "POINT_DATA" not in text


def test_cell_and_point_fields(two_triangle_mesh):
    """Test scalar and vector blocks in the given order."""
    text = write_vtk_legacy(
        two_triangle_mesh,
        {"a h": [1.0, 1.0], "B": [[0.5, -1.0], [0.25, 0.0]]},
        {"potential": np.arange(4.0)},
        title="two  triangles",
    )
    lines = text.splitlines()
    assert lines[1] == "two triangles"
    cell_data = lines.index("CELL_DATA 2")
    assert lines[cell_data + 1 : cell_data + 4] == ["SCALARS a_h double 1", "LOOKUP_TABLE default", "1"]
    assert lines[cell_data + 5 : cell_data + 8] == ["VECTORS B double", "0.5 -1 0", "0.25 0 0"]
    assert lines[cell_data + 8] == "POINT_DATA 4"
    assert lines[-1] == "3"


@pytest.mark.parametrize(
    ("cell_fields", "point_fields"),
    [({"a": [1.0, 2.0, 3.0]}, None), (None, {"a": np.zeros((4, 3))}), ({"a": np.zeros((2, 2, 2))}, None)],
)
def test_field_size_mismatch(two_triangle_mesh, cell_fields, point_fields):
    """Test fields must have one value or 2-vector per cell or point."""
    with pytest.raises(FieldSizeMismatchError):
        write_vtk_legacy(two_triangle_mesh, cell_fields, point_fields)


def test_save_solution(tmp_path, two_triangle_mesh):
    """Test the element views of a solution are written deterministically."""
    case = manufactured_case_linear()
    case.materials.certify()
    solution = solve_formulation(two_triangle_mesh, case.materials, Formulation.MIXED, 0)
    fields = solution_cell_fields(solution)
    assert list(fields) == ["a_h", "H_magnitude", "B_h", "region"]
    assert fields["B_h"].shape == (2, 2)
    path = save_vtk(tmp_path / "out" / "solution.vtk", solution)
    text = path.read_text(encoding="utf-8")
    assert text.splitlines()[1] == "mixed order 1"
    assert "CELL_DATA 2" in text
    assert "POINT_DATA" not in text
    assert save_vtk(tmp_path / "again.vtk", solution).read_text(encoding="utf-8") == text


@pytest.mark.parametrize("formulation", [Formulation.PRIMAL, Formulation.MIXED])
def test_second_order_vertex_samples(tmp_path, square_mesh, formulation):
    """Test second order solutions add the potential and B at the vertices as point data."""
    case = manufactured_case_linear()
    case.materials.certify()
    mesh = refine_uniform(square_mesh)
    solution = solve_formulation(mesh, case.materials, formulation, 1)
    points = solution_point_fields(solution)
    assert list(points) == ["a_h", "B_h"]
    assert points["a_h"].shape == (mesh.num_nodes,)
    assert points["B_h"].shape == (mesh.num_nodes, 2)
    assert np.allclose(points["a_h"], case.potential(mesh.nodes), atol=0.1)
    assert np.max(np.abs(points["B_h"] - case.flux(mesh.nodes))) < 0.2 * np.pi
    if formulation is Formulation.PRIMAL:
        assert np.allclose(points["a_h"][mesh.boundary_nodes], 0.0, atol=1e-12)

    text = save_vtk(tmp_path / "solution.vtk", solution).read_text(encoding="utf-8")
    lines = text.splitlines()
    point_data = lines.index(f"POINT_DATA {mesh.num_nodes}")
    assert lines[point_data + 1] == "SCALARS a_h double 1"
    assert "VECTORS B_h double" in lines[point_data:]
    assert len(lines) - point_data == 1 + 2 + mesh.num_nodes + 1 + mesh.num_nodes
