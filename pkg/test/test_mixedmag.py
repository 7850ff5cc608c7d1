"""Test the MagnetostaticSolver facade."""

import logging

import numpy as np
import pytest

from mixedmag import Formulation, MagnetostaticSolver
from mixedmag.exceptions import InvalidParamsError
from mixedmag.solver import NewtonOptions

from . import MATERIALS_PATH, MESHES_PATH


def test_solve_from_paths(caplog):
    """Test a mixed solve of files read by the facade."""
    solver = MagnetostaticSolver(
        MESHES_PATH / "two_triangles.mesh", str(MATERIALS_PATH / "linear.json")
    )
    assert not solver.materials.certified
    with caplog.at_level(logging.INFO, logger="mixedmag.log"):
        solution = solver.solve()
    assert solver.materials.certified
    assert solution.report.formulation is Formulation.MIXED
    assert solution.report.order == 1
    assert solution.report.converged
    assert solution.report.iterations == 1
    assert "Converged in 1 Newton iterations" in caplog.text


@pytest.mark.parametrize(
    ("formulation", "order"),
    [(Formulation.PRIMAL, 0), (Formulation.PRIMAL, 1), (Formulation.MIXED, 1)],
)
def test_solve_from_objects(square_mesh, unit_materials, formulation, order):
    """Test solving on mesh and material objects."""
    solver = MagnetostaticSolver(
        square_mesh, unit_materials, options=NewtonOptions(rel_residual_tol=1e-12)
    )
    report = solver.solve(formulation, order).report
    assert report.converged
    assert report.order == order + 1
    assert report.ndofs > 0
    assert np.all(np.isfinite(report.coefficients))


def test_certify_once(unit_materials, two_triangle_mesh):
    """Test an already certified map keeps its reports."""
    reports = unit_materials.reports
    solver = MagnetostaticSolver(two_triangle_mesh, unit_materials)
    solver.certify()
    assert solver.materials.reports is reports


def test_missing_region():
    """Test a mesh region without a law is rejected at construction."""
    with pytest.raises(InvalidParamsError, match="no material law for region 3"):
        MagnetostaticSolver(MESHES_PATH / "square.msh", MATERIALS_PATH / "linear.json")
