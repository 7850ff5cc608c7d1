"""Legacy VTK ASCII writer for triangle meshes."""

from __future__ import annotations

from collections.abc import Mapping
import logging
from pathlib import Path

import numpy as np
import numpy.typing as npt

from mixedmag.exceptions import FieldSizeMismatchError
from mixedmag.export.tables import write_text
from mixedmag.models import FloatArray, Mesh
from mixedmag.post import Solution

_LOGGER = logging.getLogger("mixedmag.log")

VTK_TRIANGLE = 5


def _number(value: float) -> str:
    return f"{value:.12g}"


def _data_block(name: str, values: FloatArray) -> list[str]:
    label = "_".join(name.split())
    if values.ndim == 1:
        return [
            f"SCALARS {label} double 1",
            "LOOKUP_TABLE default",
            *(_number(value) for value in values.tolist()),
        ]
    return [
        f"VECTORS {label} double",
        *(f"{_number(x)} {_number(y)} 0" for x, y in values.tolist()),
    ]


def _checked(name: str, values: npt.ArrayLike, count: int, kind: str) -> FloatArray:
    array = np.asarray(values, dtype=np.float64)
    if array.shape not in ((count,), (count, 2)):
        raise FieldSizeMismatchError(
            f"{kind} field {name!r} has shape {array.shape}, expected ({count},) or ({count}, 2)"
        )
    return array


def write_vtk_legacy(
    mesh: Mesh,
    cell_fields: Mapping[str, npt.ArrayLike] | None = None,
    point_fields: Mapping[str, npt.ArrayLike] | None = None,
    title: str = "mixedmag solution",
) -> str:
    """Render the mesh and fields as an UNSTRUCTURED_GRID legacy VTK file.

    Fields are scalars of shape (N,) or in-plane vectors of shape (N, 2),
    written in the given order.
    """
    cells = {
        name: _checked(name, values, mesh.num_triangles, "cell")
        for name, values in (cell_fields or {}).items()
    }
    points = {
        name: _checked(name, values, mesh.num_nodes, "point")
        for name, values in (point_fields or {}).items()
    }
    out = [
        "# vtk DataFile Version 3.0",
        " ".join(title.split()) or "mixedmag",
        "ASCII",
        "DATASET UNSTRUCTURED_GRID",
        f"POINTS {mesh.num_nodes} double",
        *(f"{_number(x)} {_number(y)} 0" for x, y in mesh.nodes.tolist()),
        f"CELLS {mesh.num_triangles} {4 * mesh.num_triangles}",
        *(f"3 {i} {j} {k}" for i, j, k in mesh.triangles.tolist()),
        f"CELL_TYPES {mesh.num_triangles}",
        *([str(VTK_TRIANGLE)] * mesh.num_triangles),
    ]
    if cells:
        out.append(f"CELL_DATA {mesh.num_triangles}")
        for name, values in cells.items():
            out += _data_block(name, values)
    if points:
        out.append(f"POINT_DATA {mesh.num_nodes}")
        for name, values in points.items():
            out += _data_block(name, values)
    return "\n".join(out) + "\n"


def solution_cell_fields(solution: Solution) -> dict[str, FloatArray]:
    """Element views of a solution: potential mean, |H| mean, mean B and region tag."""
    return {
        "a_h": solution.potential_cells(),
        "H_magnitude": solution.field_magnitude_cells(),
        "B_h": solution.flux.cell_average(),
        "region": solution.mesh.region_tags.astype(np.float64),
    }


def solution_point_fields(solution: Solution) -> dict[str, FloatArray]:
    """Vertex samples of a higher order solution: potential and B, averaged over elements.

    Lowest order solutions have no point fields.
    """
    if solution.order == 0:
        return {}
    return {"a_h": solution.potential_vertices(), "B_h": solution.flux_vertices()}


def save_vtk(path: str | Path, solution: Solution) -> Path:
    """Write the element views and, for higher orders, the vertex samples of a solution."""
    path = write_text(
        path,
        write_vtk_legacy(
            solution.mesh,
            solution_cell_fields(solution),
            solution_point_fields(solution),
            title=f"{solution.formulation.value} order {solution.order + 1}",
        ),
    )
    _LOGGER.info('Wrote "%s"', path)
    return path
