"""Writers for VTK files, CSV tables and text reports."""

from .tables import (
    certification_text,
    comparison_csv,
    mesh_info_text,
    report_text,
    study_csv,
    write_text,
)
from .vtk import save_vtk, solution_cell_fields, solution_point_fields, write_vtk_legacy

__all__ = [
    "certification_text",
    "comparison_csv",
    "mesh_info_text",
    "report_text",
    "save_vtk",
    "solution_cell_fields",
    "solution_point_fields",
    "study_csv",
    "write_text",
    "write_vtk_legacy",
]
