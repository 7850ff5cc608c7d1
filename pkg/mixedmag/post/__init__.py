"""Post-processing, synthetic cases and study drivers."""

from .flux import FluxField, l2_error, post_b_mixed, post_b_primal, project_elementwise
from .manufactured import (
    CASES,
    ManufacturedCase,
    case_by_name,
    checkerboard_case,
    checkerboard_regions,
    inclusion_case,
    inclusion_regions,
    magnet_case,
    magnet_regions,
    manufactured_case_linear,
    manufactured_case_nonlinear,
)
from .solution import Solution, solve_formulation
from .study import (
    compare_formulations,
    convergence_study,
    eoc,
    formulations_of,
    level_meshes,
    reference_flux,
)

__all__ = [
    "CASES",
    "FluxField",
    "ManufacturedCase",
    "Solution",
    "case_by_name",
    "checkerboard_case",
    "checkerboard_regions",
    "compare_formulations",
    "convergence_study",
    "eoc",
    "formulations_of",
    "inclusion_case",
    "inclusion_regions",
    "l2_error",
    "level_meshes",
    "magnet_case",
    "magnet_regions",
    "manufactured_case_linear",
    "manufactured_case_nonlinear",
    "post_b_mixed",
    "post_b_primal",
    "project_elementwise",
    "reference_flux",
    "solve_formulation",
]
