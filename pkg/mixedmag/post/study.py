"""Convergence studies and formulation comparisons."""

from __future__ import annotations

from collections.abc import Sequence
import logging
import math

from mixedmag.assembly import MixedDiscretization, PrimalDiscretization
from mixedmag.material import MaterialMap
from mixedmag.mesh import mesh_quality, refine_uniform
from mixedmag.models import ComparisonRow, FloatArray, Formulation, Mesh, StudyRow
from mixedmag.post.flux import FluxField, VectorFunction, l2_error
from mixedmag.post.manufactured import ManufacturedCase
from mixedmag.post.solution import Solution, solve_formulation
from mixedmag.solver import MixedProblem, NewtonOptions, PrimalProblem

_LOGGER = logging.getLogger("mixedmag.log")

REFERENCE_ORDER = 1


def eoc(errors: Sequence[float]) -> list[float | None]:
    """log2 of successive error ratios; None on the coarsest level."""
    rates: list[float | None] = [None]
    for previous, current in zip(errors, errors[1:]):
        rates.append(
            math.log2(previous / current) if previous > 0 and current > 0 else None
        )
    return rates


def formulations_of(formulation: Formulation) -> tuple[Formulation, ...]:
    """Expand BOTH into its two members."""
    if formulation is Formulation.BOTH:
        return (Formulation.PRIMAL, Formulation.MIXED)
    return (formulation,)


def level_meshes(base: Mesh, levels: int) -> list[Mesh]:
    """The base mesh and its first levels - 1 uniform refinements."""
    meshes = [base]
    for _ in range(levels - 1):
        meshes.append(refine_uniform(meshes[-1]))
    return meshes


def reference_flux(
    finest: Mesh, materials: MaterialMap, options: NewtonOptions | None = None
) -> FluxField:
    """Mixed solution of the highest order on one extra refinement."""
    mesh = refine_uniform(finest)
    _LOGGER.info("Computing reference solution on %s triangles", mesh.num_triangles)
    return solve_formulation(mesh, materials, Formulation.MIXED, REFERENCE_ORDER, options).flux


def convergence_study(
    case: ManufacturedCase,
    formulation: Formulation,
    order: int,
    levels: int,
    base_n: int = 4,
    options: NewtonOptions | None = None,
    *,
    base_mesh: Mesh | None = None,
    warm_start: bool = True,
    timings: bool = True,
    rows: list[StudyRow] | None = None,
) -> list[StudyRow]:
    """Solve on successive uniform refinements and tabulate flux errors and rates.

    Errors are measured against the closed-form flux when the case has one,
    otherwise against a reference solution on one more refinement. Completed
    rows are appended to `rows` as they are produced, so a caller keeps them
    when a later level fails.
    """
    materials = case.materials
    if not materials.certified:
        materials.certify()
    meshes = level_meshes(case.base_mesh(base_n) if base_mesh is None else base_mesh, levels)
    exact: FluxField | VectorFunction = (
        case.flux if case.flux is not None else reference_flux(meshes[-1], materials, options)
    )
    table: list[StudyRow] = [] if rows is None else rows
    for current in formulations_of(formulation):
        errors: list[float] = []
        previous: Solution | None = None
        for mesh in meshes:
            initial: FloatArray | None = None
            if warm_start and previous is not None:
                initial = previous.prolongate(mesh)
            solution = solve_formulation(mesh, materials, current, order, options, initial)
            errors.append(l2_error(solution.flux, exact))
            report = solution.report
            table.append(
                StudyRow(
                    formulation=current.value,
                    order=order + 1,
                    h=mesh_quality(mesh).h,
                    error=errors[-1],
                    eoc=eoc(errors)[-1],
                    newton_iterations=report.iterations,
                    wall_time_seconds=report.wall_time if timings else 0.0,
                    ndofs=report.ndofs,
                    nnz=report.nnz,
                )
            )
            previous = solution
    return table


def compare_formulations(
    mesh: Mesh,
    materials: MaterialMap,
    orders: Sequence[int] = (0, 1),
    method: str = "lu",
    timings: bool = True,
) -> list[ComparisonRow]:
    """Size and cost of one Newton step of the primal and the condensed mixed system.

    `cpu_time` covers factoring and solving the global system only.
    """
    if not materials.certified:
        materials.certify()
    rows: list[ComparisonRow] = []
    for order in orders:
        primal = PrimalProblem(PrimalDiscretization.build(mesh, order), materials, method)
        dual = MixedProblem(MixedDiscretization.build(mesh, order), materials, method)
        for name, problem in (("primal", primal), ("dual", dual)):
            _, info = problem.direction(problem.zero_state())
            rows.append(
                ComparisonRow(
                    method=name,
                    order=order + 1,
                    ndofs=info["ndofs"],
                    nnz=info["nnz"],
                    cpu_time=info["solve_time"] if timings else 0.0,
                )
            )
    return rows
