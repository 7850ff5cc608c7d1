"""Define output types for solver runs and studies."""

from __future__ import annotations

from typing import TypedDict


class IterationRecord(TypedDict):
    """One Newton iteration."""

    iteration: int
    residual_norm: float
    relative_residual: float
    step: float
    linear_solve_time: float


class LinearSystemInfo(TypedDict):
    """Size of the global system solved in one Newton step.

    `solve_time` is the CPU time in seconds spent factoring and solving it.
    """

    ndofs: int
    nnz: int
    solve_time: float


class StudyRow(TypedDict):
    """One refinement level of a convergence study."""

    formulation: str
    order: int
    h: float
    error: float
    eoc: float | None
    newton_iterations: int
    wall_time_seconds: float
    ndofs: int
    nnz: int


class ComparisonRow(TypedDict):
    """System size and cost of one Newton step."""

    method: str
    order: int
    ndofs: int
    nnz: int
    cpu_time: float


class MeshInfo(TypedDict):
    """Counts and quality of a mesh."""

    num_nodes: int
    num_edges: int
    num_triangles: int
    num_boundary_edges: int
    h: float
    h_min: float
    shape_ratio: float
    euler_ok: bool


class CertificationReport(TypedDict):
    """Result of a material certification."""

    region: int
    law: str
    alpha: float
    lipschitz: float
    duality_error: float | None
