"""Define internally used data structures."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
import logging
from pathlib import Path
from typing import NamedTuple

import numpy as np
import numpy.typing as npt
import scipy.sparse as sp

from mixedmag.const import DEFAULT_SEED, SYMMETRY_RTOL
from mixedmag.exceptions import FieldSizeMismatchError, LinearSolveFailureError
from mixedmag.models.report import IterationRecord
from mixedmag.models.static import DofEntity, Formulation, SpaceFamily

_LOGGER = logging.getLogger("mixedmag.log")

FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]


@dataclass(frozen=True, eq=False)
class Mesh:
    """Conforming triangulation with canonically oriented edges and region tags."""

    nodes: FloatArray  # (V, 2) in meters
    triangles: IntArray  # (T, 3) counterclockwise
    region_tags: IntArray  # (T,)
    edges: IntArray  # (E, 2) lower node index first
    edge_triangles: IntArray  # (E, 2) adjacent triangles, -1 if absent
    triangle_edges: IntArray  # (T, 3) local edge i is opposite local vertex i
    triangle_edge_signs: IntArray  # (T, 3) +1 if local traversal matches canonical
    boundary_markers: dict[tuple[int, int], int] = field(default_factory=dict)
    parent: IntArray | None = None  # parent triangle in `coarser`
    coarser: Mesh | None = None

    @property
    def num_nodes(self) -> int:
        """Return V."""
        return int(self.nodes.shape[0])

    @property
    def num_edges(self) -> int:
        """Return E."""
        return int(self.edges.shape[0])

    @property
    def num_triangles(self) -> int:
        """Return T."""
        return int(self.triangles.shape[0])

    @cached_property
    def boundary_flag(self) -> npt.NDArray[np.bool_]:
        """Flag edges with exactly one adjacent triangle."""
        return np.asarray(self.edge_triangles[:, 1] < 0)

    @cached_property
    def boundary_edges(self) -> IntArray:
        """Indices of boundary edges."""
        return np.flatnonzero(self.boundary_flag)

    @cached_property
    def interior_edges(self) -> IntArray:
        """Indices of interior edges."""
        return np.flatnonzero(~self.boundary_flag)

    @cached_property
    def boundary_nodes(self) -> IntArray:
        """Indices of nodes on the boundary."""
        return np.unique(self.edges[self.boundary_edges])

    @property
    def euler_characteristic(self) -> int:
        """Return V - E + T (1 for a simply connected triangulated polygon)."""
        return self.num_nodes - self.num_edges + self.num_triangles

    @cached_property
    def jacobians(self) -> FloatArray:
        """Affine element maps x = x0 + J x_ref, shape (T, 2, 2)."""
        corners = self.nodes[self.triangles]
        return np.stack(
            (corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0]), axis=2
        )

    @cached_property
    def determinants(self) -> FloatArray:
        """Signed Jacobian determinants (twice the element areas)."""
        jac = self.jacobians
        return np.asarray(jac[:, 0, 0] * jac[:, 1, 1] - jac[:, 0, 1] * jac[:, 1, 0])

    @cached_property
    def inverse_jacobians(self) -> FloatArray:
        """Inverses of the element maps, shape (T, 2, 2)."""
        return np.asarray(np.linalg.inv(self.jacobians))

    @property
    def areas(self) -> FloatArray:
        """Element areas."""
        return np.asarray(0.5 * self.determinants)

    @property
    def origins(self) -> FloatArray:
        """First vertex of every element, shape (T, 2)."""
        return np.asarray(self.nodes[self.triangles[:, 0]])

    def to_physical(self, ref_points: FloatArray) -> FloatArray:
        """Map reference points (n, 2) into every element, shape (T, n, 2)."""
        return np.asarray(
            self.origins[:, None, :]
            + np.einsum("tij,qj->tqi", self.jacobians, ref_points)
        )

    def to_reference(self, elements: IntArray, points: FloatArray) -> FloatArray:
        """Pull physical points (n, 2) located in `elements` (n,) back to reference coordinates."""
        return np.asarray(
            np.einsum(
                "nij,nj->ni",
                self.inverse_jacobians[elements],
                points - self.origins[elements],
            )
        )

    def ancestors(self, coarse: Mesh) -> IntArray:
        """Map every triangle to the triangle of `coarse` it was refined from."""
        mapping = np.arange(self.num_triangles)
        mesh: Mesh = self
        while mesh is not coarse:
            if mesh.parent is None or mesh.coarser is None:
                raise ValueError("mesh is not a refinement of the given coarse mesh")
            mapping = mesh.parent[mapping]
            mesh = mesh.coarser
        return mapping


@dataclass(frozen=True)
class MeshQuality:
    """Size and shape measures of a mesh."""

    h: float
    h_min: float
    shape_ratio: float


@dataclass(frozen=True, eq=False)
class QuadRule:
    """Symmetric triangle quadrature rule in barycentric coordinates."""

    points: FloatArray  # (n, 3) barycentric
    weights: FloatArray  # (n,) summing to 1
    degree: int

    @property
    def ref_points(self) -> FloatArray:
        """Points on the reference triangle (0,0),(1,0),(0,1)."""
        return np.asarray(self.points[:, 1:3])

    @property
    def num_points(self) -> int:
        """Return the number of points."""
        return int(self.weights.shape[0])


class MeshData(NamedTuple):
    """Raw mesh arrays as read from a file, before edge construction."""

    nodes: FloatArray  # (V, 2)
    triangles: IntArray  # (T, 3) zero-based
    region_tags: IntArray  # (T,)
    boundary_markers: dict[tuple[int, int], int]
    physical_names: dict[tuple[int, int], str]  # (dimension, tag) -> name


class DofDescriptor(NamedTuple):
    """Entity and moment a local degree of freedom belongs to."""

    entity: DofEntity
    index: int  # local vertex / edge number, 0 for interior
    moment: int


@dataclass(frozen=True, eq=False)
class DofMap:
    """Global numbering of a finite element space on a mesh."""

    family: SpaceFamily
    order: int
    broken: bool
    ndofs: int
    cell_dofs: IntArray  # (T, nloc)
    cell_signs: FloatArray  # (T, nloc)
    constrained: IntArray
    edge_dofs: IntArray | None = None  # (E, k+1) for edge-trace spaces

    @cached_property
    def free_index(self) -> IntArray:
        """Position of every dof among the free dofs, -1 if constrained."""
        index = np.full(self.ndofs, -1, dtype=np.int64)
        free = self.free_dofs
        index[free] = np.arange(free.shape[0])
        return index

    @cached_property
    def free_dofs(self) -> IntArray:
        """Unconstrained dofs in increasing order."""
        mask = np.ones(self.ndofs, dtype=bool)
        mask[self.constrained] = False
        return np.flatnonzero(mask)

    @property
    def num_free(self) -> int:
        """Return the number of unconstrained dofs."""
        return int(self.free_dofs.shape[0])

    @property
    def local_size(self) -> int:
        """Return the number of dofs per element."""
        return int(self.cell_dofs.shape[1])


@dataclass(frozen=True, eq=False)
class FieldCoefficients:
    """Coefficient vector of a discrete field."""

    dofmap: DofMap
    values: FloatArray

    def __post_init__(self) -> None:
        """Check the coefficient count."""
        if self.values.shape != (self.dofmap.ndofs,):
            raise FieldSizeMismatchError(
                f"expected {self.dofmap.ndofs} coefficients, got {self.values.shape}"
            )

    def cell_values(self) -> FloatArray:
        """Gather coefficients per element, shape (T, nloc)."""
        return np.asarray(self.values[self.dofmap.cell_dofs])


@dataclass(frozen=True, eq=False)
class SparseSymmetric:
    """Sparse symmetric matrix in compressed row storage."""

    matrix: sp.csr_matrix

    @classmethod
    def from_matrix(
        cls, matrix: sp.spmatrix | FloatArray, rtol: float = SYMMETRY_RTOL
    ) -> SparseSymmetric:
        """Wrap a matrix after certifying its symmetry."""
        csr = sp.csr_matrix(matrix, dtype=np.float64)
        csr.sum_duplicates()
        csr.sort_indices()
        if csr.shape[0] != csr.shape[1]:
            raise LinearSolveFailureError(f"matrix is not square: {csr.shape}")
        if csr.nnz:
            scale = float(abs(csr).max())
            asymmetry = abs(csr - csr.T)
            max_asymmetry = float(asymmetry.max()) if asymmetry.nnz else 0.0
            if max_asymmetry > rtol * scale:
                raise LinearSolveFailureError(
                    f"matrix is not symmetric: max|A-A^T| = {max_asymmetry:.3e}"
                )
        return cls(csr)

    @property
    def dimension(self) -> int:
        """Return the number of rows."""
        return int(self.matrix.shape[0])

    @property
    def nnz(self) -> int:
        """Return the number of stored entries."""
        return int(self.matrix.nnz)

    @property
    def row_offsets(self) -> IntArray:
        """CSR row pointer."""
        return np.asarray(self.matrix.indptr)

    @property
    def column_indices(self) -> IntArray:
        """CSR column indices, sorted per row."""
        return np.asarray(self.matrix.indices)

    @property
    def values(self) -> FloatArray:
        """CSR values."""
        return np.asarray(self.matrix.data)


@dataclass(frozen=True, eq=False)
class LocalBlocks:
    """Per-element blocks of the linearized hybrid system."""

    mass: FloatArray  # M_T, (T, nV, nV)
    curl: FloatArray  # B_T, (T, nQ, nV)
    sigma_mass: FloatArray  # C_T, (T, nQ, nQ)
    trace: FloatArray  # L_T, (T, nL, nV)
    field_rhs: FloatArray  # r_T, (T, nV)
    potential_rhs: FloatArray  # w_T, (T, nQ)
    trace_residual: FloatArray  # L_T H_T, (T, nL)


@dataclass(frozen=True, eq=False)
class LocalElimination:
    """Affine maps from trace updates to local field and potential updates."""

    field_from_trace: FloatArray  # (T, nV, nL)
    potential_from_trace: FloatArray  # (T, nQ, nL)
    field_offset: FloatArray  # (T, nV)
    potential_offset: FloatArray  # (T, nQ)


@dataclass(frozen=True, eq=False)
class CondensedSystem:
    """Schur complement system for the interior-edge trace unknowns."""

    matrix: SparseSymmetric
    rhs: FloatArray
    elimination: LocalElimination
    trace_dofmap: DofMap


@dataclass(frozen=True, eq=False)
class PrimalSystem:
    """Newton system of the vector potential formulation over free dofs."""

    matrix: SparseSymmetric
    residual: FloatArray
    dofmap: DofMap


@dataclass
class SolveReport:
    """Newton trace and linear system statistics of one solve."""

    formulation: Formulation
    order: int
    converged: bool = False
    iterations: int = 0
    history: list[IterationRecord] = field(default_factory=list)
    coefficients: FloatArray = field(default_factory=lambda: np.zeros(0))
    reference_norm: float = 0.0
    ndofs: int = 0
    nnz: int = 0
    wall_time: float = 0.0

    @property
    def residual_norms(self) -> list[float]:
        """Residual norm per iteration, starting with the initial iterate."""
        return [record["residual_norm"] for record in self.history]

    @property
    def steps(self) -> list[float]:
        """Accepted step sizes, one per Newton update."""
        return [record["step"] for record in self.history[1:]]


@dataclass
class RunConfig:
    """Options of one command line invocation."""

    subcommand: str
    mesh: Path | None = None
    materials: Path | None = None
    config: Path | None = None
    case: str = "manufactured_linear"
    formulation: Formulation = Formulation.BOTH
    order: int = 1  # 1 or 2, the formulation order k is order - 1
    levels: int = 4
    base_n: int = 4
    sigma: float = 0.0
    tol: float | None = None
    max_iterations: int | None = None
    output: Path = Path("out")
    seed: int = DEFAULT_SEED
    timings: bool = True

    @property
    def k(self) -> int:
        """Return the internal formulation order."""
        return self.order - 1
