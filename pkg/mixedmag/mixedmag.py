"""mixedmag solves 2D nonlinear magnetostatics with primal and hybrid mixed finite elements."""

from __future__ import annotations

import logging
from pathlib import Path
import time

from mixedmag.__version__ import __version__
from mixedmag.const import CERTIFY_SAMPLES, DEFAULT_SEED
from mixedmag.loader import MaterialLoader
from mixedmag.material import MaterialMap
from mixedmag.models import FloatArray, Formulation, Mesh
from mixedmag.post import Solution, solve_formulation
from mixedmag.solver import NewtonOptions
from mixedmag.util import load_mesh

_LOGGER = logging.getLogger("mixedmag.log")


class MagnetostaticSolver:
    """Load a mesh and a material map and solve on them."""

    def __init__(
        self,
        mesh: str | Path | Mesh,
        materials: str | Path | MaterialMap,
        options: NewtonOptions | None = None,
        seed: int = DEFAULT_SEED,
        method: str = "lu",
    ):
        """Initialize a MagnetostaticSolver; paths are read immediately."""
        self.mesh = mesh if isinstance(mesh, Mesh) else load_mesh(mesh)
        self.materials = (
            materials if isinstance(materials, MaterialMap) else MaterialLoader.load(materials)
        )
        self.materials.check_regions(self.mesh.region_tags)
        self.options = options
        self.seed = seed
        self.method = method

    def certify(self, n_samples: int = CERTIFY_SAMPLES) -> None:
        """Certify the material map unless already done."""
        if not self.materials.certified:
            self.materials.certify(n_samples, self.seed)

    def solve(
        self,
        formulation: Formulation = Formulation.MIXED,
        order: int = 0,
        initial: FloatArray | None = None,
    ) -> Solution:
        """Solve one formulation of order k (0 or 1)."""
        _LOGGER.info(
            "mixedmag version %s solving %s order %s on %s triangles",
            __version__,
            formulation.value,
            order + 1,
            self.mesh.num_triangles,
        )
        _start = time.time()
        self.certify()
        solution = solve_formulation(
            self.mesh,
            self.materials,
            formulation,
            order,
            self.options,
            initial,
            self.method,
        )
        _LOGGER.info("Solving took %s seconds", time.time() - _start)
        _LOGGER.info(
            "Converged in %s Newton iterations with %s unknowns in the final system",
            solution.report.iterations,
            solution.report.ndofs,
        )
        return solution
