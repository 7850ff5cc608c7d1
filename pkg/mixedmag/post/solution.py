"""Solve one formulation on one mesh and view the result per element."""

from __future__ import annotations

from dataclasses import dataclass
import logging

import numpy as np

from mixedmag.assembly import MixedDiscretization, PrimalDiscretization
from mixedmag.exceptions import ConfigError
from mixedmag.fe import REFERENCE_VERTICES, evaluate_field, prolongate
from mixedmag.material import MaterialMap
from mixedmag.models import FloatArray, Formulation, Mesh, SolveReport
from mixedmag.post.flux import FluxField, post_b_mixed, post_b_primal
from mixedmag.solver import MixedProblem, NewtonOptions, PrimalProblem, newton

_LOGGER = logging.getLogger("mixedmag.log")


@dataclass(frozen=True, eq=False)
class Solution:
    """Converged state of one formulation together with its flux density."""

    formulation: Formulation
    order: int  # formulation order k
    materials: MaterialMap
    report: SolveReport
    discretization: PrimalDiscretization | MixedDiscretization
    flux: FluxField

    @property
    def mesh(self) -> Mesh:
        """Return the mesh solved on."""
        return self.discretization.mesh

    @property
    def state(self) -> FloatArray:
        """Final coefficient vector."""
        return self.report.coefficients

    def potential_cells(self) -> FloatArray:
        """Element means of the vector potential a."""
        disc = self.discretization
        if isinstance(disc, PrimalDiscretization):
            local = disc.expand(self.state)[disc.dofmap.cell_dofs]
            values = np.einsum("tqi,ti->tq", disc.phi, local)
            return np.asarray(np.einsum("q,tq->t", disc.rule.weights, values))
        _, potential, _ = disc.split(self.state)
        values = np.einsum("tqi,ti->tq", disc.phi, potential[disc.potential.cell_dofs])
        return np.asarray(np.einsum("q,tq->t", disc.rule.weights, values))

    def field_magnitude_cells(self) -> FloatArray:
        """Element means of |H|; the primal field is H = f'(Curl a)."""
        disc = self.discretization
        tags = self.mesh.region_tags
        if isinstance(disc, PrimalDiscretization):
            local = disc.expand(self.state)[disc.dofmap.cell_dofs]
            field = self.materials.f_grad(tags, np.einsum("tqic,ti->tqc", disc.curls, local))
        else:
            field = disc.field_at_points(disc.split(self.state).field)
        magnitude = np.hypot(field[..., 0], field[..., 1])
        return np.asarray(np.einsum("q,tq->t", disc.rule.weights, magnitude))

    def potential_vertices(self) -> FloatArray:
        """Vector potential at the mesh vertices, averaged over the incident elements."""
        disc = self.discretization
        if isinstance(disc, PrimalDiscretization):
            dofmap, coefficients = disc.dofmap, disc.expand(self.state)
        else:
            dofmap, coefficients = disc.potential, disc.split(self.state).potential
        corners = evaluate_field(dofmap, coefficients, self.mesh, REFERENCE_VERTICES).values
        return _vertex_mean(self.mesh, corners)

    def flux_vertices(self) -> FloatArray:
        """Flux density B at the mesh vertices, averaged over the incident elements."""
        return _vertex_mean(self.mesh, self.flux.evaluate(REFERENCE_VERTICES))

    def prolongate(self, fine: Mesh) -> FloatArray:
        """Initial state on a uniform refinement, interpolated from this solution."""
        disc = self.discretization
        if isinstance(disc, PrimalDiscretization):
            target = PrimalDiscretization.build(fine, self.order)
            full = prolongate(
                disc.dofmap, disc.expand(self.state), self.mesh, target.dofmap, fine
            )
            return np.asarray(full[target.dofmap.free_dofs])
        mixed = MixedDiscretization.build(fine, self.order)
        field, potential, _ = disc.split(self.state)
        return mixed.join(
            prolongate(disc.field, field, self.mesh, mixed.field, fine),
            prolongate(disc.potential, potential, self.mesh, mixed.potential, fine),
            np.zeros(mixed.trace.ndofs),
        )


def solve_formulation(
    mesh: Mesh,
    materials: MaterialMap,
    formulation: Formulation,
    order: int,
    options: NewtonOptions | None = None,
    initial: FloatArray | None = None,
    method: str = "lu",
) -> Solution:
    """Run Newton for one formulation of order k on a mesh."""
    if formulation is Formulation.PRIMAL:
        primal = PrimalDiscretization.build(mesh, order)
        report = newton(PrimalProblem(primal, materials, method), initial, options)
        _log_solve(report, mesh)
        flux = post_b_primal(primal, report.coefficients)
        return Solution(formulation, order, materials, report, primal, flux)
    if formulation is Formulation.MIXED:
        mixed = MixedDiscretization.build(mesh, order)
        report = newton(MixedProblem(mixed, materials, method), initial, options)
        _log_solve(report, mesh)
        field, _, _ = mixed.split(report.coefficients)
        flux = post_b_mixed(mixed, materials, field)
        return Solution(formulation, order, materials, report, mixed, flux)
    raise ConfigError(f"a single formulation is required, got {formulation.value}")


def _vertex_mean(mesh: Mesh, corners: FloatArray) -> FloatArray:
    """Average per-corner values (T, 3) or (T, 3, 2) onto the mesh nodes."""
    nodes = mesh.triangles.reshape(-1)
    counts = np.bincount(nodes, minlength=mesh.num_nodes)
    values = corners.reshape(nodes.shape[0], -1)
    sums = np.stack(
        [np.bincount(nodes, weights=column, minlength=mesh.num_nodes) for column in values.T],
        axis=1,
    )
    mean = sums / np.maximum(counts, 1)[:, None]
    return np.asarray(mean[:, 0] if corners.ndim == 2 else mean)


def _log_solve(report: SolveReport, mesh: Mesh) -> None:
    _LOGGER.info(
        "Solved %s order %s on %s triangles: %s Newton iterations, %s dofs, %.3f s",
        report.formulation.value,
        report.order,
        mesh.num_triangles,
        report.iterations,
        report.ndofs,
        report.wall_time,
    )
