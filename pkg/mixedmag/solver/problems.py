"""Newton problems of the primal and hybrid mixed formulations."""

from __future__ import annotations

from time import process_time

import numpy as np

from mixedmag.assembly import (
    MixedDiscretization,
    PrimalDiscretization,
    assemble_local_blocks,
    assemble_primal,
    condense,
    mixed_residual,
    primal_residual,
    recover,
)
from mixedmag.material import MaterialMap
from mixedmag.models import FloatArray, Formulation, LinearSystemInfo
from mixedmag.solver.linear import solve_spd


class PrimalProblem:
    """Newton problem over the free Lagrange dofs of the vector potential."""

    formulation = Formulation.PRIMAL

    def __init__(
        self, disc: PrimalDiscretization, materials: MaterialMap, method: str = "lu"
    ) -> None:
        """Bind discretization, materials and linear solver."""
        materials.require_certified()
        materials.check_regions(disc.mesh.region_tags)
        self.disc = disc
        self.materials = materials
        self.method = method
        self.order = disc.order

    def zero_state(self) -> FloatArray:
        return np.zeros(self.disc.dofmap.num_free)

    def residual(self, state: FloatArray) -> FloatArray:
        return primal_residual(self.disc, self.materials, state)

    def direction(self, state: FloatArray) -> tuple[FloatArray, LinearSystemInfo]:
        system = assemble_primal(self.disc, self.materials, state)
        start = process_time()
        update = solve_spd(system.matrix, -system.residual, method=self.method)
        return update, LinearSystemInfo(
            ndofs=system.matrix.dimension,
            nnz=system.matrix.nnz,
            solve_time=process_time() - start,
        )


class MixedProblem:
    """Hybridized Newton problem: condense, solve for the multiplier, recover locally.

    The state is [H, a, a_hat]; the residual is that of the conforming mixed
    equations, which does not depend on a_hat.
    """

    formulation = Formulation.MIXED

    def __init__(
        self, mix: MixedDiscretization, materials: MaterialMap, method: str = "lu"
    ) -> None:
        """Bind discretization, materials and linear solver."""
        materials.require_certified()
        materials.check_regions(mix.mesh.region_tags)
        self.mix = mix
        self.materials = materials
        self.method = method
        self.order = mix.order

    def zero_state(self) -> FloatArray:
        return self.mix.zero_state()

    def residual(self, state: FloatArray) -> FloatArray:
        field, potential, _ = self.mix.split(state)
        res_v, res_q = mixed_residual(self.mix, self.materials, field, potential)
        return np.concatenate((res_v, res_q))

    def direction(self, state: FloatArray) -> tuple[FloatArray, LinearSystemInfo]:
        blocks = assemble_local_blocks(self.mix, self.materials, state)
        condensed = condense(self.mix, blocks)
        start = process_time()
        multiplier = solve_spd(condensed.matrix, condensed.rhs, method=self.method)
        solve_time = process_time() - start
        recovered = recover(self.mix, condensed, multiplier)
        full_multiplier = np.zeros(self.mix.trace.ndofs)
        full_multiplier[self.mix.trace.free_dofs] = multiplier
        update = self.mix.join(recovered.field, recovered.potential, full_multiplier)
        return update, LinearSystemInfo(
            ndofs=condensed.matrix.dimension,
            nnz=condensed.matrix.nnz,
            solve_time=solve_time,
        )
