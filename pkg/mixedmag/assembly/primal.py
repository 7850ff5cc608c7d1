"""Vector potential formulation with continuous Lagrange elements."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mixedmag.const import QUADRATURE_DEGREE
from mixedmag.fe import build_dofmap, element_matrix_to_global, mapped_basis
from mixedmag.material import MaterialMap
from mixedmag.models import (
    DofMap,
    FloatArray,
    Mesh,
    PrimalSystem,
    QuadRule,
    SpaceFamily,
    SparseSymmetric,
)
from mixedmag.quadrature import rule_for_degree


def rotated_gradient(gradients: FloatArray) -> FloatArray:
    """Curl a = (d_y a, -d_x a) from gradients (..., 2)."""
    return np.stack((gradients[..., 1], -gradients[..., 0]), axis=-1)


@dataclass(frozen=True, eq=False)
class PrimalDiscretization:
    """Lagrange space of order k + 1 with homogeneous Dirichlet boundary dofs."""

    mesh: Mesh
    order: int  # formulation order k
    dofmap: DofMap
    rule: QuadRule
    weights: FloatArray  # (T, q)
    points: FloatArray  # (T, q, 2)
    phi: FloatArray  # (T, q, n)
    curls: FloatArray  # (T, q, n, 2)

    @classmethod
    def build(cls, mesh: Mesh, order: int) -> PrimalDiscretization:
        """Number the space and tabulate the mapped basis."""
        dofmap = build_dofmap(SpaceFamily.LAGRANGE, order + 1, mesh)
        rule = rule_for_degree(QUADRATURE_DEGREE[order])
        basis = mapped_basis(dofmap, mesh, rule.ref_points)
        return cls(
            mesh=mesh,
            order=order,
            dofmap=dofmap,
            rule=rule,
            weights=np.outer(mesh.areas, rule.weights),
            points=mesh.to_physical(rule.ref_points),
            phi=np.ascontiguousarray(basis.values),
            curls=rotated_gradient(basis.derivatives),
        )

    def expand(self, free_values: FloatArray) -> FloatArray:
        """Full coefficient vector with zeros on the boundary."""
        full = np.zeros(self.dofmap.ndofs)
        full[self.dofmap.free_dofs] = free_values
        return full


def _gather(disc: PrimalDiscretization, coefficients: FloatArray) -> FloatArray:
    if coefficients.shape[0] != disc.dofmap.ndofs:
        coefficients = disc.expand(coefficients)
    return np.asarray(coefficients[disc.dofmap.cell_dofs])


def _local_residual(
    disc: PrimalDiscretization, materials: MaterialMap, local: FloatArray
) -> tuple[FloatArray, FloatArray]:
    """Element residual vectors and Curl a at the quadrature points."""
    tags = disc.mesh.region_tags
    values = np.einsum("tqi,ti->tq", disc.phi, local)
    flux = np.einsum("tqic,ti->tqc", disc.curls, local)
    field = materials.f_grad(tags, flux)
    sigma = materials.sigma_per_element(tags)
    current = materials.current_at(tags, disc.points)
    residual = np.einsum(
        "tq,tqi->ti", disc.weights * (sigma[:, None] * values - current), disc.phi
    ) + np.einsum("tq,tqic,tqc->ti", disc.weights, disc.curls, field)
    return residual, flux


def _scatter_free(disc: PrimalDiscretization, local_residual: FloatArray) -> FloatArray:
    dofmap = disc.dofmap
    residual = np.bincount(
        dofmap.cell_dofs.reshape(-1), weights=local_residual.reshape(-1), minlength=dofmap.ndofs
    )
    return np.asarray(residual[dofmap.free_dofs])


def assemble_primal(
    disc: PrimalDiscretization, materials: MaterialMap, coefficients: FloatArray
) -> PrimalSystem:
    """Residual (sigma a, v) + (f'(Curl a), Curl v) - (j, v) and its Jacobian over free dofs.

    `coefficients` holds either all dofs or only the free ones.
    """
    materials.require_certified()
    tags = disc.mesh.region_tags
    local_residual, flux = _local_residual(disc, materials, _gather(disc, coefficients))
    hessian = materials.f_hess(tags, flux)
    sigma = materials.sigma_per_element(tags)
    local_matrix = np.einsum(
        "t,tq,tqi,tqj->tij", sigma, disc.weights, disc.phi, disc.phi
    ) + np.einsum("tq,tqic,tqcd,tqjd->tij", disc.weights, disc.curls, hessian, disc.curls)
    local_matrix = 0.5 * (local_matrix + local_matrix.transpose(0, 2, 1))
    free = disc.dofmap.free_dofs
    matrix = element_matrix_to_global(disc.dofmap, disc.dofmap, local_matrix)
    return PrimalSystem(
        matrix=SparseSymmetric.from_matrix(matrix[free][:, free]),
        residual=_scatter_free(disc, local_residual),
        dofmap=disc.dofmap,
    )


def primal_residual(
    disc: PrimalDiscretization, materials: MaterialMap, coefficients: FloatArray
) -> FloatArray:
    """Residual over free dofs without assembling the Jacobian."""
    local_residual, _ = _local_residual(disc, materials, _gather(disc, coefficients))
    return _scatter_free(disc, local_residual)
