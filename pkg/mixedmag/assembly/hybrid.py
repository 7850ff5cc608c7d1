"""Hybridized mixed H-field formulation: local blocks, condensation and recovery.

Unknowns are the field H in the Nedelec space of order k, the potential a in
discontinuous P_k and the multiplier a_hat in P_k on interior edges. The field
is broken into per-element copies whose tangential continuity is imposed
weakly by a_hat, so every element block can be eliminated locally and only
the multiplier is solved for globally.
"""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from mixedmag.const import QUADRATURE_DEGREE
from mixedmag.exceptions import LocalSolveFailureError, QuadratureTooWeakError
from mixedmag.fe import (
    REFERENCE_VERTICES,
    BasisValues,
    build_dofmap,
    element_matrix_to_global,
    eval_basis,
    legendre,
    mapped_basis,
    reference_element,
)
from mixedmag.material import MaterialMap
from mixedmag.models import (
    LOCAL_EDGES,
    CondensedSystem,
    DofMap,
    FloatArray,
    LocalBlocks,
    LocalElimination,
    Mesh,
    QuadRule,
    SpaceFamily,
    SparseSymmetric,
)
from mixedmag.quadrature import edge_rule, rule_for_degree

_LOGGER = logging.getLogger("mixedmag.log")


class MixedState(NamedTuple):
    """Field, potential and multiplier coefficient vectors."""

    field: FloatArray
    potential: FloatArray
    multiplier: FloatArray


class Recovery(NamedTuple):
    """Locally recovered updates."""

    field: FloatArray  # conforming Nedelec coefficients
    potential: FloatArray
    broken_field: FloatArray  # (T, nV) per-element copies


class MonolithicSystem(NamedTuple):
    """Unreduced hybrid Newton system over broken field, potential and free multiplier dofs."""

    matrix: sp.csr_matrix
    rhs: FloatArray
    field_size: int
    potential_size: int


def _edge_coupling(order: int) -> FloatArray:
    """Reference integrals of L_m(s) against the tangential trace of each basis function.

    Shape (3 local edges, 2 orientations, k + 1, nV). Orientation 0 means the
    counterclockwise traversal agrees with the canonical edge direction.
    """
    element = reference_element(SpaceFamily.NEDELEC, order)
    s, weights = edge_rule(order + 2)
    coupling = np.empty((3, 2, order + 1, element.ndofs))
    for edge, (start, end) in enumerate(LOCAL_EDGES):
        direction = REFERENCE_VERTICES[end] - REFERENCE_VERTICES[start]
        points = REFERENCE_VERTICES[start] + s[:, None] * direction
        tangential = eval_basis(element, points).values @ direction  # (n, nV)
        for orientation, parameter in enumerate((s, 1.0 - s)):
            coupling[edge, orientation] = np.einsum(
                "q,qm,qj->mj", weights, legendre(order, parameter), tangential
            )
    return coupling


@dataclass(frozen=True, eq=False)
class MixedDiscretization:
    """Spaces, quadrature and mapped bases of the hybrid formulation on one mesh."""

    mesh: Mesh
    order: int
    field: DofMap
    broken_field: DofMap
    potential: DofMap
    trace: DofMap
    rule: QuadRule
    weights: FloatArray  # (T, q)
    points: FloatArray  # (T, q, 2)
    psi: BasisValues  # values (T, q, nV, 2), curls (T, q, nV)
    phi: FloatArray  # (T, q, nQ)
    trace_coupling: FloatArray  # L_T, (T, nL, nV)

    @classmethod
    def build(
        cls, mesh: Mesh, order: int, quadrature: QuadRule | None = None
    ) -> MixedDiscretization:
        """Number the spaces and tabulate everything that does not depend on the iterate."""
        rule = rule_for_degree(QUADRATURE_DEGREE[order]) if quadrature is None else quadrature
        if rule.degree < 2 * order + 2:
            raise QuadratureTooWeakError(
                f"quadrature of degree {rule.degree} is below {2 * order + 2} for order {order}"
            )
        field = build_dofmap(SpaceFamily.NEDELEC, order, mesh)
        broken = build_dofmap(SpaceFamily.NEDELEC, order, mesh, broken=True)
        potential = build_dofmap(SpaceFamily.DISCONTINUOUS_P, order, mesh)
        trace = build_dofmap(SpaceFamily.EDGE_TRACE, order, mesh)
        coupling = _edge_coupling(order)
        orientation = (mesh.triangle_edge_signs < 0).astype(np.int64)  # (T, 3)
        local = coupling[np.arange(3)[None, :], orientation]  # (T, 3, k+1, nV)
        trace_coupling = local.reshape(mesh.num_triangles, -1, broken.local_size)
        return cls(
            mesh=mesh,
            order=order,
            field=field,
            broken_field=broken,
            potential=potential,
            trace=trace,
            rule=rule,
            weights=np.outer(mesh.areas, rule.weights),
            points=mesh.to_physical(rule.ref_points),
            psi=mapped_basis(broken, mesh, rule.ref_points),
            phi=mapped_basis(potential, mesh, rule.ref_points).values,
            trace_coupling=trace_coupling * broken.cell_signs[:, None, :],
        )

    @property
    def sizes(self) -> tuple[int, int, int]:
        """Lengths of the field, potential and multiplier blocks of the state vector."""
        return self.field.ndofs, self.potential.ndofs, self.trace.ndofs

    def split(self, state: FloatArray) -> MixedState:
        """Split a flat state vector."""
        n_field, n_potential, _ = self.sizes
        return MixedState(
            state[:n_field],
            state[n_field : n_field + n_potential],
            state[n_field + n_potential :],
        )

    def join(self, field: FloatArray, potential: FloatArray, multiplier: FloatArray) -> FloatArray:
        """Concatenate block vectors into a flat state vector."""
        return np.concatenate((field, potential, multiplier))

    def zero_state(self) -> FloatArray:
        """State vector of zeros."""
        return np.zeros(sum(self.sizes))

    def field_at_points(self, field: FloatArray) -> FloatArray:
        """Conforming field values at the quadrature points, (T, q, 2)."""
        local = field[self.field.cell_dofs]
        return np.asarray(np.einsum("tqic,ti->tqc", self.psi.values, local))


def _gather(mix: MixedDiscretization, state: FloatArray) -> tuple[FloatArray, FloatArray, FloatArray]:
    field, potential, multiplier = mix.split(state)
    return (
        field[mix.field.cell_dofs],
        potential[mix.potential.cell_dofs],
        multiplier[mix.trace.cell_dofs],
    )


def _elementwise_residuals(
    mix: MixedDiscretization, materials: MaterialMap, state: FloatArray
) -> tuple[FloatArray, FloatArray, FloatArray, FloatArray, FloatArray]:
    """Residual pieces per element plus the curl and sigma blocks and H at the quadrature points."""
    field_local, potential_local, multiplier_local = _gather(mix, state)
    tags = mix.mesh.region_tags
    field_values = np.einsum("tqic,ti->tqc", mix.psi.values, field_local)
    flux = materials.g_grad(tags, field_values)
    curl = np.einsum("tq,tqi,tqj->tij", mix.weights, mix.phi, mix.psi.derivatives)
    sigma = materials.sigma_per_element(tags)
    sigma_mass = np.einsum("t,tq,tqi,tqj->tij", sigma, mix.weights, mix.phi, mix.phi)
    current = materials.current_at(tags, mix.points)
    residual_field = (
        np.einsum("tq,tqic,tqc->ti", mix.weights, mix.psi.values, flux)
        - np.einsum("tji,tj->ti", curl, potential_local)
        - np.einsum("tli,tl->ti", mix.trace_coupling, multiplier_local)
    )
    residual_potential = (
        np.einsum("tij,tj->ti", curl, field_local)
        + np.einsum("tij,tj->ti", sigma_mass, potential_local)
        - np.einsum("tq,tq,tqi->ti", mix.weights, current, mix.phi)
    )
    return residual_field, residual_potential, curl, sigma_mass, field_values


def assemble_local_blocks(
    mix: MixedDiscretization, materials: MaterialMap, state: FloatArray
) -> LocalBlocks:
    """Per-element blocks of the linearized hybrid system at the given state."""
    materials.require_certified()
    residual_field, residual_potential, curl, sigma_mass, field_values = _elementwise_residuals(
        mix, materials, state
    )
    hessian = materials.g_hess(mix.mesh.region_tags, field_values)
    mass = np.einsum(
        "tq,tqic,tqcd,tqjd->tij", mix.weights, mix.psi.values, hessian, mix.psi.values
    )
    field_local = state[: mix.field.ndofs][mix.field.cell_dofs]
    return LocalBlocks(
        mass=0.5 * (mass + mass.transpose(0, 2, 1)),
        curl=curl,
        sigma_mass=sigma_mass,
        trace=mix.trace_coupling,
        field_rhs=-residual_field,
        potential_rhs=-residual_potential,
        trace_residual=np.einsum("tli,ti->tl", mix.trace_coupling, field_local),
    )


def _first_singular(matrices: FloatArray) -> int:
    """Index of the first matrix whose Cholesky factorization fails."""
    for index, matrix in enumerate(matrices):
        try:
            np.linalg.cholesky(matrix)
        except np.linalg.LinAlgError:
            return index
    return 0


def _check_spd(matrices: FloatArray) -> None:
    try:
        np.linalg.cholesky(matrices)
    except np.linalg.LinAlgError:
        raise LocalSolveFailureError(_first_singular(matrices)) from None


def eliminate(blocks: LocalBlocks) -> LocalElimination:
    """Express local field and potential updates as affine maps of the multiplier update.

    M is factored first, then the potential Schur complement
    C + B M^-1 B^T, both symmetric positive definite.
    """
    _check_spd(blocks.mass)
    n_trace = blocks.trace.shape[1]
    stacked = np.concatenate(
        (
            blocks.field_rhs[..., None],
            blocks.trace.transpose(0, 2, 1),
            blocks.curl.transpose(0, 2, 1),
        ),
        axis=2,
    )
    solved = np.linalg.solve(blocks.mass, stacked)
    minv_r = solved[..., 0]
    minv_lt = solved[..., 1 : 1 + n_trace]
    minv_bt = solved[..., 1 + n_trace :]
    schur = blocks.sigma_mass + blocks.curl @ minv_bt
    schur = 0.5 * (schur + schur.transpose(0, 2, 1))
    _check_spd(schur)
    potential_offset = np.linalg.solve(
        schur,
        (blocks.potential_rhs - np.einsum("tij,tj->ti", blocks.curl, minv_r))[..., None],
    )[..., 0]
    potential_from_trace = -np.linalg.solve(schur, blocks.curl @ minv_lt)
    return LocalElimination(
        field_from_trace=minv_lt + minv_bt @ potential_from_trace,
        potential_from_trace=potential_from_trace,
        field_offset=minv_r + np.einsum("tij,tj->ti", minv_bt, potential_offset),
        potential_offset=potential_offset,
    )


def condense(mix: MixedDiscretization, blocks: LocalBlocks) -> CondensedSystem:
    """Assemble the Schur complement over the free (interior edge) multiplier dofs."""
    elimination = eliminate(blocks)
    local_matrix = blocks.trace @ elimination.field_from_trace
    local_matrix = 0.5 * (local_matrix + local_matrix.transpose(0, 2, 1))
    local_rhs = -blocks.trace_residual - np.einsum(
        "tli,ti->tl", blocks.trace, elimination.field_offset
    )
    trace = mix.trace
    matrix = element_matrix_to_global(trace, trace, local_matrix)
    rhs = np.bincount(
        trace.cell_dofs.reshape(-1), weights=local_rhs.reshape(-1), minlength=trace.ndofs
    )
    free = trace.free_dofs
    return CondensedSystem(
        matrix=SparseSymmetric.from_matrix(matrix[free][:, free]),
        rhs=rhs[free],
        elimination=elimination,
        trace_dofmap=trace,
    )


def recover(
    mix: MixedDiscretization, condensed: CondensedSystem, multiplier_update: FloatArray
) -> Recovery:
    """Back-substitute a multiplier update into the cached local maps.

    `multiplier_update` covers either all trace dofs or only the free ones.
    """
    trace = condensed.trace_dofmap
    full = multiplier_update
    if multiplier_update.shape[0] != trace.ndofs:
        full = np.zeros(trace.ndofs)
        full[trace.free_dofs] = multiplier_update
    local = full[trace.cell_dofs]
    elimination = condensed.elimination
    broken = elimination.field_offset + np.einsum(
        "tij,tj->ti", elimination.field_from_trace, local
    )
    potential_local = elimination.potential_offset + np.einsum(
        "tij,tj->ti", elimination.potential_from_trace, local
    )
    potential = np.zeros(mix.potential.ndofs)
    potential[mix.potential.cell_dofs] = potential_local
    return Recovery(conforming_average(mix.field, broken), potential, broken)


def conforming_average(field: DofMap, broken: FloatArray) -> FloatArray:
    """Average per-element copies of shared Nedelec dofs."""
    dofs = field.cell_dofs.reshape(-1)
    total = np.bincount(dofs, weights=broken.reshape(-1), minlength=field.ndofs)
    count = np.bincount(dofs, minlength=field.ndofs)
    return np.asarray(total / np.maximum(count, 1))


def tangential_jump(field: DofMap, broken: FloatArray) -> float:
    """Largest disagreement between per-element copies of a shared dof."""
    dofs = field.cell_dofs.reshape(-1)
    values = broken.reshape(-1)
    upper = np.full(field.ndofs, -np.inf)
    lower = np.full(field.ndofs, np.inf)
    np.maximum.at(upper, dofs, values)
    np.minimum.at(lower, dofs, values)
    return float(np.max(upper - lower)) if dofs.size else 0.0


def mixed_residual(
    mix: MixedDiscretization, materials: MaterialMap, field: FloatArray, potential: FloatArray
) -> tuple[FloatArray, FloatArray]:
    """Residuals of the conforming mixed equations over the conforming test spaces."""
    state = mix.join(field, potential, np.zeros(mix.trace.ndofs))
    residual_field, residual_potential, *_ = _elementwise_residuals(mix, materials, state)
    res_v = np.bincount(
        mix.field.cell_dofs.reshape(-1),
        weights=residual_field.reshape(-1),
        minlength=mix.field.ndofs,
    )
    res_q = np.zeros(mix.potential.ndofs)
    res_q[mix.potential.cell_dofs] = residual_potential
    return res_v, res_q


def assemble_monolithic(
    mix: MixedDiscretization, materials: MaterialMap, state: FloatArray
) -> MonolithicSystem:
    """Unreduced Newton system [[M, -B^T, -L^T], [B, C, 0], [L, 0, 0]] and its right-hand side.

    Rows and columns of the multiplier are restricted to the free trace dofs.
    """
    blocks = assemble_local_blocks(mix, materials, state)
    broken = mix.broken_field
    potential = mix.potential
    trace = mix.trace
    mass = element_matrix_to_global(broken, broken, blocks.mass)
    curl = element_matrix_to_global(potential, broken, blocks.curl)
    sigma_mass = element_matrix_to_global(potential, potential, blocks.sigma_mass)
    coupling = element_matrix_to_global(trace, broken, blocks.trace)[trace.free_dofs]
    matrix = sp.bmat(
        [
            [mass, -curl.T, -coupling.T],
            [curl, sigma_mass, None],
            [coupling, None, None],
        ],
        format="csr",
    )
    trace_residual = np.bincount(
        trace.cell_dofs.reshape(-1),
        weights=blocks.trace_residual.reshape(-1),
        minlength=trace.ndofs,
    )[trace.free_dofs]
    rhs = np.concatenate(
        (
            blocks.field_rhs.reshape(-1),
            blocks.potential_rhs.reshape(-1),
            -trace_residual,
        )
    )
    return MonolithicSystem(matrix, rhs, broken.ndofs, potential.ndofs)
