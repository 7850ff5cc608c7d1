"""Symmetric positive definite sparse solves."""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt
import scipy.sparse.linalg as spla

from mixedmag.const import LINEAR_SOLVE_RTOL
from mixedmag.exceptions import LinearSolveFailureError, NotPositiveDefiniteError
from mixedmag.models import FloatArray, SparseSymmetric

_LOGGER = logging.getLogger("mixedmag.log")

MAX_REFINEMENT_STEPS = 5
SOLVE_METHODS = ("lu", "cg")


def _factorize(matrix: SparseSymmetric) -> spla.SuperLU:
    """Symmetric-mode LU without row pivoting, so U holds the LDL^T pivots."""
    try:
        factor = spla.splu(
            matrix.matrix.tocsc(),
            permc_spec="MMD_AT_PLUS_A",
            diag_pivot_thresh=0.0,
            options={"SymmetricMode": True},
        )
    except RuntimeError as err:
        raise NotPositiveDefiniteError(f"factorization failed: {err}", pivot=-1) from None
    pivots = factor.U.diagonal()
    bad = np.flatnonzero(~(pivots > 0))
    if bad.size:
        original = int(np.argsort(factor.perm_c)[bad[0]])
        raise NotPositiveDefiniteError(
            f"non-positive pivot {pivots[bad[0]]:.3e} in symmetric factorization",
            pivot=original,
        )
    return factor


def _solve_direct(matrix: SparseSymmetric, rhs: FloatArray, rtol: float) -> FloatArray:
    factor = _factorize(matrix)
    target = rtol * float(np.linalg.norm(rhs))
    solution = factor.solve(rhs)
    for _ in range(MAX_REFINEMENT_STEPS):
        residual = rhs - matrix.matrix @ solution
        if float(np.linalg.norm(residual)) <= target:
            return np.asarray(solution)
        solution = solution + factor.solve(residual)
    residual_norm = float(np.linalg.norm(rhs - matrix.matrix @ solution))
    if residual_norm > target:
        raise LinearSolveFailureError(
            f"residual {residual_norm:.3e} above {target:.3e} after iterative refinement"
        )
    return np.asarray(solution)


def _solve_cg(matrix: SparseSymmetric, rhs: FloatArray, rtol: float) -> FloatArray:
    diagonal = matrix.matrix.diagonal()
    bad = np.flatnonzero(~(diagonal > 0))
    if bad.size:
        raise NotPositiveDefiniteError("non-positive diagonal entry", pivot=int(bad[0]))
    preconditioner = spla.LinearOperator(
        matrix.matrix.shape, matvec=lambda v: v / diagonal, dtype=np.float64
    )
    solution, info = spla.cg(
        matrix.matrix,
        rhs,
        rtol=rtol,
        atol=0.0,
        maxiter=10 * matrix.dimension + 100,
        M=preconditioner,
    )
    if info < 0:
        raise NotPositiveDefiniteError("conjugate gradient breakdown", pivot=-1)
    residual_norm = float(np.linalg.norm(rhs - matrix.matrix @ solution))
    if residual_norm > rtol * float(np.linalg.norm(rhs)):
        raise LinearSolveFailureError(
            f"conjugate gradients stopped at residual {residual_norm:.3e} (info={info})"
        )
    return np.asarray(solution)


def solve_spd(
    matrix: SparseSymmetric,
    rhs: npt.ArrayLike,
    method: str = "lu",
    rtol: float = LINEAR_SOLVE_RTOL,
) -> FloatArray:
    """Solve A x = b for symmetric positive definite A with ||Ax - b|| <= rtol ||b||."""
    b = np.asarray(rhs, dtype=np.float64)
    if b.shape != (matrix.dimension,):
        raise LinearSolveFailureError(
            f"right-hand side of shape {b.shape} for a {matrix.dimension}x{matrix.dimension} matrix"
        )
    if matrix.dimension == 0 or not np.any(b):
        return np.zeros(matrix.dimension)
    if method == "lu":
        return _solve_direct(matrix, b, rtol)
    if method == "cg":
        return _solve_cg(matrix, b, rtol)
    raise ValueError(f"unknown solve method {method!r}, expected one of {SOLVE_METHODS}")
