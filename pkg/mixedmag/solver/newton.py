"""Damped Newton iteration with Armijo backtracking on the residual norm."""

from __future__ import annotations

from dataclasses import dataclass
import logging
from time import perf_counter
from typing import Protocol

import numpy as np

from mixedmag.const import (
    ARMIJO_C,
    BACKTRACK_FACTOR,
    MIN_STEP,
    NEWTON_ABS_TOL,
    NEWTON_MAX_ITERATIONS,
    NEWTON_REL_TOL,
)
from mixedmag.exceptions import ConfigError, LineSearchStalledError, MaxIterationsError
from mixedmag.models import (
    FloatArray,
    Formulation,
    IterationRecord,
    LinearSystemInfo,
    SolveReport,
)

_LOGGER = logging.getLogger("mixedmag.log")


@dataclass(frozen=True)
class NewtonOptions:
    """Stopping and line search parameters."""

    rel_residual_tol: float = NEWTON_REL_TOL
    abs_residual_tol: float = NEWTON_ABS_TOL
    max_iterations: int = NEWTON_MAX_ITERATIONS
    armijo_c: float = ARMIJO_C
    backtrack_factor: float = BACKTRACK_FACTOR
    min_step: float = MIN_STEP
    raise_on_failure: bool = True

    def __post_init__(self) -> None:
        """Validate ranges."""
        if not 0 < self.armijo_c < 1:
            raise ConfigError(f"armijo_c must lie in (0, 1), got {self.armijo_c}")
        if not 0 < self.backtrack_factor < 1:
            raise ConfigError(f"backtrack_factor must lie in (0, 1), got {self.backtrack_factor}")
        if min(self.rel_residual_tol, self.abs_residual_tol, self.min_step) <= 0:
            raise ConfigError("tolerances and min_step must be positive")
        if self.max_iterations < 0:
            raise ConfigError(f"max_iterations must be >= 0, got {self.max_iterations}")


class NewtonProblem(Protocol):
    """Nonlinear system F(x) = 0 with a Newton direction."""

    formulation: Formulation
    order: int

    def zero_state(self) -> FloatArray:
        """State with all coefficients zero."""

    def residual(self, state: FloatArray) -> FloatArray:
        """Algebraic residual whose norm drives the line search."""

    def direction(self, state: FloatArray) -> tuple[FloatArray, LinearSystemInfo]:
        """Solve the linearized system at `state`."""


def _norm(vector: FloatArray) -> float:
    return float(np.linalg.norm(vector))


def newton(
    problem: NewtonProblem,
    initial: FloatArray | None = None,
    options: NewtonOptions | None = None,
) -> SolveReport:
    """Iterate x <- x + tau dx until ||R(x)|| <= tol ||R(0)||.

    The step tau is the largest of 1, beta, beta^2, ... with
    ||R(x + tau dx)|| <= (1 - c tau) ||R(x)||.
    """
    opts = options or NewtonOptions()
    start = perf_counter()
    report = SolveReport(formulation=problem.formulation, order=problem.order + 1)
    zero = problem.zero_state()
    state = zero.copy() if initial is None else np.asarray(initial, dtype=np.float64).copy()
    report.reference_norm = _norm(problem.residual(zero))
    threshold = (
        opts.rel_residual_tol * report.reference_norm
        if report.reference_norm > 0
        else opts.abs_residual_tol
    )

    def relative(norm: float) -> float:
        return norm / report.reference_norm if report.reference_norm > 0 else norm

    norm = _norm(problem.residual(state))
    report.history.append(
        IterationRecord(
            iteration=0,
            residual_norm=norm,
            relative_residual=relative(norm),
            step=0.0,
            linear_solve_time=0.0,
        )
    )
    while norm > threshold:
        if report.iterations >= opts.max_iterations:
            return _fail(
                report,
                state,
                start,
                opts,
                MaxIterationsError(
                    f"no convergence in {opts.max_iterations} iterations "
                    f"(relative residual {relative(norm):.3e})",
                    report,
                ),
            )
        solve_start = perf_counter()
        update, info = problem.direction(state)
        solve_time = perf_counter() - solve_start
        report.ndofs = info["ndofs"]
        report.nnz = info["nnz"]

        step = 1.0
        while True:
            trial = state + step * update
            trial_norm = _norm(problem.residual(trial))
            if trial_norm <= (1.0 - opts.armijo_c * step) * norm:
                break
            step *= opts.backtrack_factor
            if step < opts.min_step:
                return _fail(
                    report,
                    state,
                    start,
                    opts,
                    LineSearchStalledError(
                        f"line search stalled at iteration {report.iterations + 1} "
                        f"(relative residual {relative(norm):.3e})",
                        report,
                    ),
                )
        state = trial
        norm = trial_norm
        report.iterations += 1
        report.history.append(
            IterationRecord(
                iteration=report.iterations,
                residual_norm=norm,
                relative_residual=relative(norm),
                step=step,
                linear_solve_time=solve_time,
            )
        )
        _LOGGER.debug(
            "Newton %s iteration %s: residual %.3e, step %s",
            problem.formulation.value,
            report.iterations,
            norm,
            step,
        )

    report.converged = True
    report.coefficients = state
    report.wall_time = perf_counter() - start
    return report


def _fail(
    report: SolveReport,
    state: FloatArray,
    start: float,
    options: NewtonOptions,
    error: MaxIterationsError | LineSearchStalledError,
) -> SolveReport:
    report.coefficients = state
    report.wall_time = perf_counter() - start
    if options.raise_on_failure:
        raise error
    _LOGGER.warning("%s", error)
    return report
