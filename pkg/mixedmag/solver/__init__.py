"""Linear solvers and the damped Newton iteration."""

from .linear import SOLVE_METHODS, solve_spd
from .newton import NewtonOptions, NewtonProblem, newton
from .problems import MixedProblem, PrimalProblem

__all__ = [
    "SOLVE_METHODS",
    "MixedProblem",
    "NewtonOptions",
    "NewtonProblem",
    "PrimalProblem",
    "newton",
    "solve_spd",
]
