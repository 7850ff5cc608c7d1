"""mixedmag is a library for nonlinear 2D magnetostatics with hybrid mixed finite elements."""

from .mixedmag import MagnetostaticSolver
from .models import Formulation, Mesh, SolveReport

__all__ = ["Formulation", "MagnetostaticSolver", "Mesh", "SolveReport"]
