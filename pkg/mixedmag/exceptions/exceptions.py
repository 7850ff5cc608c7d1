"""Exceptions for the mixedmag library."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from mixedmag.models import SolveReport


class MixedMagException(Exception):
    """Library base exception class."""


class InputError(MixedMagException):
    """Invalid user input: mesh, material, configuration or file content."""


class SolverError(MixedMagException):
    """Numerical failure while solving."""


class NonConformingError(InputError):
    """Triangulation is not edge-to-edge conforming."""


class DegenerateTriangleError(InputError):
    """Triangle with zero area."""


class IndexOutOfRangeError(InputError):
    """Triangle references a node index that does not exist."""


class UnsupportedDegreeError(InputError):
    """No quadrature rule for the requested degree."""


class UnsupportedSpaceError(InputError):
    """Finite element family and order combination is not available."""


class SingularJacobianError(InputError):
    """Element map is not invertible."""


class InvalidParamsError(InputError):
    """Material law parameters out of range."""


class MonotonicityViolationError(InputError):
    """Spline fit produced a non-monotone derivative."""

    def __init__(self, message: str, interval: tuple[float, float]) -> None:
        """Initialize with the offending knot interval."""
        super().__init__(f"{message} on [{interval[0]:.6g}, {interval[1]:.6g}]")
        self.interval = interval


class NotStrictlyIncreasingError(InputError):
    """Tabulated derivative is not strictly increasing."""


class MonotonicityFailureError(InputError):
    """Material law is not uniformly monotone on the sampled range."""


class UncertifiedMaterialError(InputError):
    """Material map was used before certification."""


class QuadratureTooWeakError(InputError):
    """Quadrature rule does not integrate degree 2k+2 exactly."""


class UnsupportedVersionError(InputError):
    """Mesh file version is not supported."""


class MalformedSectionError(InputError):
    """Mesh file section could not be parsed."""

    def __init__(self, message: str, line_number: int) -> None:
        """Initialize with the 1-based line number of the offending line."""
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class NonPlanarError(InputError):
    """Mesh node has a non-zero z-coordinate."""


class FieldSizeMismatchError(InputError):
    """Field length does not match the mesh or dof map."""


class ConfigError(InputError):
    """Invalid configuration or material definition."""


class LocalSolveFailureError(SolverError):
    """Local saddle block of an element is singular."""

    def __init__(self, element: int) -> None:
        """Initialize with the failing element index."""
        super().__init__(f"local saddle block of element {element} is singular")
        self.element = element


class NotPositiveDefiniteError(SolverError):
    """Matrix is not symmetric positive definite."""

    def __init__(self, message: str, pivot: int) -> None:
        """Initialize with the offending pivot (row) index."""
        super().__init__(f"{message} (pivot {pivot})")
        self.pivot = pivot


class LinearSolveFailureError(SolverError):
    """Linear solve did not meet its residual contract."""


class NewtonFailureError(SolverError):
    """Newton iteration stopped without convergence."""

    def __init__(self, message: str, report: SolveReport | None = None) -> None:
        """Initialize with the partial report."""
        super().__init__(message)
        self.report = report


class LineSearchStalledError(NewtonFailureError):
    """Armijo backtracking fell below the minimal step size."""


class MaxIterationsError(NewtonFailureError):
    """Newton iteration limit reached."""
