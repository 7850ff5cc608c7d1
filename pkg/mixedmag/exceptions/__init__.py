"""Package for exception handling."""

from .exceptions import (
    ConfigError,
    DegenerateTriangleError,
    FieldSizeMismatchError,
    IndexOutOfRangeError,
    InputError,
    InvalidParamsError,
    LinearSolveFailureError,
    LineSearchStalledError,
    LocalSolveFailureError,
    MalformedSectionError,
    MaxIterationsError,
    MixedMagException,
    MonotonicityFailureError,
    MonotonicityViolationError,
    NewtonFailureError,
    NonConformingError,
    NonPlanarError,
    NotPositiveDefiniteError,
    NotStrictlyIncreasingError,
    QuadratureTooWeakError,
    SingularJacobianError,
    SolverError,
    UncertifiedMaterialError,
    UnsupportedDegreeError,
    UnsupportedSpaceError,
    UnsupportedVersionError,
)

__all__ = [
    "ConfigError",
    "DegenerateTriangleError",
    "FieldSizeMismatchError",
    "IndexOutOfRangeError",
    "InputError",
    "InvalidParamsError",
    "LineSearchStalledError",
    "LinearSolveFailureError",
    "LocalSolveFailureError",
    "MalformedSectionError",
    "MaxIterationsError",
    "MixedMagException",
    "MonotonicityFailureError",
    "MonotonicityViolationError",
    "NewtonFailureError",
    "NonConformingError",
    "NonPlanarError",
    "NotPositiveDefiniteError",
    "NotStrictlyIncreasingError",
    "QuadratureTooWeakError",
    "SingularJacobianError",
    "SolverError",
    "UncertifiedMaterialError",
    "UnsupportedDegreeError",
    "UnsupportedSpaceError",
    "UnsupportedVersionError",
]
