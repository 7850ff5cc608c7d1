"""Static enumerations shared across the library."""

from enum import Enum


class SpaceFamily(Enum):
    """Finite element families."""

    LAGRANGE = "Lagrange"
    NEDELEC = "Nedelec"
    DISCONTINUOUS_P = "DiscontinuousP"
    EDGE_TRACE = "EdgeTrace"


class DofEntity(Enum):
    """Mesh entity a degree of freedom is attached to."""

    VERTEX = "vertex"
    EDGE = "edge"
    INTERIOR = "interior"


class Formulation(Enum):
    """Discretization of the magnetostatic problem."""

    PRIMAL = "primal"
    MIXED = "mixed"
    BOTH = "both"


class MaterialType(Enum):
    """Material definition types accepted in material files."""

    LINEAR = "linear"
    MAGNET = "magnet"
    BRAUER_SPLINE = "brauer_spline"
    BH_CURVE = "bh_curve"


# local edge i of a triangle joins local vertices LOCAL_EDGES[i] (counterclockwise traversal)
LOCAL_EDGES: tuple[tuple[int, int], ...] = ((1, 2), (2, 0), (0, 1))
