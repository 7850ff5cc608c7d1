"""Constants for the library."""

from typing import Final
import math

MU_0: Final = 4e-7 * math.pi  # H/m

# quadrature degree per formulation order k (exact at least for 2k+2)
QUADRATURE_DEGREE: Final = {0: 2, 1: 4}
ERROR_QUADRATURE_DEGREE: Final = 6

SUPPORTED_ORDERS: Final = (0, 1)

NEWTON_REL_TOL: Final = 1e-8
NEWTON_ABS_TOL: Final = 1e-12
NEWTON_MAX_ITERATIONS: Final = 50
ARMIJO_C: Final = 1e-4
BACKTRACK_FACTOR: Final = 0.5
MIN_STEP: Final = 2.0**-20

LINEAR_SOLVE_RTOL: Final = 1e-10
SYMMETRY_RTOL: Final = 1e-12

CERTIFY_SAMPLES: Final = 2000
DEFAULT_SEED: Final = 0

# Synthetic Brauer set, not measured steel data
SYNTHETIC_BRAUER_K1: Final = 0.5
SYNTHETIC_BRAUER_K2: Final = 1.0
SYNTHETIC_BRAUER_K3: Final = 1.0
SPLINE_B_MAX: Final = 3.0
SPLINE_KNOTS: Final = 121

GMSH_SUPPORTED_VERSION: Final = "2.2"
GMSH_LINE: Final = 1
GMSH_TRIANGLE: Final = 2
GMSH_POINT: Final = 15

CSV_STUDY_COLUMNS: Final = [
    "formulation",
    "order",
    "h",
    "error",
    "eoc",
    "iter",
    "time",
    "ndofs",
    "nnz",
]
CSV_COMPARE_COLUMNS: Final = ["method", "order", "ndofs", "nnz", "cpu_time"]
