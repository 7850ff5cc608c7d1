"""Material laws, spline fitting and certification."""

from .certify import certify_monotonicity, duality_error
from .laws import (
    IsotropicSplineLaw,
    LinearLaw,
    MagnetLaw,
    MaterialLaw,
    f_grad,
    f_hess,
    g_grad,
    g_hess,
)
from .material_map import MaterialMap
from .spline import (
    SYNTHETIC_BRAUER,
    BrauerParameters,
    DualSpline,
    EnergySpline,
    brauer_reluctivity,
    default_knots,
    dualize,
    fit_bh_curve,
    fit_energy_spline,
)

__all__ = [
    "SYNTHETIC_BRAUER",
    "BrauerParameters",
    "DualSpline",
    "EnergySpline",
    "IsotropicSplineLaw",
    "LinearLaw",
    "MagnetLaw",
    "MaterialLaw",
    "MaterialMap",
    "brauer_reluctivity",
    "certify_monotonicity",
    "default_knots",
    "dualize",
    "duality_error",
    "f_grad",
    "f_hess",
    "fit_bh_curve",
    "fit_energy_spline",
    "g_grad",
    "g_hess",
]
