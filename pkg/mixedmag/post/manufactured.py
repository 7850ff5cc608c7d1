"""Synthetic test problems on the unit square."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from mixedmag.exceptions import ConfigError
from mixedmag.material import (
    SYNTHETIC_BRAUER,
    BrauerParameters,
    IsotropicSplineLaw,
    LinearLaw,
    MagnetLaw,
    MaterialLaw,
    MaterialMap,
)
from mixedmag.mesh import RegionFunction, structured_square_mesh
from mixedmag.models import FloatArray, Mesh

ScalarFunction = Callable[[FloatArray], FloatArray]
VectorFunction = Callable[[FloatArray], FloatArray]

AIR = 0
IRON = 1
MAGNET = 2
IRON_PERMEABILITY = 1000.0


@dataclass(frozen=True, eq=False)
class ManufacturedCase:
    """Materials, region layout and, when known, the exact fields of a test problem."""

    name: str
    materials: MaterialMap
    region_fn: RegionFunction | None = None
    potential: ScalarFunction | None = None  # a
    flux: VectorFunction | None = None  # B = Curl a
    field: VectorFunction | None = None  # H = f'(B)
    current: ScalarFunction | None = None  # j = curl H + sigma a
    sigma: float = 0.0

    @property
    def has_closed_form(self) -> bool:
        """Return True if the exact flux is known."""
        return self.flux is not None

    def base_mesh(self, n: int) -> Mesh:
        """Structured n x n mesh of the unit square with this case's regions."""
        return structured_square_mesh(n, self.region_fn)


def _sine_potential(amplitude: float) -> tuple[ScalarFunction, VectorFunction]:
    def potential(points: FloatArray) -> FloatArray:
        x, y = points[..., 0], points[..., 1]
        return np.asarray(amplitude * np.sin(np.pi * x) * np.sin(np.pi * y))

    def flux(points: FloatArray) -> FloatArray:
        x, y = points[..., 0], points[..., 1]
        return np.stack(
            (
                amplitude * np.pi * np.sin(np.pi * x) * np.cos(np.pi * y),
                -amplitude * np.pi * np.cos(np.pi * x) * np.sin(np.pi * y),
            ),
            axis=-1,
        )

    return potential, flux


def _flux_derivatives(points: FloatArray, amplitude: float) -> tuple[FloatArray, FloatArray]:
    """d/dx and d/dy of the sine flux."""
    x, y = points[..., 0], points[..., 1]
    scale = amplitude * np.pi**2
    cc = scale * np.cos(np.pi * x) * np.cos(np.pi * y)
    ss = scale * np.sin(np.pi * x) * np.sin(np.pi * y)
    return np.stack((cc, ss), axis=-1), np.stack((-ss, -cc), axis=-1)


def manufactured_case_linear(sigma: float = 0.0) -> ManufacturedCase:
    """a = sin(pi x) sin(pi y) with B = H and j = (2 pi^2 + sigma) a."""
    potential, flux = _sine_potential(1.0)

    def current(points: FloatArray) -> FloatArray:
        return (2.0 * np.pi**2 + sigma) * potential(points)

    return ManufacturedCase(
        name="manufactured_linear",
        materials=MaterialMap({AIR: LinearLaw(1.0)}, {AIR: sigma}, current),
        potential=potential,
        flux=flux,
        field=flux,
        current=current,
        sigma=sigma,
    )


def manufactured_case_nonlinear(
    sigma: float = 0.0,
    params: BrauerParameters = SYNTHETIC_BRAUER,
    amplitude: float = 0.5,
) -> ManufacturedCase:
    """Sine potential with a saturating law; j follows from the chain rule through f''."""
    law = IsotropicSplineLaw.from_brauer(params)
    potential, flux = _sine_potential(amplitude)

    def field(points: FloatArray) -> FloatArray:
        return law.f_grad(flux(points))

    def current(points: FloatArray) -> FloatArray:
        hessian = law.f_hess(flux(points))
        d_dx, d_dy = _flux_derivatives(points, amplitude)
        dh_dx = np.einsum("...ij,...j->...i", hessian, d_dx)
        dh_dy = np.einsum("...ij,...j->...i", hessian, d_dy)
        return np.asarray(dh_dx[..., 1] - dh_dy[..., 0] + sigma * potential(points))

    return ManufacturedCase(
        name="manufactured_nonlinear",
        materials=MaterialMap({AIR: law}, {AIR: sigma}, current),
        potential=potential,
        flux=flux,
        field=field,
        current=current,
        sigma=sigma,
    )


def checkerboard_regions(x: float, y: float) -> int:
    """2 x 2 checkerboard: iron in the lower left and upper right quarters."""
    return IRON if (x < 0.5) == (y < 0.5) else AIR


def inclusion_regions(x: float, y: float) -> int:
    """Iron block [0.25, 0.75] x [0.25, 0.5] off the centre line."""
    return IRON if 0.25 < x < 0.75 and 0.25 < y < 0.5 else AIR


def magnet_regions(x: float, y: float) -> int:
    """Magnet [0.25, 0.5]^2 under an iron yoke [0.25, 0.75] x [0.5, 0.75]."""
    if 0.25 < x < 0.5 and 0.25 < y < 0.5:
        return MAGNET
    if 0.25 < x < 0.75 and 0.5 < y < 0.75:
        return IRON
    return AIR


def _two_material_case(
    name: str, region_fn: RegionFunction, iron: MaterialLaw, current: float
) -> ManufacturedCase:
    return ManufacturedCase(
        name=name,
        materials=MaterialMap(
            {AIR: LinearLaw(1.0), IRON: iron},
            {AIR: 0.0, IRON: 0.0},
            {AIR: current, IRON: current},
        ),
        region_fn=region_fn,
    )


def checkerboard_case(nonlinear: bool = False, current: float | None = None) -> ManufacturedCase:
    """Two-material checkerboard with a uniform current density.

    The linear variant uses a permeability contrast of 1000; the nonlinear
    one puts the synthetic saturation law into the iron quarters.
    """
    if nonlinear:
        return _two_material_case(
            "checkerboard_nonlinear",
            checkerboard_regions,
            IsotropicSplineLaw.from_brauer(SYNTHETIC_BRAUER),
            5.0 if current is None else current,
        )
    return _two_material_case(
        "checkerboard",
        checkerboard_regions,
        LinearLaw(IRON_PERMEABILITY),
        1.0 if current is None else current,
    )


def inclusion_case(current: float = 1.0) -> ManufacturedCase:
    """Iron inclusion with permeability contrast 1000 in air under uniform current."""
    return _two_material_case(
        "inclusion", inclusion_regions, LinearLaw(IRON_PERMEABILITY), current
    )


def magnet_case(magnetization: tuple[float, float] = (0.0, 1.0)) -> ManufacturedCase:
    """Field driven solely by a permanent magnet (j = 0) next to an iron yoke."""
    return ManufacturedCase(
        name="magnet",
        materials=MaterialMap(
            {
                AIR: LinearLaw(1.0),
                IRON: LinearLaw(IRON_PERMEABILITY),
                MAGNET: MagnetLaw(1.0, magnetization),
            },
            {AIR: 0.0, IRON: 0.0, MAGNET: 0.0},
            {AIR: 0.0, IRON: 0.0, MAGNET: 0.0},
        ),
        region_fn=magnet_regions,
    )


CASES: dict[str, Callable[[float], ManufacturedCase]] = {
    "manufactured_linear": manufactured_case_linear,
    "manufactured_nonlinear": lambda sigma: manufactured_case_nonlinear(sigma),
    "checkerboard": lambda _: checkerboard_case(),
    "checkerboard_nonlinear": lambda _: checkerboard_case(nonlinear=True),
    "inclusion": lambda _: inclusion_case(),
    "magnet": lambda _: magnet_case(),
}


def case_by_name(name: str, sigma: float = 0.0) -> ManufacturedCase:
    """Look up a synthetic case."""
    try:
        factory = CASES[name]
    except KeyError:
        raise ConfigError(f"unknown case {name!r}, expected one of {sorted(CASES)}") from None
    return factory(sigma)
