"""Energy/coenergy pairs of the supported material laws.

Every law is evaluated on arrays of 2-vectors with shape (..., 2). The
coenergy side (g, g', g'') drives the mixed formulation and the energy side
(f, f', f'') the vector potential formulation.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from mixedmag.exceptions import InvalidParamsError
from mixedmag.material.spline import (
    BrauerParameters,
    DualSpline,
    EnergySpline,
    RadialProfile,
    dualize,
    fit_energy_spline,
)
from mixedmag.models import FloatArray, MaterialType


def _vectors(values: npt.ArrayLike) -> FloatArray:
    array = np.asarray(values, dtype=np.float64)
    if array.shape[-1:] != (2,):
        raise ValueError(f"expected 2-vectors, got shape {array.shape}")
    return array


def _scaled_identity(scale: npt.ArrayLike, shape: tuple[int, ...]) -> FloatArray:
    return np.asarray(np.broadcast_to(scale, shape)[..., None, None] * np.eye(2))


class MaterialLaw(ABC):
    """Convex energy f(B) and its conjugate coenergy g(H)."""

    material_type: MaterialType

    @abstractmethod
    def g(self, field_h: npt.ArrayLike) -> FloatArray:
        """Coenergy density."""

    @abstractmethod
    def g_grad(self, field_h: npt.ArrayLike) -> FloatArray:
        """Flux density B = g'(H)."""

    @abstractmethod
    def g_hess(self, field_h: npt.ArrayLike) -> FloatArray:
        """Differential permeability g''(H), shape (..., 2, 2)."""

    @abstractmethod
    def f(self, flux_b: npt.ArrayLike) -> FloatArray:
        """Energy density."""

    @abstractmethod
    def f_grad(self, flux_b: npt.ArrayLike) -> FloatArray:
        """Field strength H = f'(B)."""

    @abstractmethod
    def f_hess(self, flux_b: npt.ArrayLike) -> FloatArray:
        """Differential reluctivity f''(B), shape (..., 2, 2)."""

    @abstractmethod
    def certification_radius(self) -> float:
        """Field strength up to which the monotonicity constants are sampled."""


@dataclass(frozen=True)
class LinearLaw(MaterialLaw):
    """B = mu H."""

    mu: float
    material_type: MaterialType = field(default=MaterialType.LINEAR, init=False)

    def __post_init__(self) -> None:
        """Validate the permeability."""
        if not self.mu > 0:
            raise InvalidParamsError(f"permeability must be positive, got {self.mu}")

    def g(self, field_h: npt.ArrayLike) -> FloatArray:
        h = _vectors(field_h)
        return np.asarray(0.5 * self.mu * np.sum(h * h, axis=-1))

    def g_grad(self, field_h: npt.ArrayLike) -> FloatArray:
        return self.mu * _vectors(field_h)

    def g_hess(self, field_h: npt.ArrayLike) -> FloatArray:
        return _scaled_identity(self.mu, _vectors(field_h).shape[:-1])

    def f(self, flux_b: npt.ArrayLike) -> FloatArray:
        b = _vectors(flux_b)
        return np.asarray(np.sum(b * b, axis=-1) / (2.0 * self.mu))

    def f_grad(self, flux_b: npt.ArrayLike) -> FloatArray:
        return _vectors(flux_b) / self.mu

    def f_hess(self, flux_b: npt.ArrayLike) -> FloatArray:
        return _scaled_identity(1.0 / self.mu, _vectors(flux_b).shape[:-1])

    def certification_radius(self) -> float:
        return 1.0


@dataclass(frozen=True)
class MagnetLaw(MaterialLaw):
    """Permanent magnet B = mu (H + M)."""

    mu: float
    magnetization: tuple[float, float]
    material_type: MaterialType = field(default=MaterialType.MAGNET, init=False)

    def __post_init__(self) -> None:
        """Validate the permeability."""
        if not self.mu > 0:
            raise InvalidParamsError(f"permeability must be positive, got {self.mu}")

    @property
    def _m(self) -> FloatArray:
        return np.asarray(self.magnetization, dtype=np.float64)

    def g(self, field_h: npt.ArrayLike) -> FloatArray:
        shifted = _vectors(field_h) + self._m
        return np.asarray(0.5 * self.mu * np.sum(shifted * shifted, axis=-1))

    def g_grad(self, field_h: npt.ArrayLike) -> FloatArray:
        return self.mu * (_vectors(field_h) + self._m)

    def g_hess(self, field_h: npt.ArrayLike) -> FloatArray:
        return _scaled_identity(self.mu, _vectors(field_h).shape[:-1])

    def f(self, flux_b: npt.ArrayLike) -> FloatArray:
        shifted = _vectors(flux_b) - self.mu * self._m
        return np.asarray(np.sum(shifted * shifted, axis=-1) / (2.0 * self.mu))

    def f_grad(self, flux_b: npt.ArrayLike) -> FloatArray:
        return _vectors(flux_b) / self.mu - self._m

    def f_hess(self, flux_b: npt.ArrayLike) -> FloatArray:
        return _scaled_identity(1.0 / self.mu, _vectors(flux_b).shape[:-1])

    def certification_radius(self) -> float:
        return max(1.0, 2.0 * float(np.hypot(*self.magnetization)))


def _radial_gradient(profile: RadialProfile, vectors: FloatArray) -> FloatArray:
    """profile'(|x|) x / |x| with the limit 0 at x = 0."""
    radius = np.hypot(vectors[..., 0], vectors[..., 1])
    first = profile.first(radius)
    ratio = np.divide(first, radius, out=np.zeros_like(radius), where=radius > 0)
    return np.asarray(ratio[..., None] * vectors)


def _radial_hessian(profile: RadialProfile, vectors: FloatArray) -> FloatArray:
    """Chain rule: s''(r) u u^T + s'(r)/r (I - u u^T), and s''(0) I at the origin."""
    radius = np.hypot(vectors[..., 0], vectors[..., 1])
    positive = radius > 0
    second = profile.second(radius)
    secant = np.divide(profile.first(radius), radius, out=second.copy(), where=positive)
    unit = np.divide(
        vectors, radius[..., None], out=np.zeros_like(vectors), where=positive[..., None]
    )
    outer = unit[..., :, None] * unit[..., None, :]
    return np.asarray(
        second[..., None, None] * outer
        + secant[..., None, None] * (np.eye(2) - outer)
    )


@dataclass(frozen=True, eq=False)
class IsotropicSplineLaw(MaterialLaw):
    """Saturating law f(B) = f~(|B|) with coenergy g(H) = g~(|H|)."""

    energy: EnergySpline
    coenergy: DualSpline
    material_type: MaterialType = field(default=MaterialType.BRAUER_SPLINE)

    @classmethod
    def from_brauer(
        cls, params: BrauerParameters, knots: npt.ArrayLike | None = None
    ) -> IsotropicSplineLaw:
        """Fit the energy spline to a Brauer reluctivity and dualize it."""
        energy = fit_energy_spline(params, knots)
        return cls(energy, dualize(energy))

    @classmethod
    def from_energy(
        cls, energy: EnergySpline, material_type: MaterialType = MaterialType.BH_CURVE
    ) -> IsotropicSplineLaw:
        """Wrap an already fitted energy spline."""
        return cls(energy, dualize(energy), material_type)

    def g(self, field_h: npt.ArrayLike) -> FloatArray:
        h = _vectors(field_h)
        return self.coenergy.value(np.hypot(h[..., 0], h[..., 1]))

    def g_grad(self, field_h: npt.ArrayLike) -> FloatArray:
        return _radial_gradient(self.coenergy, _vectors(field_h))

    def g_hess(self, field_h: npt.ArrayLike) -> FloatArray:
        return _radial_hessian(self.coenergy, _vectors(field_h))

    def f(self, flux_b: npt.ArrayLike) -> FloatArray:
        b = _vectors(flux_b)
        return self.energy.value(np.hypot(b[..., 0], b[..., 1]))

    def f_grad(self, flux_b: npt.ArrayLike) -> FloatArray:
        return _radial_gradient(self.energy, _vectors(flux_b))

    def f_hess(self, flux_b: npt.ArrayLike) -> FloatArray:
        return _radial_hessian(self.energy, _vectors(flux_b))

    def certification_radius(self) -> float:
        return 1.5 * self.coenergy.domain_max


def g_grad(law: MaterialLaw, field_h: npt.ArrayLike) -> FloatArray:
    """Return B = g'(H)."""
    return law.g_grad(field_h)


def g_hess(law: MaterialLaw, field_h: npt.ArrayLike) -> FloatArray:
    """Return g''(H)."""
    return law.g_hess(field_h)


def f_grad(law: MaterialLaw, flux_b: npt.ArrayLike) -> FloatArray:
    """Return H = f'(B)."""
    return law.f_grad(flux_b)


def f_hess(law: MaterialLaw, flux_b: npt.ArrayLike) -> FloatArray:
    """Return f''(B)."""
    return law.f_hess(flux_b)
