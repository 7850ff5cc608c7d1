"""Monotone cubic energy splines for isotropic saturation laws."""

from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Protocol

import numpy as np
import numpy.typing as npt
from scipy.interpolate import PchipInterpolator

from mixedmag.const import (
    SPLINE_B_MAX,
    SPLINE_KNOTS,
    SYNTHETIC_BRAUER_K1,
    SYNTHETIC_BRAUER_K2,
    SYNTHETIC_BRAUER_K3,
)
from mixedmag.exceptions import (
    InvalidParamsError,
    MonotonicityViolationError,
    NotStrictlyIncreasingError,
)
from mixedmag.models import FloatArray

_LOGGER = logging.getLogger("mixedmag.log")

CONVEXITY_SAMPLES_PER_INTERVAL = 10
_DUAL_NEWTON_ITERATIONS = 8


class RadialProfile(Protocol):
    """Scalar convex function of a radius r >= 0 with its first two derivatives."""

    @property
    def domain_max(self) -> float:
        """Last knot; beyond it the first derivative continues linearly."""

    def value(self, r: npt.ArrayLike) -> FloatArray:
        """Evaluate the function."""

    def first(self, r: npt.ArrayLike) -> FloatArray:
        """Evaluate the first derivative."""

    def second(self, r: npt.ArrayLike) -> FloatArray:
        """Evaluate the second derivative."""


@dataclass(frozen=True)
class BrauerParameters:
    """Constants of the reluctivity model nu(b) = k1 exp(k2 b^2) + k3."""

    k1: float
    k2: float
    k3: float

    def __post_init__(self) -> None:
        """Validate signs."""
        if min(self.k1, self.k2, self.k3) < 0 or self.k1 + self.k3 <= 0:
            raise InvalidParamsError(
                f"Brauer constants need k1, k2, k3 >= 0 and k1 + k3 > 0, got {self}"
            )


SYNTHETIC_BRAUER = BrauerParameters(SYNTHETIC_BRAUER_K1, SYNTHETIC_BRAUER_K2, SYNTHETIC_BRAUER_K3)


def brauer_reluctivity(b: npt.ArrayLike, params: BrauerParameters) -> FloatArray:
    """Reluctivity nu(b) = k1 exp(k2 b^2) + k3."""
    b = np.asarray(b, dtype=np.float64)
    return np.asarray(params.k1 * np.exp(params.k2 * b * b) + params.k3)


def default_knots(b_max: float = SPLINE_B_MAX, count: int = SPLINE_KNOTS) -> FloatArray:
    """Equidistant knots on [0, b_max]."""
    return np.linspace(0.0, b_max, count)


class EnergySpline:
    """Convex energy whose derivative is a monotone cubic (PCHIP) interpolant.

    The energy is the exact antiderivative with value 0 at r = 0. Beyond the
    last knot the derivative continues linearly with its end slope.
    """

    def __init__(self, knots: npt.ArrayLike, derivative_values: npt.ArrayLike) -> None:
        """Fit the derivative and certify convexity."""
        self.knots = np.asarray(knots, dtype=np.float64)
        values = np.asarray(derivative_values, dtype=np.float64)
        if self.knots.ndim != 1 or self.knots.shape != values.shape or self.knots.size < 2:
            raise InvalidParamsError("knots and values must be 1-D arrays of equal length >= 2")
        if self.knots[0] != 0.0 or np.any(np.diff(self.knots) <= 0):
            raise NotStrictlyIncreasingError("knots must start at 0 and increase strictly")
        if values[0] != 0.0:
            raise MonotonicityViolationError(
                "derivative must vanish at 0", self._interval(0)
            )
        decreasing = np.flatnonzero(np.diff(values) <= 0)
        if decreasing.size:
            raise MonotonicityViolationError(
                "derivative data not increasing", self._interval(int(decreasing[0]))
            )
        self._derivative = PchipInterpolator(self.knots, values, extrapolate=False)
        self._curvature = self._derivative.derivative()
        self._energy = self._derivative.antiderivative()
        self._end = float(self.knots[-1])
        self._end_first = float(values[-1])
        self._end_second = float(self._curvature(self._end))
        self.min_curvature = self._certify_convexity()

    def _interval(self, index: int) -> tuple[float, float]:
        return float(self.knots[index]), float(self.knots[index + 1])

    def _certify_convexity(self) -> float:
        """Sample the second derivative on every interval; return its minimum."""
        offsets = np.linspace(0.0, 1.0, CONVEXITY_SAMPLES_PER_INTERVAL)
        widths = np.diff(self.knots)
        samples = self.knots[:-1, None] + offsets[None, :] * widths[:, None]
        curvature = self._curvature(samples)
        bad = np.flatnonzero(~np.all(curvature > 0, axis=1))
        if bad.size:
            raise MonotonicityViolationError(
                "spline derivative is not strictly increasing",
                self._interval(int(bad[0])),
            )
        return float(curvature.min())

    @property
    def domain_max(self) -> float:
        """Last knot."""
        return self._end

    def _split(self, r: npt.ArrayLike) -> tuple[FloatArray, FloatArray]:
        radius = np.abs(np.asarray(r, dtype=np.float64))
        return np.minimum(radius, self._end), np.maximum(radius - self._end, 0.0)

    def value(self, r: npt.ArrayLike) -> FloatArray:
        """Energy at r."""
        inside, excess = self._split(r)
        return np.asarray(
            self._energy(inside)
            + excess * (self._end_first + 0.5 * self._end_second * excess)
        )

    def first(self, r: npt.ArrayLike) -> FloatArray:
        """First derivative at r."""
        inside, excess = self._split(r)
        return np.asarray(self._derivative(inside) + self._end_second * excess)

    def second(self, r: npt.ArrayLike) -> FloatArray:
        """Second derivative at r."""
        inside, excess = self._split(r)
        return np.asarray(np.where(excess > 0, self._end_second, self._curvature(inside)))


class DualSpline:
    """Convex conjugate of an EnergySpline.

    g'(h) is the inverse of f'. A monotone cubic fit of the tabulated inverse
    gives the starting point and Newton on f'(b) = h polishes it, so the
    duality roundtrip holds to rounding. Then g(h) = h b - f(b) and
    g''(h) = 1 / f''(b).
    """

    def __init__(self, primal: EnergySpline) -> None:
        """Tabulate and fit the inverse derivative."""
        self.primal = primal
        h_knots = primal.first(primal.knots)
        if np.any(np.diff(h_knots) <= 0):
            raise NotStrictlyIncreasingError("energy derivative is not strictly increasing")
        self.knots = h_knots
        self._guess = PchipInterpolator(h_knots, primal.knots, extrapolate=False)
        self._end = float(h_knots[-1])
        self._end_slope = 1.0 / float(primal.second(primal.domain_max))

    @property
    def domain_max(self) -> float:
        """Largest tabulated field strength."""
        return self._end

    def inverse(self, h: npt.ArrayLike) -> FloatArray:
        """Solve f'(b) = h for b >= 0."""
        target = np.abs(np.asarray(h, dtype=np.float64))
        inside = np.minimum(target, self._end)
        b = self._guess(inside) + self._end_slope * (target - inside)
        for _ in range(_DUAL_NEWTON_ITERATIONS):
            correction = (self.primal.first(b) - target) / self.primal.second(b)
            b = np.maximum(b - correction, 0.0)
            if np.all(np.abs(correction) <= 1e-15 * np.maximum(b, 1e-300)):
                break
        return np.asarray(b)

    def value(self, h: npt.ArrayLike) -> FloatArray:
        """Coenergy at h."""
        radius = np.abs(np.asarray(h, dtype=np.float64))
        b = self.inverse(radius)
        return np.asarray(radius * b - self.primal.value(b))

    def first(self, h: npt.ArrayLike) -> FloatArray:
        """First derivative at h."""
        return self.inverse(h)

    def second(self, h: npt.ArrayLike) -> FloatArray:
        """Second derivative at h."""
        return np.asarray(1.0 / self.primal.second(self.inverse(h)))


def fit_energy_spline(
    params: BrauerParameters, knots: npt.ArrayLike | None = None
) -> EnergySpline:
    """Fit f' to nu(b) b at the knots of [0, B_max]."""
    knot_array = default_knots() if knots is None else np.asarray(knots, dtype=np.float64)
    spline = EnergySpline(knot_array, brauer_reluctivity(knot_array, params) * knot_array)
    _LOGGER.debug(
        "Fitted energy spline on [0, %s] with %s knots, min f'' = %s",
        spline.domain_max,
        knot_array.size,
        spline.min_curvature,
    )
    return spline


def fit_bh_curve(b_values: npt.ArrayLike, h_values: npt.ArrayLike) -> EnergySpline:
    """Fit f' = H(|B|) to a measured B-H curve, adding the origin when absent."""
    b = np.asarray(b_values, dtype=np.float64)
    h = np.asarray(h_values, dtype=np.float64)
    if b.shape != h.shape or b.ndim != 1:
        raise InvalidParamsError("B-H curve needs two columns of equal length")
    if b.size and b[0] != 0.0:
        b = np.concatenate(([0.0], b))
        h = np.concatenate(([0.0], h))
    return EnergySpline(b, h)


def dualize(energy: EnergySpline) -> DualSpline:
    """Build the coenergy spline of an energy spline."""
    return DualSpline(energy)
