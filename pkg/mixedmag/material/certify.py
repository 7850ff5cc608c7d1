"""Sampled monotonicity and Lipschitz constants of the coenergy gradient."""

from __future__ import annotations

import logging

import numpy as np

from mixedmag.const import CERTIFY_SAMPLES, DEFAULT_SEED
from mixedmag.exceptions import InvalidParamsError, MonotonicityFailureError
from mixedmag.material.laws import MaterialLaw
from mixedmag.models import FloatArray

_LOGGER = logging.getLogger("mixedmag.log")

MIN_SAMPLES = 1000


def _disc_samples(rng: np.random.Generator, radius: float, count: int) -> FloatArray:
    """Uniform samples in the disc of the given radius."""
    r = radius * np.sqrt(rng.random(count))
    theta = 2.0 * np.pi * rng.random(count)
    return np.stack((r * np.cos(theta), r * np.sin(theta)), axis=1)


def certify_monotonicity(
    law: MaterialLaw,
    h_max: float | None = None,
    n_samples: int = CERTIFY_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> tuple[float, float]:
    """Estimate (alpha, C_a) from random pairs y, z with |y|, |z| <= h_max.

    alpha is the smallest <g'(y) - g'(z), y - z> / |y - z|^2 and C_a the
    largest |g'(y) - g'(z)| / |y - z| over the samples.
    """
    if n_samples < MIN_SAMPLES:
        raise InvalidParamsError(f"at least {MIN_SAMPLES} samples are needed, got {n_samples}")
    radius = law.certification_radius() if h_max is None else float(h_max)
    if not radius > 0:
        raise InvalidParamsError(f"sampling radius must be positive, got {radius}")
    rng = np.random.default_rng(seed)
    first = _disc_samples(rng, radius, n_samples)
    second = _disc_samples(rng, radius, n_samples)
    difference = first - second
    distance2 = np.sum(difference * difference, axis=1)
    keep = distance2 > (1e-8 * radius) ** 2
    difference = difference[keep]
    distance2 = distance2[keep]
    flux_difference = law.g_grad(first[keep]) - law.g_grad(second[keep])
    alpha = float(np.min(np.sum(flux_difference * difference, axis=1) / distance2))
    lipschitz = float(
        np.max(np.sqrt(np.sum(flux_difference * flux_difference, axis=1) / distance2))
    )
    _LOGGER.debug(
        "Certified %s on |H| <= %s: alpha=%s, C_a=%s",
        law.material_type.value,
        radius,
        alpha,
        lipschitz,
    )
    if alpha <= 0:
        raise MonotonicityFailureError(
            f"{law.material_type.value} law is not uniformly monotone (alpha={alpha:.3e})"
        )
    return alpha, lipschitz


def duality_error(
    law: MaterialLaw, h_max: float | None = None, n_samples: int = 100, seed: int = DEFAULT_SEED
) -> float:
    """Largest relative deviation of f'(g'(H)) from H over random samples."""
    radius = law.certification_radius() if h_max is None else float(h_max)
    samples = _disc_samples(np.random.default_rng(seed), radius, n_samples)
    roundtrip = law.f_grad(law.g_grad(samples))
    norms = np.maximum(np.hypot(samples[:, 0], samples[:, 1]), 1e-300)
    deviation = np.hypot(*(roundtrip - samples).T)
    return float(np.max(deviation / norms))
