"""Test sampled monotonicity certification."""

from dataclasses import dataclass, field

import numpy as np
import pytest

from mixedmag.exceptions import InvalidParamsError, MonotonicityFailureError
from mixedmag.material import (
    SYNTHETIC_BRAUER,
    IsotropicSplineLaw,
    LinearLaw,
    MagnetLaw,
    MaterialLaw,
    certify_monotonicity,
    duality_error,
)
from mixedmag.models import MaterialType


@dataclass(frozen=True)
class _ReversedLaw(MaterialLaw):
    """B = -H, which no certification may accept."""

    material_type: MaterialType = field(default=MaterialType.LINEAR)

    def g(self, field_h):
        return -0.5 * np.sum(np.asarray(field_h) ** 2, axis=-1)

    def g_grad(self, field_h):
        return -np.asarray(field_h, dtype=float)

    def g_hess(self, field_h):
        return -np.broadcast_to(np.eye(2), np.shape(field_h)[:-1] + (2, 2))

    def f(self, flux_b):
        return self.g(flux_b)

    def f_grad(self, flux_b):
        return self.g_grad(flux_b)

    def f_hess(self, flux_b):
        return self.g_hess(flux_b)

    def certification_radius(self):
        return 1.0


@pytest.mark.parametrize("law", [LinearLaw(2.5), LinearLaw(1e-6), MagnetLaw(3.0, (1.0, 1.0))])
def test_linear_constants_equal_permeability(law):
    """Test alpha = C_a = mu for affine laws."""
    alpha, lipschitz = certify_monotonicity(law)
    assert alpha == pytest.approx(law.mu, rel=1e-10)
    assert lipschitz == pytest.approx(law.mu, rel=1e-10)


def test_spline_constants():
    """Test 0 < alpha <= C_a for the saturating law, bounded by the sampled g~''."""
    law = IsotropicSplineLaw.from_brauer(SYNTHETIC_BRAUER)
    alpha, lipschitz = certify_monotonicity(law, h_max=20.0)
    assert 0 < alpha <= lipschitz
    radii = np.linspace(0.0, 20.0, 401)
    assert lipschitz <= float(law.coenergy.second(radii).max()) * 1.01


def test_certification_is_deterministic():
    """Test a fixed seed gives identical constants."""
    law = IsotropicSplineLaw.from_brauer(SYNTHETIC_BRAUER)
    assert certify_monotonicity(law, seed=7) == certify_monotonicity(law, seed=7)


def test_non_monotone_law_fails():
    """Test a decreasing law is rejected."""
    with pytest.raises(MonotonicityFailureError):
        certify_monotonicity(_ReversedLaw())


@pytest.mark.parametrize(("h_max", "n_samples"), [(None, 10), (0.0, 2000), (-1.0, 2000)])
def test_invalid_sampling(h_max, n_samples):
    """Test too few samples or an empty sampling disc are rejected."""
    with pytest.raises(InvalidParamsError):
        certify_monotonicity(LinearLaw(1.0), h_max=h_max, n_samples=n_samples)


@pytest.mark.parametrize(
    "law", [LinearLaw(4.0), MagnetLaw(1.0, (0.0, 1.0)), IsotropicSplineLaw.from_brauer(SYNTHETIC_BRAUER)]
)
def test_duality_error(law):
    """Test the sampled roundtrip f'(g'(H)) = H."""
    assert duality_error(law) <= 1e-8
