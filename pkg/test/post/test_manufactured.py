"""Test the synthetic cases."""

import numpy as np
import pytest

from mixedmag.exceptions import ConfigError
from mixedmag.post import (
    CASES,
    case_by_name,
    checkerboard_regions,
    inclusion_regions,
    magnet_case,
    magnet_regions,
    manufactured_case_linear,
    manufactured_case_nonlinear,
)
from mixedmag.post.manufactured import AIR, IRON, MAGNET

STEP = 1e-3


def _derivative(function, points, axis):
    """Fourth order central difference along x (axis 0) or y (axis 1)."""
    shift = np.zeros(2)
    shift[axis] = STEP
    return (
        -function(points + 2 * shift)
        + 8 * function(points + shift)
        - 8 * function(points - shift)
        + function(points - 2 * shift)
    ) / (12 * STEP)


def _pde_residual(case, points):
    """curl H + sigma a - j with finite-difference curls."""
    curl = _derivative(case.field, points, 0)[..., 1] - _derivative(case.field, points, 1)[..., 0]
    return curl + case.sigma * case.potential(points) - case.current(points)


@pytest.fixture(scope="module")
def points():
    """1000 random points away from the boundary."""
    return np.random.default_rng(11).uniform(0.01, 0.99, size=(1000, 2))


@pytest.mark.parametrize("sigma", [0.0, 3.0])
def test_linear_case_satisfies_equations(points, sigma):
    """Test the linear case at random points."""
    case = manufactured_case_linear(sigma)
    assert np.abs(_pde_residual(case, points)).max() <= 1e-8
    x, y = points[:, 0], points[:, 1]
    expected = (2 * np.pi**2 + sigma) * np.sin(np.pi * x) * np.sin(np.pi * y)
    assert np.allclose(case.current(points), expected)


def test_linear_flux_vanishes_at_centre():
    """Test Curl a is zero at the centre of the square."""
    case = manufactured_case_linear()
    assert np.allclose(case.flux(np.array([0.5, 0.5])), 0.0, atol=1e-15)
    assert case.potential(np.array([[0.0, 0.3], [0.7, 1.0]])) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("sigma", [0.0, 1.0])
def test_nonlinear_case_satisfies_equations(points, sigma):
    """Test the chain-rule current of the saturating case."""
    case = manufactured_case_nonlinear(sigma)
    scale = np.abs(case.current(points)).max()
    assert np.abs(_pde_residual(case, points)).max() <= 1e-4 * scale


@pytest.mark.parametrize(
    ("region_fn", "point", "expected"),
    [
        (checkerboard_regions, (0.25, 0.25), IRON),
        (checkerboard_regions, (0.75, 0.25), AIR),
        (checkerboard_regions, (0.75, 0.75), IRON),
        (inclusion_regions, (0.5, 0.4), IRON),
        (inclusion_regions, (0.5, 0.6), AIR),
        (magnet_regions, (0.4, 0.4), MAGNET),
        (magnet_regions, (0.6, 0.6), IRON),
        (magnet_regions, (0.9, 0.1), AIR),
    ],
)
def test_region_layouts(region_fn, point, expected):
    """Test region functions at element centroids."""
    assert region_fn(*point) == expected


def test_case_meshes():
    """Test the base mesh carries the case regions."""
    mesh = case_by_name("checkerboard").base_mesh(2)
    assert sorted(np.unique(mesh.region_tags).tolist()) == [AIR, IRON]
    assert np.count_nonzero(mesh.region_tags == IRON) == 4


def test_magnet_case_has_no_current():
    """Test the magnet case is driven by magnetization only."""
    case = magnet_case()
    assert set(case.materials.laws) == {AIR, IRON, MAGNET}
    assert not any(case.materials.current.values())
    assert not case.has_closed_form


def test_case_lookup():
    """Test every registered case builds and unknown names are rejected."""
    for name in CASES:
        assert case_by_name(name).name == name
    assert case_by_name("manufactured_linear", sigma=2.0).sigma == 2.0
    with pytest.raises(ConfigError, match="unknown case"):
        case_by_name("machine")
