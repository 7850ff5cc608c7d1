"""Test flux post-processing and L2 errors."""

import numpy as np
import pytest

from mixedmag.assembly import MixedDiscretization, PrimalDiscretization
from mixedmag.exceptions import FieldSizeMismatchError
from mixedmag.fe import eval_basis, interpolate, reference_element
from mixedmag.material import SYNTHETIC_BRAUER, IsotropicSplineLaw, MaterialMap
from mixedmag.mesh import refine_uniform
from mixedmag.models import SpaceFamily
from mixedmag.post import FluxField, l2_error, post_b_mixed, post_b_primal, project_elementwise


def _constant(mesh, order, value):
    nloc = reference_element(SpaceFamily.DISCONTINUOUS_P, order).ndofs
    return FluxField(mesh, order, np.broadcast_to(value, (mesh.num_triangles, nloc, 2)).copy())


@pytest.mark.parametrize("order", [0, 1])
def test_primal_flux_of_linear_potential(two_triangle_mesh, order):
    """Test a = x gives B = Curl a = (0, -1)."""
    disc = PrimalDiscretization.build(two_triangle_mesh, order)
    coefficients = interpolate(disc.dofmap, two_triangle_mesh, lambda p: p[..., 0])
    flux = post_b_primal(disc, coefficients)
    assert np.allclose(flux.coefficients, [0.0, -1.0], atol=1e-14)
    assert l2_error(flux, lambda p: np.broadcast_to([0.0, -1.0], p.shape)) <= 1e-14


@pytest.mark.parametrize("order", [0, 1])
def test_mixed_flux_reproduces_linear_field(square_mesh, unit_materials, order):
    """Test with mu = 1 a polynomial H of degree k is returned unchanged."""
    mix = MixedDiscretization.build(square_mesh, order)

    def field(points):
        if order == 0:
            return np.broadcast_to([1.0, 2.0], points.shape)
        return np.stack((1.0 + points[..., 1], 2.0 - points[..., 0]), axis=-1)

    flux = post_b_mixed(mix, unit_materials, interpolate(mix.field, square_mesh, field))
    assert l2_error(flux, field) <= 1e-12


@pytest.mark.parametrize("order", [0, 1])
def test_mixed_flux_projection_is_orthogonal(square_mesh, order):
    """Test g'(H) - B_h is orthogonal to P_k^2 in the quadrature product."""
    materials = MaterialMap.uniform(IsotropicSplineLaw.from_brauer(SYNTHETIC_BRAUER))
    mix = MixedDiscretization.build(square_mesh, order)
    field = 2.0 * np.random.default_rng(5).standard_normal(mix.field.ndofs)
    flux = post_b_mixed(mix, materials, field)
    exact = materials.g_grad(square_mesh.region_tags, mix.field_at_points(field))
    residual = exact - flux.evaluate(mix.rule.ref_points)
    basis = eval_basis(reference_element(SpaceFamily.DISCONTINUOUS_P, order), mix.rule.ref_points)
    moments = np.einsum("tq,qi,tqc->tic", mix.weights, basis.values, residual)
    assert np.abs(moments).max() <= 1e-10


def test_project_elementwise_reproduces_linear_values(square_mesh):
    """Test projecting P1 values onto P1 is the identity."""
    mix = MixedDiscretization.build(square_mesh, 1)
    values = np.stack((mix.points[..., 0], mix.points[..., 0] - 3.0 * mix.points[..., 1]), axis=-1)
    flux = project_elementwise(square_mesh, 1, mix.weights, mix.rule.ref_points, values)
    assert np.allclose(flux.evaluate(mix.rule.ref_points), values, atol=1e-13)


def test_l2_error_examples(square_mesh):
    """Test identical fields, unit constants and shifted fields."""
    zero = _constant(square_mesh, 0, [0.0, 0.0])
    one = _constant(square_mesh, 0, [1.0, 0.0])
    shifted = _constant(square_mesh, 1, [0.5, 0.5])
    assert l2_error(one, one) == 0.0
    assert l2_error(zero, one) == pytest.approx(1.0)
    assert l2_error(shifted, lambda p: np.broadcast_to([0.5, 0.25], p.shape)) == pytest.approx(0.25)


def test_l2_error_across_refinement(square_mesh):
    """Test a reference on a refined mesh is compared on the finer mesh in either order."""
    fine = refine_uniform(square_mesh)
    coarse = _constant(square_mesh, 0, [1.0, 0.0])
    assert l2_error(coarse, _constant(fine, 1, [1.0, 0.0])) == pytest.approx(0.0, abs=1e-14)
    assert l2_error(coarse, _constant(fine, 0, [0.0, 0.0])) == pytest.approx(1.0)
    assert l2_error(_constant(fine, 0, [0.0, 0.0]), coarse) == pytest.approx(1.0)


def test_cell_average(square_mesh):
    """Test the element mean of a constant field."""
    assert np.allclose(_constant(square_mesh, 1, [2.0, -1.0]).cell_average(), [2.0, -1.0])


def test_size_mismatch(square_mesh):
    """Test coefficients of the wrong layout are rejected."""
    with pytest.raises(FieldSizeMismatchError):
        FluxField(square_mesh, 1, np.zeros((32, 1, 2)))
