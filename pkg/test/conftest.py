"""Conftest for mixedmag."""

from collections.abc import Callable

import numpy as np
import pytest

from mixedmag.material import LinearLaw, MaterialMap
from mixedmag.mesh import build_mesh, structured_square_mesh
from mixedmag.models import FloatArray, Mesh


def assert_fd_jacobian(
    function: Callable[[FloatArray], FloatArray],
    jacobian: FloatArray,
    point: FloatArray,
    rtol: float = 1e-6,
    step: float = 1e-6,
    seed: int = 0,
) -> None:
    """Assert J d matches a central difference of function along random directions."""
    rng = np.random.default_rng(seed)
    for _ in range(3):
        direction = rng.standard_normal(point.shape)
        expected = (function(point + step * direction) - function(point - step * direction)) / (
            2.0 * step
        )
        actual = jacobian @ direction
        scale = max(float(np.linalg.norm(expected)), 1.0)
        assert np.linalg.norm(actual - expected) <= rtol * scale


def assert_spd(matrix: FloatArray) -> None:
    """Assert a dense matrix is symmetric and has a positive smallest eigenvalue."""
    scale = float(np.abs(matrix).max())
    assert np.abs(matrix - matrix.T).max() <= 1e-12 * scale
    assert np.linalg.eigvalsh(matrix).min() > 0


@pytest.fixture
def two_triangle_mesh() -> Mesh:
    """Unit square split along its diagonal."""
    return build_mesh(
        [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
        [[0, 1, 2], [0, 2, 3]],
    )


@pytest.fixture
def square_mesh() -> Mesh:
    """Structured 4 x 4 mesh of the unit square."""
    return structured_square_mesh(4)


@pytest.fixture
def unit_materials() -> MaterialMap:
    """Certified linear material with mu = 1 and unit current."""
    materials = MaterialMap.uniform(LinearLaw(1.0), current=1.0)
    materials.certify()
    return materials
