"""Symmetric triangle quadrature rules with positive weights."""

from __future__ import annotations

from collections.abc import Callable
from functools import lru_cache
import math

import numpy as np
import numpy.typing as npt

from mixedmag.exceptions import DegenerateTriangleError, UnsupportedDegreeError
from mixedmag.models import FloatArray, QuadRule

MAX_DEGREE = 6
_EXACTNESS_RTOL = 1e-13

# Orbits in barycentric coordinates: ("S3",) centroid, ("S21", a) -> (a, a, 1-2a),
# ("S111", a, b) -> all permutations of (a, b, 1-a-b).
_SQRT10 = math.sqrt(10.0)
_SQRT15 = math.sqrt(15.0)
_D4_ROOT = math.sqrt(38.0 - 44.0 * math.sqrt(2.0 / 5.0))
_D4_WROOT = math.sqrt(213125.0 - 53320.0 * _SQRT10)

_TABLES: dict[int, list[tuple[float, tuple[float, ...]]]] = {
    1: [(1.0, ())],
    2: [(1.0 / 3.0, (1.0 / 6.0,))],
    4: [
        ((620.0 + _D4_WROOT) / 3720.0, ((8.0 - _SQRT10 + _D4_ROOT) / 18.0,)),
        ((620.0 - _D4_WROOT) / 3720.0, ((8.0 - _SQRT10 - _D4_ROOT) / 18.0,)),
    ],
    5: [
        (9.0 / 40.0, ()),
        ((155.0 - _SQRT15) / 1200.0, ((6.0 - _SQRT15) / 21.0,)),
        ((155.0 + _SQRT15) / 1200.0, ((6.0 + _SQRT15) / 21.0,)),
    ],
    6: [
        (0.11678627572637936602528961138558, (0.24928674517091042129163855310702,)),
        (0.05084490637020681692093680910687, (0.06308901449150222834033160287082,)),
        (
            0.08285107561837357519355345642044,
            (0.05314504984481694735324967163139, 0.31035245103378440541660773395655),
        ),
    ],
}


def _expand_orbit(coords: tuple[float, ...]) -> list[tuple[float, float, float]]:
    """Expand an orbit generator into its barycentric points."""
    if not coords:
        third = 1.0 / 3.0
        return [(third, third, third)]
    if len(coords) == 1:
        a = coords[0]
        b = 1.0 - 2.0 * a
        return [(b, a, a), (a, b, a), (a, a, b)]
    a, b = coords
    c = 1.0 - a - b
    return [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]


def monomial_integral(p: int, q: int) -> float:
    """Integral of x^p y^q over the reference triangle."""
    return math.factorial(p) * math.factorial(q) / math.factorial(p + q + 2)


def exactness_error(rule: QuadRule, degree: int | None = None) -> float:
    """Largest relative error of the rule on monomials up to `degree`."""
    degree = rule.degree if degree is None else degree
    x, y = rule.ref_points.T
    worst = 0.0
    for total in range(degree + 1):
        for p in range(total + 1):
            q = total - p
            exact = monomial_integral(p, q)
            approx = 0.5 * float(rule.weights @ (x**p * y**q))
            worst = max(worst, abs(approx - exact) / exact)
    return worst


@lru_cache(maxsize=None)
def _tabulated_rule(degree: int) -> QuadRule:
    """Build and validate a tabulated rule."""
    points: list[tuple[float, float, float]] = []
    weights: list[float] = []
    for weight, coords in _TABLES[degree]:
        orbit = _expand_orbit(coords)
        points.extend(orbit)
        weights.extend([weight] * len(orbit))
    rule = QuadRule(
        points=np.array(points, dtype=np.float64),
        weights=np.array(weights, dtype=np.float64),
        degree=degree,
    )
    for array in (rule.points, rule.weights):
        array.setflags(write=False)
    if np.any(rule.weights <= 0.0) or abs(rule.weights.sum() - 1.0) > 1e-14:
        raise RuntimeError(f"quadrature table of degree {degree} has invalid weights")
    if exactness_error(rule) > _EXACTNESS_RTOL:
        raise RuntimeError(f"quadrature table of degree {degree} is not exact")
    return rule


def rule_for_degree(degree: int) -> QuadRule:
    """Return the smallest positive-weight rule exact for polynomials of `degree`."""
    if not 1 <= degree <= MAX_DEGREE:
        raise UnsupportedDegreeError(
            f"no triangle rule for degree {degree}, supported 1..{MAX_DEGREE}"
        )
    return _tabulated_rule(min(d for d in _TABLES if d >= degree))


@lru_cache(maxsize=None)
def edge_rule(num_points: int) -> tuple[FloatArray, FloatArray]:
    """Gauss-Legendre rule on [0, 1] with weights summing to 1."""
    nodes, weights = np.polynomial.legendre.leggauss(num_points)
    return 0.5 * (nodes + 1.0), 0.5 * weights


def edge_rule_for_degree(degree: int) -> tuple[FloatArray, FloatArray]:
    """Gauss-Legendre rule on [0, 1] exact for polynomials of `degree`."""
    return edge_rule(max(1, math.ceil((degree + 1) / 2)))


def integrate_on_element(
    fn: Callable[[FloatArray, FloatArray], npt.ArrayLike],
    triangle_vertices: npt.ArrayLike,
    rule: QuadRule,
) -> float:
    """Integrate fn(x, y) over a physical triangle."""
    vertices = np.asarray(triangle_vertices, dtype=np.float64).reshape(3, 2)
    first = vertices[1] - vertices[0]
    second = vertices[2] - vertices[0]
    area = 0.5 * abs(first[0] * second[1] - first[1] * second[0])
    if area <= 1e-300:
        raise DegenerateTriangleError("cannot integrate over a triangle with zero area")
    points = rule.points @ vertices
    values = np.asarray(fn(points[:, 0], points[:, 1]), dtype=np.float64)
    return float(area * (rule.weights @ np.broadcast_to(values, rule.weights.shape)))
