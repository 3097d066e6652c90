"""Reference polytopes and fans used by the classifier, tests and demos."""

from __future__ import annotations

import itertools

from .fan import Fan, face_fan, one_dim_fan, planar_fan
from .polytope import Polytope, hull


def octahedron() -> Polytope:
    return hull([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])


def cube() -> Polytope:
    return hull(itertools.product([-1, 1], repeat=3))


def square_pyramid() -> Polytope:
    return hull([(1, 1, -1), (1, -1, -1), (-1, 1, -1), (-1, -1, -1), (0, 0, 1)])


def tetrahedron() -> Polytope:
    return hull([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)])


def triangular_bipyramid() -> Polytope:
    return hull([(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 1), (0, 0, -1)])


def triangular_prism() -> Polytope:
    return hull([(2, 0, 1), (-1, 2, 1), (-1, -2, 1), (2, 0, -1), (-1, 2, -1), (-1, -2, -1)])


TIGHT_POLYTOPES = {
    "Octahedron": octahedron,
    "SquarePyramid": square_pyramid,
    "Cube": cube,
    "Tetrahedron": tetrahedron,
    "TriangularBipyramid": triangular_bipyramid,
}


def tight_fixture_fans() -> dict:
    """Face fans about the origin of the five reference polytopes."""
    return {name: face_fan(make(), (0, 0, 0)) for name, make in TIGHT_POLYTOPES.items()}


def orthant_fan(d: int = 3) -> Fan:
    rays = []
    for i in range(d):
        for s in (1, -1):
            e = [0] * d
            e[i] = s
            rays.append(tuple(e))
    cells = []
    for signs in itertools.product((0, 1), repeat=d):
        cells.append([2 * i + s for i, s in enumerate(signs)])
    return Fan(rays, cells)


def three_ray_fan() -> Fan:
    return planar_fan([(1, 0), (0, 1), (-1, -1)])


def two_lines_fan() -> Fan:
    return planar_fan([(1, 0), (0, 1), (-1, 0), (0, -1)])


def five_ray_fan() -> Fan:
    return planar_fan([(1, 0), (0, 1), (-1, 1), (-1, -1), (1, -1)])


CUBE_VERTICES = [v for v in itertools.product((-1, 1), repeat=3)]


def twisted_cube_fan() -> Fan:
    """Fan over the cube boundary with each square split along a diagonal.

    Writing ``w_v`` for the reciprocal height of the point on ray ``v`` of a
    realising polytope and ``chi(v)`` for the product of the coordinates'
    signs, the diagonal through the two ``chi = +1`` corners of a square
    requires ``sum_face chi(v) w_v < 0`` and the other diagonal ``> 0``.
    The sums on opposite squares add to the same total, so taking the
    ``chi = +1`` diagonals on both x-squares and the ``chi = -1`` diagonals on
    both y-squares asks for that total to be both negative and positive.
    """
    index = {v: i for i, v in enumerate(CUBE_VERTICES)}

    def chi(v):
        return v[0] * v[1] * v[2]

    choice = {0: 1, 1: -1, 2: 1}
    cells = []
    for axis in range(3):
        for side in (-1, 1):
            square = [v for v in CUBE_VERTICES if v[axis] == side]
            diag = [v for v in square if chi(v) == choice[axis]]
            other = [v for v in square if chi(v) != choice[axis]]
            for corner in other:
                cells.append([index[diag[0]], index[diag[1]], index[corner]])
    return Fan(CUBE_VERTICES, cells)


__all__ = [
    "octahedron", "cube", "square_pyramid", "tetrahedron", "triangular_bipyramid",
    "triangular_prism", "TIGHT_POLYTOPES", "tight_fixture_fans", "orthant_fan",
    "three_ray_fan", "two_lines_fan", "five_ray_fan", "twisted_cube_fan", "one_dim_fan",
]
