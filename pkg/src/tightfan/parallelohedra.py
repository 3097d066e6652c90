"""Voronoi parallelohedra of lattices and the stars of their tilings.

All tiling computations run in lattice coordinates ``y`` (the point
``sum y_i b_i``) with the Gram metric ``G``.  The Voronoi cell there is
``{y : 2 z^T G y <= z^T G z}`` over the relevant integer vectors ``z``, and
translations are integer vectors.  This covers lattices such as the
hexagonal one that have no rational basis but do have a rational Gram
matrix.  Meeting fans, tightness and Delone types are affine invariants, so
nothing is lost; :func:`voronoi_cell` maps back to Euclidean coordinates
whenever a basis is known.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import floor, ceil, isqrt
from typing import Optional

from .cone import Cone
from .errors import InvariantViolation, NotPosDef, TightnessViolation, WrongDim
from .fan import Fan, meeting_fan
from .kernel import (QVec, add, det, dot, inverse, matmul, matvec, neg, qmat, qvec, scale,
                     sub, transpose, vsum)
from .polytope import Polytope, from_halfspaces, hull
from .scaling import star_scaling
from .tightness import NotTight, classify, is_tight


def _isqrt_floor(x: Fraction) -> int:
    """Largest integer ``k >= 0`` with ``k*k <= x``."""
    if x < 0:
        return -1
    k = isqrt(x.numerator // x.denominator)
    while (k + 1) ** 2 <= x:
        k += 1
    return k


class Lattice:
    """A full-rank lattice given by basis rows or by its Gram matrix."""

    def __init__(self, basis=None, gram=None):
        if (basis is None) == (gram is None):
            raise ValueError("give exactly one of basis and gram")
        if basis is not None:
            self.basis: Optional[tuple] = qmat(basis)
            d = len(self.basis)
            if any(len(b) != d for b in self.basis):
                raise ValueError("basis must be square")
            if det(self.basis) == 0:
                raise NotPosDef("basis is singular")
            self.gram = matmul(self.basis, transpose(self.basis))
        else:
            self.basis = None
            self.gram = qmat(gram)
            d = len(self.gram)
            if any(len(r) != d for r in self.gram):
                raise ValueError("Gram matrix must be square")
        self.dim = d
        if any(self.gram[i][j] != self.gram[j][i] for i in range(d) for j in range(d)):
            raise NotPosDef("Gram matrix is not symmetric")
        for k in range(1, d + 1):
            if det([row[:k] for row in self.gram[:k]]) <= 0:
                raise NotPosDef(f"leading minor {k} is not positive")
        if d > 3:
            raise WrongDim("lattices of dimension at most 3 are supported")

    def __repr__(self):
        if self.basis is not None:
            return f"Lattice(basis={[[str(x) for x in b] for b in self.basis]})"
        return f"Lattice(gram={[[str(x) for x in r] for r in self.gram]})"

    def norm(self, z) -> Fraction:
        return dot(z, matvec(self.gram, z))

    def to_ambient(self, y) -> QVec:
        """Euclidean point of lattice coordinates ``y`` (identity without a basis)."""
        if self.basis is None:
            return qvec(y)
        return vsum((scale(c, b) for c, b in zip(y, self.basis)), self.dim)

    def to_json(self) -> dict:
        from .io import mat_to_json
        if self.basis is not None:
            return {"basis": mat_to_json(self.basis)}
        return {"gram": mat_to_json(self.gram)}

    # ---- Voronoi cell --------------------------------------------------

    @cached_property
    def relevant_vectors(self) -> tuple:
        """Integer vectors ``z`` that are the unique (up to sign) shortest
        members of their class modulo ``2L``."""
        d = self.dim
        reps = list(itertools.product((0, 1), repeat=d))
        radius = max(self.norm(c) for c in reps)
        ginv = inverse(self.gram)
        bounds = [_isqrt_floor(radius * ginv[i][i]) for i in range(d)]
        best: dict = {}
        for z in itertools.product(*(range(-b, b + 1) for b in bounds)):
            if not any(z):
                continue
            key = tuple(x % 2 for x in z)
            n = self.norm(z)
            if n > radius:
                continue
            cur = best.get(key)
            if cur is None or n < cur[0]:
                best[key] = (n, [z])
            elif n == cur[0]:
                cur[1].append(z)
        out = []
        for n, zs in best.values():
            if len(zs) == 2:
                out.extend(zs)
        return tuple(sorted(qvec(z) for z in out))

    @cached_property
    def coordinate_cell(self) -> Polytope:
        """Voronoi cell of the origin in lattice coordinates."""
        zs = self.relevant_vectors
        normals = [matvec(self.gram, z) for z in zs]
        offsets = [self.norm(z) / 2 for z in zs]
        V = from_halfspaces(normals, offsets, (0,) * self.dim)
        if len(V.facets) != len(zs):
            raise InvariantViolation("a relevant vector does not define a facet")
        if set(V.vertices) != {tuple(-x for x in v) for v in V.vertices}:
            raise InvariantViolation("Voronoi cell is not centrally symmetric")
        if V.volume() != 1:
            raise InvariantViolation("Voronoi cell does not have covolume one")
        return V

    # ---- tiling --------------------------------------------------------

    def cells_containing(self, points) -> list:
        """Integer translations ``c`` with every point in ``c + V``."""
        V = self.coordinate_cell
        lo = [min(v[i] for v in V.vertices) for i in range(self.dim)]
        hi = [max(v[i] for v in V.vertices) for i in range(self.dim)]
        ranges = [range(ceil(lo[i] - hi[i]), floor(hi[i] - lo[i]) + 1) for i in range(self.dim)]
        out = []
        for c in itertools.product(*ranges):
            c = qvec(c)
            if all(V.contains(sub(x, c)) for x in points):
                out.append(c)
        return out


def voronoi_cell(L: Lattice) -> Polytope:
    """Voronoi cell of the origin, in Euclidean coordinates when ``L`` has a basis."""
    V = L.coordinate_cell
    if L.basis is None:
        return V
    return hull(L.to_ambient(v) for v in V.vertices)


@dataclass(frozen=True)
class FaceStar:
    """Representative face of one translation orbit and the cells around it.

    ``vertices`` and ``cells`` are Euclidean (lattice coordinates when no
    basis is known); ``coords`` and ``translations`` are the same data in
    lattice coordinates.
    """

    codim: int
    vertices: tuple
    cells: tuple
    coords: tuple
    translations: tuple
    lattice: Lattice

    @property
    def cell_count(self) -> int:
        return len(self.translations)

    @cached_property
    def _tangent(self) -> tuple:
        V = self.lattice.coordinate_cell
        p = _centroid(self.coords)
        fdirs = tuple(sub(x, p) for x in self.coords)
        out = []
        for c in self.translations:
            local = frozenset(sub(x, c) for x in self.coords)
            idx = frozenset(i for i, v in enumerate(V.vertices) if v in local)
            if len(idx) != len(local):
                raise InvariantViolation("tiling is not face-to-face at this face")
            active = [k for k, fv in enumerate(V.facet_vertices) if idx <= fv]
            near = sorted(set().union(*(V.facet_vertices[k] for k in active)))
            gens = tuple(sub(add(V.vertices[i], c), p) for i in near)
            out.append(Cone.with_hrep(p, gens, fdirs, [neg(V.facets[k][0]) for k in active]))
        return tuple(out)

    def tangent_cones(self) -> list:
        """Cells of the star seen from the face's centroid, in lattice coordinates.

        Only the cell facets through the face constrain the tangent cone.
        """
        return list(self._tangent)

    def face_cone(self) -> Cone:
        p = _centroid(self.coords)
        return Cone(p, (), tuple(sub(x, p) for x in self.coords))

    @cached_property
    def meeting(self) -> Fan:
        """Meeting fan of the star; cell ``i`` comes from ``translations[i]``."""
        return meeting_fan(self.tangent_cones(), self.face_cone())

    def to_json(self) -> dict:
        from .io import vec_to_json
        return {"codim": self.codim, "cells": self.cell_count,
                "face": [vec_to_json(v) for v in self.vertices],
                "translations": [vec_to_json(c) for c in self.cells]}


def _centroid(points) -> QVec:
    return scale(Fraction(1, len(points)), vsum(points, len(points[0])))


def _orbit_key(points) -> frozenset:
    low = min(points)
    shift = tuple(Fraction(floor(x)) for x in low)
    return frozenset(sub(p, shift) for p in points)


def face_stars(L: Lattice, codim: int) -> list:
    """One :class:`FaceStar` per translation orbit of ``codim``-faces of the tiling."""
    if not 1 <= codim <= L.dim:
        raise WrongDim(f"codim must lie in 1..{L.dim}")
    V = L.coordinate_cell
    seen = set()
    stars = []
    for face in V.faces_of_dim(L.dim - codim):
        coords = tuple(sorted(V.vertices[i] for i in face))
        key = _orbit_key(coords)
        if key in seen:
            continue
        seen.add(key)
        trans = tuple(L.cells_containing(coords))
        stars.append(FaceStar(
            codim=codim,
            vertices=tuple(L.to_ambient(x) for x in coords),
            cells=tuple(L.to_ambient(c) for c in trans),
            coords=coords,
            translations=trans,
            lattice=L,
        ))
    return stars


def delone_classify(L: Lattice) -> Counter:
    """Multiset of meeting types at the vertex orbits of a 3D tiling."""
    if L.dim != 3:
        raise WrongDim("Delone types are defined for 3D lattices")
    out = Counter()
    for star in face_stars(L, 3):
        kind = classify(star.meeting)
        if kind is NotTight:
            raise TightnessViolation("a vertex star of a parallelohedron tiling is not tight")
        out[kind] += 1
    return out


@dataclass(frozen=True)
class OrbitReport:
    codim: int
    cells: int
    tight: bool
    kind: object
    scaling_exists: Optional[bool]
    star: FaceStar

    def to_json(self) -> dict:
        kind = getattr(self.kind, "value", self.kind)
        out = {"codim": self.codim, "cells": self.cells, "tight": self.tight, "type": kind}
        if self.scaling_exists is not None:
            out["scaling_exists"] = self.scaling_exists
        return out


@dataclass(frozen=True)
class TightnessReport:
    orbits: tuple

    @property
    def all_tight(self) -> bool:
        return all(o.tight for o in self.orbits)

    @property
    def all_scalings(self) -> bool:
        return all(o.scaling_exists is not False for o in self.orbits)

    @property
    def ok(self) -> bool:
        return self.all_tight and self.all_scalings

    def to_json(self) -> dict:
        return {"all_tight": self.all_tight, "all_scalings": self.all_scalings,
                "orbits": [o.to_json() for o in self.orbits]}


def verify_parallelohedron_tightness(L: Lattice) -> TightnessReport:
    """Tightness of every face-star meeting fan, plus canonical scalings of
    the codim-2 and codim-3 stars."""
    orbits = []
    for codim in range(1, L.dim + 1):
        for star in face_stars(L, codim):
            M = star.meeting
            tight = is_tight(M)
            kind = classify(M)
            exists = None
            if codim >= 2:
                exists = star_scaling(star.tangent_cones(), star.face_cone()) is not None
            orbits.append(OrbitReport(codim, star.cell_count, tight, kind, exists, star))
    return TightnessReport(tuple(orbits))


# --------------------------------------------------------------------------
# named lattices

def z_lattice(d: int) -> Lattice:
    return Lattice(basis=[[int(i == j) for j in range(d)] for i in range(d)])


def hexagonal_lattice() -> Lattice:
    return Lattice(gram=[[2, 1], [1, 2]])


def fcc_lattice() -> Lattice:
    return Lattice(basis=[[1, 1, 0], [1, 0, 1], [0, 1, 1]])


def bcc_lattice() -> Lattice:
    return Lattice(basis=[[1, 0, 0], [0, 1, 0], [Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)]])


def hexagonal_prism_lattice() -> Lattice:
    """Hexagonal layers stacked orthogonally; cells are hexagonal prisms."""
    return Lattice(gram=[[2, -1, 0], [-1, 2, 0], [0, 0, 1]])


def elongated_dodecahedron_lattice() -> Lattice:
    """Body-centred tetragonal lattice stretched along the axis; cells are
    elongated rhombic dodecahedra."""
    return Lattice(basis=[[1, 0, 0], [0, 1, 0], [Fraction(1, 2), Fraction(1, 2), 1]])


NAMED_LATTICES = {
    "Z2": lambda: z_lattice(2),
    "hexagonal": hexagonal_lattice,
    "Z3": lambda: z_lattice(3),
    "FCC": fcc_lattice,
    "BCC": bcc_lattice,
    "hexagonal_prism": hexagonal_prism_lattice,
    "elongated_dodecahedron": elongated_dodecahedron_lattice,
}
