"""Polyhedral cones given by generators, with lazily computed H-reps."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .kernel import (QVec, add, dot, neg, nullspace, primitive, qvec, rank, scale,
                     sub, vsum)


def cone_facets(gens: Sequence[QVec], dim: int):
    """Facets of ``cone(gens)`` inside its linear span.

    Returns ``(facets, equations, r)``: ``facets`` is a list of
    ``(inward primitive normal, frozenset of tight generator indices)``,
    ``equations`` a basis of the orthogonal complement of the span and ``r``
    the rank.  Each facet normal lies in the span.  Brute force over
    ``(r-1)``-subsets, skipping subsets already inside a known facet.
    """
    gens = [qvec(g) for g in gens]
    r = rank(gens) if gens else 0
    equations = nullspace(gens, dim) if gens else [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    facets = []
    if r == 0:
        return facets, equations, r
    seen = set()
    for subset in combinations(range(len(gens)), r - 1):
        if any(set(subset) <= tight for _, tight in facets):
            continue
        rows = [gens[i] for i in subset] + list(equations)
        ns = nullspace(rows, dim)
        if len(ns) != 1:
            continue
        a = ns[0]
        values = [dot(a, g) for g in gens]
        if all(v >= 0 for v in values):
            pass
        elif all(v <= 0 for v in values):
            a = neg(a)
            values = [-v for v in values]
        else:
            continue
        a = primitive(a)
        if a in seen:
            continue
        seen.add(a)
        facets.append((a, frozenset(i for i, v in enumerate(values) if v == 0)))
    return facets, equations, r


def rays_from_hrep(normals: Sequence[QVec], dim: int):
    """Extreme rays of the pointed cone ``{y : a . y >= 0}``.

    Returns primitive directions, or ``None`` if the cone is not pointed and
    full-dimensional.
    """
    normals = [qvec(a) for a in normals]
    if dim == 0:
        return None
    if (rank(normals) if normals else 0) < dim:
        return None
    rays = []
    for subset in combinations(range(len(normals)), dim - 1):
        ns = nullspace([normals[i] for i in subset], dim)
        if len(ns) != 1:
            continue
        u = ns[0]
        vals = [dot(a, u) for a in normals]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            u = neg(u)
        else:
            continue
        u = primitive(u)
        if u not in rays:
            rays.append(u)
    # a full-dimensional pointed cone needs at least dim rays
    if len(rays) < dim:
        return None
    return rays


@dataclass(frozen=True)
class Cone:
    """``apex + cone(generators) + lin(lineality)``."""

    apex: QVec
    generators: tuple
    lineality: tuple = field(default=())

    @classmethod
    def with_hrep(cls, apex, generators, lineality, inequalities, equations=()) -> "Cone":
        """Cone whose H-representation is already known (skips facet enumeration).

        The caller vouches that ``inequalities`` (``a . (x - apex) >= 0``) and
        ``equations`` describe the same set as the generators.
        """
        cone = cls(tuple(apex), tuple(generators), tuple(lineality))
        cone.__dict__["hrep"] = (list(inequalities), list(equations))
        return cone

    @property
    def ambient_dim(self) -> int:
        return len(self.apex)

    @cached_property
    def directions(self) -> list:
        return list(self.generators) + list(self.lineality) + [neg(v) for v in self.lineality]

    @cached_property
    def hrep(self):
        """``(inequalities, equations)``: ``a . (x - apex) >= 0`` and ``e . (x - apex) = 0``."""
        facets, equations, _ = cone_facets(self.directions, self.ambient_dim)
        return [a for a, _ in facets], [primitive(e) for e in equations]

    @cached_property
    def dim(self) -> int:
        return rank(self.directions) if self.directions else 0

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains_direction(self, u) -> bool:
        ineqs, eqs = self.hrep
        return all(dot(a, u) >= 0 for a in ineqs) and all(dot(e, u) == 0 for e in eqs)

    def contains(self, x) -> bool:
        return self.contains_direction(sub(x, self.apex))

    def relint_point(self) -> QVec:
        if not self.generators:
            return self.apex
        n = len(self.generators)
        return add(self.apex, scale(Fraction(1, n), vsum(self.generators, self.ambient_dim)))

    def reflect(self, p) -> "Cone":
        """Image under the point reflection ``x -> 2p - x``."""
        apex = sub(scale(2, p), self.apex)
        gens = tuple(neg(g) for g in self.generators)
        if "hrep" in self.__dict__:
            ineqs, eqs = self.hrep
            return Cone.with_hrep(apex, gens, self.lineality, [neg(a) for a in ineqs], eqs)
        return Cone(apex, gens, self.lineality)

    def translate(self, v) -> "Cone":
        return Cone(add(self.apex, v), self.generators, self.lineality)

    def issubset(self, other: "Cone") -> bool:
        return other.contains(self.apex) and all(
            other.contains_direction(u) for u in self.directions)

    def same_set(self, other: "Cone") -> bool:
        """Exact set equality by mutual generator/H-rep containment."""
        return self.issubset(other) and other.issubset(self)
