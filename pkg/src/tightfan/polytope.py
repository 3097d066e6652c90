"""Convex polytopes in V- and H-representation, face lattices and polarity."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, Optional, Sequence

from .cone import cone_facets
from .errors import InvalidFan, NotFullDim, NotInterior, PoleUndefined, Unbounded
from .kernel import (QVec, add, det, dot, primitive, qvec, rank, ratio, scale,
                     sub, vsum)


def affine_rank(points: Sequence[QVec]) -> int:
    if not points:
        return -1
    p0 = points[0]
    diffs = [sub(p, p0) for p in points[1:]]
    return rank(diffs) if diffs else 0


class Polytope:
    """A full-dimensional convex polytope.

    ``facets[k] = (normal, offset)`` encodes ``normal . x <= offset`` with a
    primitive integer outer normal, and ``facet_vertices[k]`` is the set of
    vertex indices on that facet.  Faces are frozensets of vertex indices.
    """

    def __init__(self, vertices, facets, facet_vertices, *, check: bool = True):
        self.vertices = tuple(qvec(v) for v in vertices)
        self.facets = tuple((qvec(n), Fraction(o)) for n, o in facets)
        self.facet_vertices = tuple(frozenset(s) for s in facet_vertices)
        self.dim = len(self.vertices[0])
        if check:
            self._certify()

    def __repr__(self):
        return f"Polytope(dim={self.dim}, f_vector={self.f_vector})"

    def _certify(self):
        d = self.dim
        for (n, o), on in zip(self.facets, self.facet_vertices):
            for i, v in enumerate(self.vertices):
                s = dot(n, v)
                if s > o or (s == o) != (i in on):
                    raise InvalidFan("V- and H-representations disagree")
            if affine_rank([self.vertices[i] for i in on]) != d - 1:
                raise InvalidFan("facet not spanned by its vertices")
        for i in range(len(self.vertices)):
            normals = [n for (n, _), on in zip(self.facets, self.facet_vertices) if i in on]
            if rank(normals) != d:
                raise InvalidFan(f"point {i} is not a vertex")

    # ---- queries -------------------------------------------------------

    def contains(self, x) -> bool:
        return all(dot(n, x) <= o for n, o in self.facets)

    def is_interior(self, x) -> bool:
        return all(dot(n, x) < o for n, o in self.facets)

    def centroid(self) -> QVec:
        return scale(Fraction(1, len(self.vertices)), vsum(self.vertices, self.dim))

    @cached_property
    def faces(self) -> tuple:
        """All faces, ``∅`` first and the whole vertex set last, ranked by dimension."""
        found = set(self.facet_vertices)
        frontier = list(self.facet_vertices)
        while frontier:
            nxt = []
            for face in frontier:
                for facet in self.facet_vertices:
                    g = face & facet
                    if g and g not in found:
                        found.add(g)
                        nxt.append(g)
            frontier = nxt
        found.add(frozenset())
        found.add(frozenset(range(len(self.vertices))))
        return tuple(sorted(found, key=lambda f: (self.face_dim(f), sorted(f))))

    def face_dim(self, face) -> int:
        cache = self.__dict__.setdefault("_face_dims", {})
        if face not in cache:
            cache[face] = affine_rank([self.vertices[i] for i in sorted(face)])
        return cache[face]

    @cached_property
    def face_index(self) -> dict:
        return {f: i for i, f in enumerate(self.faces)}

    def faces_of_dim(self, k: int) -> list:
        return [f for f in self.faces if self.face_dim(f) == k]

    @cached_property
    def f_vector(self) -> tuple:
        counts = [0] * self.dim
        for f in self.faces:
            k = self.face_dim(f)
            if 0 <= k < self.dim:
                counts[k] += 1
        return tuple(counts)

    def facets_containing(self, face) -> frozenset:
        return frozenset(k for k, on in enumerate(self.facet_vertices) if face <= on)

    def volume(self) -> Fraction:
        """Exact volume from a pulling triangulation of the face lattice."""
        simplices = self._pulling(frozenset(range(len(self.vertices))), self.dim)
        total = Fraction(0)
        for s in simplices:
            v0 = self.vertices[s[0]]
            total += abs(det([sub(self.vertices[i], v0) for i in s[1:]]))
        return total / factorial(self.dim)

    def _pulling(self, face, k):
        if k == 0:
            return [[min(face)]]
        apex = min(face)
        out = []
        for g in self.faces:
            if g < face and self.face_dim(g) == k - 1 and apex not in g:
                for simplex in self._pulling(g, k - 1):
                    out.append([apex] + simplex)
        return out

    def to_json(self) -> dict:
        from .io import vec_to_json
        return {"vertices": [vec_to_json(v) for v in self.vertices]}


# --------------------------------------------------------------------------
# constructions

def hull(points: Iterable) -> Polytope:
    """Convex hull of finitely many rational points; redundant points dropped."""
    pts = []
    for p in points:
        p = qvec(p)
        if p not in pts:
            pts.append(p)
    if not pts:
        raise NotFullDim(-1)
    d = len(pts[0])
    r = affine_rank(pts)
    if r < d:
        raise NotFullDim(r)
    lifted = [p + (Fraction(1),) for p in pts]
    raw, _, _ = cone_facets(lifted, d + 1)
    facets = []
    incidence = []
    for a, tight in raw:
        # a . (x, 1) >= 0  <=>  (-a[:d]) . x <= a[d]
        outer = tuple(-c for c in a[:d])
        n = primitive(outer)
        lam = ratio(outer, n)
        facets.append((n, a[d] / lam))
        incidence.append(tight)
    keep = [i for i in range(len(pts))
            if rank([facets[k][0] for k, t in enumerate(incidence) if i in t] or [(Fraction(0),) * d]) == d]
    remap = {old: new for new, old in enumerate(keep)}
    verts = [pts[i] for i in keep]
    fv = [frozenset(remap[i] for i in t if i in remap) for t in incidence]
    return Polytope(verts, facets, fv)


def pole(p, hyperplane) -> QVec:
    """The point ``v`` with ``(v - p) . (t - p) = 1`` for every ``t`` on the hyperplane."""
    n, o = hyperplane
    n, p = qvec(n), qvec(p)
    gap = Fraction(o) - dot(n, p)
    if gap == 0:
        raise PoleUndefined("centre lies on the hyperplane")
    return add(p, scale(1 / gap, n))


def polar(P: Polytope, p=None):
    """Polar polytope about ``p`` together with the face correspondence.

    Vertex ``k`` of the result is the pole of facet ``k`` of ``P``; facet
    ``j`` of the result is dual to vertex ``j`` of ``P``.  Returns
    ``(Q, corr)`` with ``corr`` mapping each face of ``P`` to its dual face.
    """
    p = P.centroid() if p is None else qvec(p)
    if not P.is_interior(p):
        raise NotInterior("polarity centre must be interior")
    verts = [pole(p, h) for h in P.facets]
    facets = []
    for x in P.vertices:
        u = sub(x, p)
        n = primitive(u)
        lam = ratio(u, n)
        facets.append((n, (1 + dot(u, p)) / lam))
    fv = [frozenset(k for k, on in enumerate(P.facet_vertices) if j in on)
          for j in range(len(P.vertices))]
    Q = Polytope(verts, facets, fv)
    corr = {F: (P.facets_containing(F) if F else frozenset(range(len(verts))))
            for F in P.faces}
    return Q, corr


def from_halfspaces(normals, offsets, interior) -> Polytope:
    """Bounded polytope ``{x : n_k . x <= o_k}`` given a strictly interior point."""
    interior = qvec(interior)
    poles = []
    for n, o in zip(normals, offsets):
        n = qvec(n)
        if not dot(n, interior) < Fraction(o):
            raise NotInterior("point violates or lies on a halfspace")
        poles.append(pole(interior, (n, o)))
    try:
        Q = hull(poles)
    except NotFullDim as exc:
        raise Unbounded("halfspaces do not bound a polytope") from exc
    if not Q.is_interior(interior):
        raise Unbounded("halfspaces do not bound a polytope")
    return polar(Q, interior)[0]


# --------------------------------------------------------------------------
# combinatorial isomorphism

def incidence_isomorphism(sets_a, sets_b) -> Optional[dict]:
    """Bijection of ground elements mapping one set family onto the other.

    Backtracking with degree/size signatures and pairwise co-occurrence
    pruning.  Ground sets are the unions of the families.
    """
    A = [frozenset(s) for s in sets_a]
    B = [frozenset(s) for s in sets_b]
    if len(A) != len(B) or sorted(map(len, A)) != sorted(map(len, B)):
        return None
    ground_a = sorted(set().union(*A)) if A else []
    ground_b = sorted(set().union(*B)) if B else []
    if len(ground_a) != len(ground_b):
        return None

    def profile(family, ground):
        inc = {x: [k for k, s in enumerate(family) if x in s] for x in ground}
        sig = {x: tuple(sorted(len(family[k]) for k in inc[x])) for x in ground}
        co = {x: {y: len(set(inc[x]) & set(inc[y])) for y in ground} for x in ground}
        return sig, co

    sig_a, co_a = profile(A, ground_a)
    sig_b, co_b = profile(B, ground_b)
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return None

    order = []
    remaining = set(ground_a)
    while remaining:
        if order:
            x = max(sorted(remaining), key=lambda z: sum(co_a[z][y] > 0 for y in order))
        else:
            x = max(sorted(remaining), key=lambda z: len(sig_a[z]))
        order.append(x)
        remaining.discard(x)

    target = set(B)
    mapping: dict = {}
    used: set = set()

    def extend(i):
        if i == len(order):
            return {frozenset(mapping[x] for x in s) for s in A} == target
        x = order[i]
        for y in ground_b:
            if y in used or sig_b[y] != sig_a[x]:
                continue
            if co_a[x][x] != co_b[y][y]:
                continue
            if any(co_a[x][x2] != co_b[y][mapping[x2]] for x2 in order[:i]):
                continue
            mapping[x] = y
            used.add(y)
            if extend(i + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    return dict(mapping) if extend(0) else None


def combinatorially_isomorphic(P: Polytope, Q: Polytope) -> bool:
    if P.dim != Q.dim or len(P.vertices) != len(Q.vertices):
        return False
    return incidence_isomorphism(P.facet_vertices, Q.facet_vertices) is not None
