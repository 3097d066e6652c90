"""Complete polyhedral fans.

A :class:`Fan` is stored fully enumerated: rays (primitive integer
directions from the apex), maximal cells as ray-index sets, every face of
every cell, facet/cell incidences and the cyclic order of cells around each
ridge.  All predicates are exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key
from typing import Optional, Sequence

from .cone import Cone, cone_facets, rays_from_hrep
from .errors import InvalidFan, NotAStar, NotInterior
from .kernel import (QVec, dot, is_zero, matvec, neg, nullspace, primitive, qvec,
                     rank, sub, zeros)
from .polytope import Polytope, polar


def _half(u) -> int:
    x, y = u
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angle_cmp(u, v) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


@dataclass(frozen=True)
class RidgeOrder:
    """Cells and facets around a ridge in counter-clockwise order.

    ``facets[i]`` is the common facet of ``cells[i]`` and ``cells[i+1]``
    (indices mod k).  ``basis`` spans the 2-plane used for the projection.
    """

    cells: tuple
    facets: tuple
    basis: tuple


@dataclass(frozen=True)
class SectionChart:
    """How a meeting fan sits in the ambient space.

    Chart points ``y`` correspond to ``point + sum_k y_k * basis[k]``;
    ``sources[i]`` is the star index of the cone that cut out cell ``i``.
    """

    point: QVec
    basis: tuple
    sources: tuple


class Fan:
    """A polyhedral fan given by rays and maximal cones.

    Parameters
    ----------
    rays : directions from the apex; rescaled to primitive integer vectors.
    cells : maximal cones as iterables of ray indices.  Each must be
        full-dimensional and list only extreme rays.
    apex : common apex, origin by default.
    """

    def __init__(self, rays, cells, apex=None):
        rays = [primitive(qvec(r)) for r in rays]
        if not rays:
            raise InvalidFan("a fan needs rays")
        self.dim = len(rays[0])
        if len(set(rays)) != len(rays):
            raise InvalidFan("repeated ray direction")
        self.apex = zeros(self.dim) if apex is None else qvec(apex)
        self.rays = tuple(rays)
        self.cells = tuple(frozenset(c) for c in cells)
        self.chart: Optional[SectionChart] = None
        if not self.cells:
            raise InvalidFan("a fan needs cells")
        if len(set(self.cells)) != len(self.cells):
            raise InvalidFan("repeated cell")
        self._build()

    def __repr__(self):
        return f"Fan(dim={self.dim}, rays={len(self.rays)}, cells={len(self.cells)})"

    # ---- construction --------------------------------------------------

    def _build(self):
        d = self.dim
        self.cell_facets = []
        faces = {}
        for ci, cell in enumerate(self.cells):
            idx = sorted(cell)
            if any(i < 0 or i >= len(self.rays) for i in idx):
                raise InvalidFan(f"cell {ci} references an unknown ray")
            gens = [self.rays[i] for i in idx]
            raw, _, r = cone_facets(gens, d)
            if r != d:
                raise InvalidFan(f"cell {ci} is not full-dimensional")
            facets = [(a, frozenset(idx[j] for j in tight)) for a, tight in raw]
            self.cell_facets.append(facets)
            cell_faces = {cell} | {t for _, t in facets}
            frontier = [t for _, t in facets]
            while frontier:
                nxt = []
                for g in frontier:
                    for _, t in facets:
                        h = g & t
                        if h not in cell_faces:
                            cell_faces.add(h)
                            nxt.append(h)
                frontier = nxt
            pointed = rank([a for a, _ in facets]) == d
            if pointed:
                for i in idx:
                    if frozenset([i]) not in cell_faces:
                        raise InvalidFan(f"ray {i} is not extreme in cell {ci}")
            for g in cell_faces:
                faces.setdefault(g, set()).add(ci)
        dims = {g: (rank([self.rays[i] for i in g]) if g else 0) for g in faces}
        order = sorted(faces, key=lambda g: (dims[g], sorted(g)))
        self.faces = tuple(order)
        self.face_dims = tuple(dims[g] for g in order)
        self.face_index = {g: k for k, g in enumerate(order)}
        self.face_cells = tuple(frozenset(faces[g]) for g in order)
        cell_face_sets = [set() for _ in self.cells]
        for k, g in enumerate(order):
            for ci in faces[g]:
                cell_face_sets[ci].add(g)
        # two cells must meet in a common face of both
        for i in range(len(self.cells)):
            for j in range(i + 1, len(self.cells)):
                common = self.cells[i] & self.cells[j]
                if common not in cell_face_sets[i] or common not in cell_face_sets[j]:
                    raise InvalidFan(f"cells {i} and {j} do not meet in a common face")
        self.facets = tuple(k for k, dk in enumerate(self.face_dims) if dk == d - 1)
        self.ridges = tuple(k for k, dk in enumerate(self.face_dims) if dk == d - 2 and d >= 2)

    # ---- basic access --------------------------------------------------

    @property
    def cell_ids(self) -> range:
        return range(len(self.cells))

    def face_id(self, rays) -> int:
        return self.face_index[frozenset(rays)]

    def cell_face_id(self, ci: int) -> int:
        return self.face_index[self.cells[ci]]

    def cone(self, fid: int) -> Cone:
        return Cone(self.apex, tuple(self.rays[i] for i in sorted(self.faces[fid])))

    def cell_cone(self, ci: int) -> Cone:
        return self.cone(self.cell_face_id(ci))

    def cells_containing(self, fid: int) -> tuple:
        return tuple(sorted(self.face_cells[fid]))

    def star(self, fid: int):
        """Maximal cones containing face ``fid``: ``(cell ids, cones)``."""
        ids = self.cells_containing(fid)
        return ids, [self.cell_cone(ci) for ci in ids]

    def faces_of_dim(self, k: int) -> list:
        return [f for f, dk in enumerate(self.face_dims) if dk == k]

    def facet_count(self, ci: int) -> int:
        return len(self.cell_facets[ci])

    def relint_point(self, fid: int) -> QVec:
        return self.cone(fid).relint_point()

    def inequalities(self, ci: int, fid: Optional[int] = None) -> list:
        """Inward normals of cell ``ci``; only those tight on face ``fid`` if given."""
        if fid is None:
            return [a for a, _ in self.cell_facets[ci]]
        g = self.faces[fid]
        return [a for a, t in self.cell_facets[ci] if g <= t]

    @cached_property
    def facet_cells(self) -> dict:
        return {f: self.cells_containing(f) for f in self.facets}

    @cached_property
    def facet_normals(self) -> dict:
        """Primitive normal of each two-sided facet, oriented low cell -> high cell."""
        out = {}
        for f in self.facets:
            cs = self.facet_cells[f]
            if len(cs) != 2:
                continue
            lo = cs[0]
            normal = next(a for a, t in self.cell_facets[lo] if t == self.faces[f])
            out[f] = neg(normal)
        return out

    def dual_graph(self) -> dict:
        adj = {ci: set() for ci in self.cell_ids}
        for f in self.facets:
            cs = self.facet_cells[f]
            if len(cs) == 2:
                a, b = cs
                adj[a].add(b)
                adj[b].add(a)
        return adj

    def facet_between(self, c1: int, c2: int) -> Optional[int]:
        fid = self.face_index.get(self.cells[c1] & self.cells[c2])
        if fid is not None and self.face_dims[fid] == self.dim - 1:
            return fid
        return None

    # ---- ridges and completeness ----------------------------------------

    def ridge_order(self, rid: int) -> Optional[RidgeOrder]:
        """Cyclic order around a ridge, or ``None`` if the cells there do not
        close up into exactly one full turn."""
        cache = self.__dict__.setdefault("_ridge_orders", {})
        if rid not in cache:
            cache[rid] = self._compute_ridge_order(rid)
        return cache[rid]

    def _compute_ridge_order(self, rid):
        d = self.dim
        ridge = self.faces[rid]
        basis = tuple(nullspace([self.rays[i] for i in sorted(ridge)], d)) if ridge else \
            tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))
        if len(basis) != 2:
            return None
        facets = [f for f in self.facets if ridge < self.faces[f]]
        images = {}
        for f in facets:
            extra = min(self.faces[f] - ridge)
            images[f] = matvec(basis, self.rays[extra])
        ordered = sorted(facets, key=cmp_to_key(lambda a, b: _angle_cmp(images[a], images[b])))
        k = len(ordered)
        if k < 3:
            return None
        for a, b in zip(ordered, ordered[1:]):
            if _angle_cmp(images[a], images[b]) == 0:
                return None
        cells_here = set(self.cells_containing(rid))
        cells = []
        for i in range(k):
            a, b = ordered[i], ordered[(i + 1) % k]
            u, v = images[a], images[b]
            if u[0] * v[1] - u[1] * v[0] <= 0:
                return None
            shared = set(self.facet_cells[a]) & set(self.facet_cells[b])
            if len(shared) != 1:
                return None
            (c,) = shared
            if c not in cells_here or c in cells:
                return None
            cells.append(c)
        if set(cells) != cells_here:
            return None
        # cells[i] sits between ordered[i] and ordered[i+1]
        hfacets = tuple(ordered[(i + 1) % k] for i in range(k))
        return RidgeOrder(tuple(cells), hfacets, basis)

    def is_complete(self) -> bool:
        """Two cells on opposite sides of every facet, one full turn around
        every ridge, connected dual graph."""
        for f in self.facets:
            cs = self.facet_cells[f]
            if len(cs) != 2:
                return False
            n = self.facet_normals[f]
            c0, c1 = cs
            if not any(dot(n, self.rays[i]) < 0 for i in self.cells[c0]):
                return False
            if not any(dot(n, self.rays[i]) > 0 for i in self.cells[c1]):
                return False
        for r in self.ridges:
            if self.ridge_order(r) is None:
                return False
        adj = self.dual_graph()
        seen = {0}
        queue = deque([0])
        while queue:
            for b in adj[queue.popleft()]:
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return len(seen) == len(self.cells)

    def minimal_face(self) -> frozenset:
        common = frozenset.intersection(*self.cells)
        return common

    def is_pointed(self) -> bool:
        """The common face of all cones is the apex alone."""
        if self.minimal_face():
            return False
        return all(rank(self.inequalities(ci)) == self.dim for ci in self.cell_ids)

    # ---- transforms ----------------------------------------------------

    def linear_image(self, M) -> "Fan":
        """Image under an invertible rational matrix (acting on directions)."""
        M = [qvec(row) for row in M]
        rays = [matvec(M, r) for r in self.rays]
        return Fan(rays, self.cells, matvec(M, self.apex))

    def translated(self, apex) -> "Fan":
        return Fan(self.rays, self.cells, apex)

    def to_json(self) -> dict:
        from .io import vec_to_json
        return {"apex": vec_to_json(self.apex),
                "rays": [vec_to_json(r) for r in self.rays],
                "cones": [sorted(c) for c in self.cells]}

    def same_as(self, other: "Fan") -> bool:
        """Equal as sets of cones (ray directions and cells), ignoring order."""
        if self.dim != other.dim or self.apex != other.apex:
            return False
        if set(self.rays) != set(other.rays):
            return False
        pos = {r: i for i, r in enumerate(other.rays)}
        mine = {frozenset(pos[self.rays[i]] for i in c) for c in self.cells}
        return mine == set(other.cells)


# --------------------------------------------------------------------------
# constructions

def face_fan(P: Polytope, v=None) -> Fan:
    """Cones from ``v`` over the faces of ``P``; cell ``k`` is over facet ``k``."""
    v = P.centroid() if v is None else qvec(v)
    if not P.is_interior(v):
        raise NotInterior("face fan apex must be interior")
    rays = [sub(x, v) for x in P.vertices]
    return Fan(rays, P.facet_vertices, v)


def normal_fan(P: Polytope, p=None) -> Fan:
    """Face fan of the polar polytope, translated to the origin.

    Cell ``j`` is the normal cone at vertex ``j`` of ``P``; ray ``k`` is the
    outer normal of facet ``k``.
    """
    p = P.centroid() if p is None else qvec(p)
    Q, _ = polar(P, p)
    F = face_fan(Q, p)
    return F.translated(zeros(P.dim))


def direct_sum(F1: Fan, F2: Fan) -> Fan:
    """Cones ``C1 x C2`` in the product space."""
    d1, d2 = F1.dim, F2.dim
    rays = [r + zeros(d2) for r in F1.rays] + [zeros(d1) + r for r in F2.rays]
    shift = len(F1.rays)
    cells = [c1 | frozenset(i + shift for i in c2) for c1 in F1.cells for c2 in F2.cells]
    return Fan(rays, cells, F1.apex + F2.apex)


def meeting_fan(star: Sequence[Cone], f: Cone, point=None) -> Fan:
    """Section of a face star by the orthogonal complement of the face.

    ``star`` holds the full-dimensional cones containing ``f`` (each may have
    its own apex, e.g. tangent cones of tiling cells).  The result lives in
    chart coordinates ``y`` with ``x = p + B y``; ``B`` is a rational basis
    of ``lin(f)`` complement and ``p`` a relative-interior point of ``f``.
    The fan's apex is the chart origin and ``fan.chart`` records ``p``,
    ``B`` and which star cone produced each cell.
    """
    d = f.ambient_dim
    p = f.relint_point() if point is None else qvec(point)
    if not f.contains(p):
        raise NotAStar("chosen point is not on the face")
    lin_f = [g for g in f.directions if not is_zero(g)]
    B = tuple(nullspace(lin_f, d)) if lin_f else \
        tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))
    n = len(B)
    if n == 0:
        raise NotAStar("face is full-dimensional")
    section_normals = []
    for k, C in enumerate(star):
        ineqs, eqs = C.hrep
        if eqs:
            raise NotAStar(f"star cone {k} is not full-dimensional")
        if not C.contains(p):
            raise NotAStar(f"star cone {k} does not contain the face")
        active = [a for a in ineqs if dot(a, sub(p, C.apex)) == 0]
        for a in active:
            if any(dot(a, g) != 0 for g in lin_f):
                raise NotAStar(f"face is not a face of star cone {k}")
        section_normals.append([matvec(B, a) for a in active])
    rays: list = []
    cells = []
    for k, normals in enumerate(section_normals):
        rs = rays_from_hrep(normals, n)
        if rs is None:
            raise NotAStar(f"section of star cone {k} is not a pointed cone")
        ids = set()
        for r in rs:
            if r not in rays:
                rays.append(r)
            ids.add(rays.index(r))
        cells.append(frozenset(ids))
    try:
        fan = Fan(rays, cells)
    except InvalidFan as exc:
        raise NotAStar(str(exc)) from exc
    fan.chart = SectionChart(p, B, tuple(range(len(star))))
    return fan


def fan_meeting_fan(F: Fan, fid: int, point=None) -> Fan:
    """Meeting fan of a fan at one of its faces; cell ``i`` comes from
    ``F.cells_containing(fid)[i]``."""
    _, cones = F.star(fid)
    return meeting_fan(cones, F.cone(fid), point)


def one_dim_fan() -> Fan:
    return Fan([(1,), (-1,)], [[0], [1]])


def planar_fan(rays) -> Fan:
    """Complete 2D fan with consecutive rays (sorted by angle) bounding cells."""
    rays = [primitive(qvec(r)) for r in rays]
    rays.sort(key=cmp_to_key(_angle_cmp))
    k = len(rays)
    return Fan(rays, [[i, (i + 1) % k] for i in range(k)])
