"""Torsion, canonical scalings, liftings and polytopality.

Unit facet normals are irrational in general, so a scaling ``s`` is kept as
a primitive integer normal ``m_h`` times a positive rational ``t_h`` with
``s(h) = t_h * |m_h|``.  Then ``sum s(h) n_h = sum t_h m_h`` exactly, and
every question below is decided over the rationals.

Facet normals point from the lower-indexed cell to the higher-indexed one;
ridge orders supply the signs when summing around a ridge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cone import Cone
from .errors import (IncompleteScaling, InvariantViolation, NonzeroTorsion, NotConvex,
                     NotInterior)
from .fan import Fan, face_fan, meeting_fan
from .kernel import (QVec, add, dot, forced_zero_coordinates, inverse, is_zero,
                     lp_positive_kernel, matvec, neg, primitive, qvec, ratio, scale,
                     sub, vsum, zeros)
from .polytope import Polytope, from_halfspaces, pole
from .tightness import require_complete_pointed


@dataclass(frozen=True)
class WeightedScaling:
    """Per-facet primitive normal ``m`` and positive multiplier ``t``."""

    normals: dict
    weights: dict

    def __post_init__(self):
        if set(self.normals) != set(self.weights):
            raise IncompleteScaling("normals and weights cover different facets")
        for h, t in self.weights.items():
            if not Fraction(t) > 0:
                raise ValueError(f"weight of facet {h} must be positive, got {t}")

    def vector(self, h) -> QVec:
        return scale(self.weights[h], self.normals[h])

    def scaled(self, lam) -> "WeightedScaling":
        lam = Fraction(lam)
        return WeightedScaling(dict(self.normals), {h: lam * t for h, t in self.weights.items()})

    def to_json(self) -> dict:
        from .io import rat_to_json, vec_to_json
        return {str(h): {"m": vec_to_json(self.normals[h]), "t": rat_to_json(self.weights[h])}
                for h in sorted(self.normals)}


def make_scaling(F: Fan, weights) -> WeightedScaling:
    """Attach the fan's oriented normals to weights (mapping or sequence in facet order)."""
    if not isinstance(weights, dict):
        weights = dict(zip(F.facets, weights))
    normals = {h: F.facet_normals[h] for h in weights}
    return WeightedScaling(normals, {h: Fraction(t) for h, t in weights.items()})


def uniform_scaling(F: Fan, t=1) -> WeightedScaling:
    return make_scaling(F, {h: t for h in F.facet_normals})


def _ridge_terms(F: Fan, ridge: int):
    """``(facet, sign)`` pairs around the ridge: sign turns the stored
    low->high normal into the "from cell i to cell i+1" normal."""
    order = F.ridge_order(ridge)
    if order is None:
        raise InvariantViolation(f"ridge {ridge} has no cyclic order")
    k = len(order.cells)
    terms = []
    for i in range(k):
        a, b = order.cells[i], order.cells[(i + 1) % k]
        terms.append((order.facets[i], 1 if a < b else -1))
    return terms


def torsion(F: Fan, w: WeightedScaling, ridge: int) -> QVec:
    """``sum t_h m_h`` around the ridge with normals oriented along the cyclic order."""
    total = zeros(F.dim)
    for h, sign in _ridge_terms(F, ridge):
        if h not in w.weights:
            raise IncompleteScaling(f"no weight on facet {h}")
        v = w.vector(h)
        total = add(total, v if sign > 0 else neg(v))
    return total


@dataclass(frozen=True)
class TorsionSystem:
    """``matrix @ t = 0`` iff every ridge torsion vanishes.

    One block of ``dim`` rows per ridge (in ``ridges`` order), one column per
    facet (in ``facets`` order).
    """

    matrix: tuple
    ridges: tuple
    facets: tuple
    dim: int
    forced_zero: frozenset = field(default=frozenset())

    def to_json(self) -> dict:
        from .io import rat_to_json
        return {"ridges": list(self.ridges), "facets": list(self.facets),
                "matrix": [[rat_to_json(x) for x in row] for row in self.matrix],
                "forced_zero_facets": sorted(self.facets[k] for k in self.forced_zero)}


def torsion_system(F: Fan) -> TorsionSystem:
    facets = tuple(F.facets)
    col = {h: k for k, h in enumerate(facets)}
    rows = []
    for r in F.ridges:
        block = [[Fraction(0)] * len(facets) for _ in range(F.dim)]
        for h, sign in _ridge_terms(F, r):
            m = F.facet_normals[h]
            for i in range(F.dim):
                block[i][col[h]] += sign * m[i]
        rows.extend(tuple(row) for row in block)
    return TorsionSystem(tuple(rows), tuple(F.ridges), facets, F.dim)


def canonical_scaling(F: Fan) -> Optional[WeightedScaling]:
    """A scaling with zero torsion at every ridge and all ``t >= 1``, or
    ``None`` when none exists.  Canonical scalings are not unique; this
    returns one minimising the total weight."""
    require_complete_pointed(F)
    system = torsion_system(F)
    t = lp_positive_kernel(system.matrix, len(system.facets))
    if t is None:
        return None
    return make_scaling(F, dict(zip(system.facets, t)))


def infeasibility_certificate(F: Fan) -> TorsionSystem:
    """The torsion system with the set of facet columns forced to zero."""
    system = torsion_system(F)
    forced = forced_zero_coordinates(system.matrix, len(system.facets))
    return TorsionSystem(system.matrix, system.ridges, system.facets, system.dim, forced)


def is_canonical(F: Fan, w: WeightedScaling) -> bool:
    return all(is_zero(torsion(F, w, r)) for r in F.ridges)


def scaling_from_polytope(P: Polytope, v=None) -> WeightedScaling:
    """Polar-edge scaling of ``face_fan(P, v)``.

    The facet between the cells over facets ``C1, C2`` of ``P`` gets the
    polar edge from the pole of ``C1`` to the pole of ``C2``; its length is
    ``t * |m|``.
    """
    v = P.centroid() if v is None else qvec(v)
    if not P.is_interior(v):
        raise NotInterior("centre must be interior")
    F = face_fan(P, v)
    poles = [pole(v, h) for h in P.facets]
    normals, weights = {}, {}
    for h, (c1, c2) in F.facet_cells.items():
        edge = sub(poles[c2], poles[c1])
        m = F.facet_normals[h]
        t = ratio(edge, m)
        if t is None or t <= 0:
            raise InvariantViolation(f"polar edge of facet {h} is not along its normal")
        normals[h], weights[h] = m, t
    return WeightedScaling(normals, weights)


@dataclass(frozen=True)
class Lifting:
    """Piecewise-linear ``G(x) = max_i a_i . (x - apex)``, linear on each cell.

    ``functionals[root]`` is zero.  ``centred()`` subtracts the mean
    functional, which makes ``G`` positive away from the apex.
    """

    apex: QVec
    functionals: tuple
    root: int
    convex: bool

    def value(self, x) -> Fraction:
        y = sub(qvec(x), self.apex)
        return max(dot(a, y) for a in self.functionals)

    def centred(self) -> tuple:
        n = len(self.functionals)
        mean = scale(Fraction(1, n), vsum(self.functionals, len(self.apex)))
        return tuple(sub(a, mean) for a in self.functionals)


def lifting_from_scaling(F: Fan, w: WeightedScaling, root: int = 0) -> Lifting:
    """Integrate the facet jumps ``t_h m_h`` over the dual graph from ``root``."""
    for r in F.ridges:
        tv = torsion(F, w, r)
        if not is_zero(tv):
            raise NonzeroTorsion(r, tv)
    a = {root: zeros(F.dim)}
    queue = deque([root])
    adj = F.dual_graph()
    while queue:
        ci = queue.popleft()
        for cj in sorted(adj[ci]):
            h = F.facet_between(ci, cj)
            jump = w.vector(h) if ci < cj else neg(w.vector(h))
            value = add(a[ci], jump)
            if cj not in a:
                a[cj] = value
                queue.append(cj)
            elif a[cj] != value:
                raise InvariantViolation(f"jump integration is path dependent at facet {h}")
    functionals = tuple(a[ci] for ci in F.cell_ids)
    convex = True
    for ci in F.cell_ids:
        for ri in F.cells[ci]:
            rho = F.rays[ri]
            mine = dot(functionals[ci], rho)
            if any(dot(b, rho) > mine for b in functionals):
                convex = False
    if not convex:
        raise NotConvex("positive zero-torsion scaling produced a non-convex lifting")
    return Lifting(F.apex, functionals, root, convex)


def polytope_from_scaling(F: Fan, w: WeightedScaling) -> Polytope:
    """``M = {x : a_i . (x - v) <= 1}`` for the centred lifting functionals.

    The face fan of ``M`` about the apex has exactly the cones of ``F``;
    this is checked before returning.
    """
    lift = lifting_from_scaling(F, w)
    v = F.apex
    cent = lift.centred()
    M = from_halfspaces(cent, [1 + dot(a, v) for a in cent], v)
    pos = {r: i for i, r in enumerate(F.rays)}
    vert_rays = [primitive(sub(x, v)) for x in M.vertices]
    if set(vert_rays) != set(F.rays) or len(vert_rays) != len(F.rays):
        raise InvariantViolation("witness vertices do not lie on the fan's rays")
    cones = {frozenset(pos[vert_rays[i]] for i in fv) for fv in M.facet_vertices}
    if cones != set(F.cells):
        raise InvariantViolation("witness face fan differs from the input fan")
    return M


@dataclass(frozen=True)
class Polytopality:
    """Outcome of :func:`is_polytopal`.

    Exactly one of ``witness`` (with the ``scaling`` that built it) and
    ``certificate`` is set.
    """

    polytopal: bool
    witness: Optional[Polytope] = None
    scaling: Optional[WeightedScaling] = None
    certificate: Optional[TorsionSystem] = None

    def __bool__(self):
        return self.polytopal


def is_polytopal(F: Fan) -> Polytopality:
    w = canonical_scaling(F)
    if w is None:
        return Polytopality(False, certificate=infeasibility_certificate(F))
    return Polytopality(True, witness=polytope_from_scaling(F, w), scaling=w)


# --------------------------------------------------------------------------
# stars

@dataclass(frozen=True)
class StarScaling:
    """Canonical scaling of a face star pulled back from its meeting fan.

    Keys are pairs ``(i, j)``, ``i < j``, of star indices whose cones share
    a facet; ``normals`` point from cone ``i`` to cone ``j`` in the ambient
    space.
    """

    normals: dict
    weights: dict
    meeting: Fan
    meeting_scaling: WeightedScaling

    def vector(self, pair) -> QVec:
        return scale(self.weights[pair], self.normals[pair])


def star_scaling(star: Sequence[Cone], f: Cone, point=None) -> Optional[StarScaling]:
    """Pull a canonical scaling of the meeting fan back to the star.

    Chart covector ``n'`` corresponds to the ambient vector
    ``B (B^T B)^{-1} n'`` inside the complement of ``lin f``; that map is
    linear and injective, so torsions vanish on one side iff on the other.
    """
    M = meeting_fan(star, f, point)
    if M.dim == 1:
        w_m = uniform_scaling(M)
    else:
        w_m = canonical_scaling(M)
        if w_m is None:
            return None
    basis = M.chart.basis
    gram = tuple(tuple(dot(bi, bj) for bj in basis) for bi in basis)
    ginv = inverse(gram)
    src = M.chart.sources
    normals, weights = {}, {}
    for h, (ci, cj) in M.facet_cells.items():
        coeffs = matvec(ginv, w_m.normals[h])
        u = vsum((scale(c, b) for c, b in zip(coeffs, basis)), len(M.chart.point))
        m = primitive(u)
        mu = ratio(u, m)
        key = (src[ci], src[cj])
        if key[0] > key[1]:
            key = key[::-1]
            m = neg(m)
        normals[key] = m
        weights[key] = w_m.weights[h] * mu
    result = StarScaling(normals, weights, M, w_m)
    d = len(M.chart.point)
    for r in M.ridges:
        total = zeros(d)
        for h, sign in _ridge_terms(M, r):
            ci, cj = M.facet_cells[h]
            key = (src[ci], src[cj])
            flip = 1 if key[0] < key[1] else -1
            v = result.vector(tuple(sorted(key)))
            total = add(total, v if sign * flip > 0 else neg(v))
        if not is_zero(total):
            raise InvariantViolation("pulled-back scaling has nonzero torsion")
    return result


def fan_star_scaling(F: Fan, fid: int, point=None) -> Optional[WeightedScaling]:
    """Star scaling at a face of a fan, keyed by the fan's own facet ids."""
    cells, cones = F.star(fid)
    s = star_scaling(cones, F.cone(fid), point)
    if s is None:
        return None
    normals, weights = {}, {}
    for (i, j), m in s.normals.items():
        h = F.facet_between(cells[i], cells[j])
        if h is None or F.facet_normals[h] != m:
            raise InvariantViolation("pulled-back normal disagrees with the fan")
        normals[h], weights[h] = m, s.weights[(i, j)]
    return WeightedScaling(normals, weights)
