"""Local symmetry, standard faces, tight fans and their classification.

Local symmetry at a face is decided on tangent cones: near a relative
interior point ``p`` of a face ``f`` a cone ``c`` coincides with
``p + (c + lin f)``, so an epsilon-ball condition becomes exact equality of
cones.
"""

from __future__ import annotations

import enum
from collections import Counter
from typing import Sequence

from .cone import Cone
from .errors import BadChain, ClassificationConflict, NotCompletePointed, WrongDim
from .fan import Fan
from .kernel import qvec
from .polytope import incidence_isomorphism


class TightType2(enum.Enum):
    ThreeRays = "ThreeRays"
    TwoLines = "TwoLines"


class TightType3(enum.Enum):
    Octahedron = "Octahedron"
    SquarePyramid = "SquarePyramid"
    Cube = "Cube"
    Tetrahedron = "Tetrahedron"
    TriangularBipyramid = "TriangularBipyramid"


class _NotTight:
    """Classifier verdict for a complete pointed fan that is not tight."""

    value = "NotTight"

    def __repr__(self):
        return "NotTight"

    def __reduce__(self):
        return "NotTight"


NotTight = _NotTight()


class Separation(enum.Enum):
    Separating = "Separating"
    NotSeparating = "NotSeparating"


# signature (number of cells, sorted facet counts) of each tight 3D type
SIGNATURES = {
    (4, (3, 3, 3, 3)): TightType3.Tetrahedron,
    (5, (3, 3, 3, 3, 4)): TightType3.SquarePyramid,
    (6, (3,) * 6): TightType3.TriangularBipyramid,
    (6, (4,) * 6): TightType3.Cube,
    (8, (3,) * 8): TightType3.Octahedron,
}


def tangent_cone(F: Fan, c: int, f: int) -> Cone:
    """Cone ``c`` seen from the fixed relative-interior point of its face ``f``.

    ``c`` and ``f`` are face ids.  The apex is ``F.relint_point(f)``.
    """
    cache = F.__dict__.setdefault("_tangent_cones", {})
    key = (c, f)
    if key not in cache:
        rc, rf = F.faces[c], F.faces[f]
        if not rf <= rc:
            raise ValueError(f"face {f} is not a face of cone {c}")
        gens = tuple(F.rays[i] for i in sorted(rc - rf))
        lin = tuple(F.rays[i] for i in sorted(rf))
        ci = _cell_index(F).get(c)
        if ci is not None and F.face_dims[c] == F.dim:
            # a full cell's tangent cone keeps exactly the facets through f
            cache[key] = Cone.with_hrep(F.relint_point(f), gens, lin, F.inequalities(ci, f))
        else:
            cache[key] = Cone(F.relint_point(f), gens, lin)
    return cache[key]


def _cell_index(F: Fan) -> dict:
    if "_cell_index" not in F.__dict__:
        F.__dict__["_cell_index"] = {F.cell_face_id(i): i for i in F.cell_ids}
    return F.__dict__["_cell_index"]


def locally_symmetric(F: Fan, c1: int, c2: int, f: int, point=None) -> bool:
    """Whether reflection through a point of ``f`` swaps the two cones near it."""
    p = F.relint_point(f) if point is None else qvec(point)
    t1 = tangent_cone(F, c1, f)
    t2 = tangent_cone(F, c2, f)
    return t1.reflect(p).same_set(t2)


def is_standard_face(F: Fan, f: int, point=None) -> bool:
    """The fan is centrally symmetric about a point of ``f`` near that point."""
    if point is None:
        cache = F.__dict__.setdefault("_standard", {})
        if f not in cache:
            cache[f] = _standard(F, f, F.relint_point(f))
        return cache[f]
    return _standard(F, f, qvec(point))


def _standard(F: Fan, f: int, p) -> bool:
    tcs = [tangent_cone(F, F.cell_face_id(ci), f) for ci in F.cells_containing(f)]
    unmatched = list(range(len(tcs)))
    for t in tcs:
        image = t.reflect(p)
        hit = next((k for k in unmatched if image.same_set(tcs[k])), None)
        if hit is None:
            return False
        unmatched.remove(hit)
    return True


def require_complete_pointed(F: Fan):
    if not (F.is_complete() and F.is_pointed()):
        raise NotCompletePointed("fan must be complete and pointed")


def tightness_violations(F: Fan) -> list:
    """Pairs of cells ``(i, j, g)`` whose meeting face ``g`` breaks tightness."""
    require_complete_pointed(F)
    bad = []
    n = len(F.cells)
    for i in range(n):
        for j in range(i + 1, n):
            g = F.face_index.get(F.cells[i] & F.cells[j])
            if g is None:
                bad.append((i, j, None))
                continue
            if not is_standard_face(F, g):
                bad.append((i, j, g))
            elif not locally_symmetric(F, F.cell_face_id(i), F.cell_face_id(j), g):
                bad.append((i, j, g))
    return bad


def is_tight(F: Fan) -> bool:
    """Every two cells meet in a standard face where they are locally symmetric."""
    require_complete_pointed(F)
    n = len(F.cells)
    for i in range(n):
        for j in range(i + 1, n):
            g = F.face_index.get(F.cells[i] & F.cells[j])
            if g is None or not is_standard_face(F, g):
                return False
            if not locally_symmetric(F, F.cell_face_id(i), F.cell_face_id(j), g):
                return False
    return True


def classify_2d(F: Fan):
    if F.dim != 2:
        raise WrongDim(f"expected a 2D fan, got dimension {F.dim}")
    if not is_tight(F):
        return NotTight
    k = len(F.cells)
    if k == 3:
        return TightType2.ThreeRays
    if k == 4:
        return TightType2.TwoLines
    raise ClassificationConflict(f"tight planar fan with {k} cells")


def signature(F: Fan) -> tuple:
    return len(F.cells), tuple(sorted(F.facet_count(ci) for ci in F.cell_ids))


_reference_cache: dict = {}


def reference_fan(kind: TightType3) -> Fan:
    if kind not in _reference_cache:
        from .fixtures import TIGHT_POLYTOPES
        from .fan import face_fan
        _reference_cache[kind] = face_fan(TIGHT_POLYTOPES[kind.value](), (0, 0, 0))
    return _reference_cache[kind]


def classify_3d(F: Fan):
    """Combinatorial type of a tight 3D fan, or ``NotTight``.

    The signature lookup is double-checked by a full combinatorial
    isomorphism with the reference face fan.
    """
    if F.dim != 3:
        raise WrongDim(f"expected a 3D fan, got dimension {F.dim}")
    if not is_tight(F):
        return NotTight
    kind = SIGNATURES.get(signature(F))
    if kind is None:
        raise ClassificationConflict(f"tight fan with unexpected signature {signature(F)}")
    if incidence_isomorphism(F.cells, reference_fan(kind).cells) is None:
        raise ClassificationConflict(f"signature says {kind.value} but lattices differ")
    return kind


def classify(F: Fan):
    """Dispatch on dimension: 1D fans are always ``"Line"`` when tight."""
    if F.dim == 2:
        return classify_2d(F)
    if F.dim == 3:
        return classify_3d(F)
    if F.dim == 1:
        return "Line" if is_tight(F) else NotTight
    raise WrongDim(f"no classification in dimension {F.dim}")


def _components(nodes: set, adj: dict) -> list:
    comps = []
    left = set(nodes)
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v in left and v not in comp:
                    comp.add(v)
                    stack.append(v)
        comps.append(comp)
        left -= comp
    return comps


def separating_surrogate(F: Fan, chain: Sequence[int]) -> Separation:
    """Combinatorial stand-in for the north/south split of a closed chain.

    The chain must be a cycle of distinct cells, consecutive ones sharing a
    facet.  It separates when the facet-adjacency graph on the remaining
    cells has at least two components.
    """
    if F.dim != 3:
        raise WrongDim("separating chains are defined for 3D fans")
    chain = list(chain)
    if len(chain) < 3 or len(set(chain)) != len(chain):
        raise BadChain("chain must list at least three distinct cells")
    for a, b in zip(chain, chain[1:] + chain[:1]):
        if F.facet_between(a, b) is None:
            raise BadChain(f"cells {a} and {b} do not share a facet")
    rest = set(F.cell_ids) - set(chain)
    comps = _components(rest, F.dual_graph())
    return Separation.Separating if len(comps) >= 2 else Separation.NotSeparating


def separating_components(F: Fan, chain: Sequence[int]) -> list:
    separating_surrogate(F, chain)
    rest = set(F.cell_ids) - set(chain)
    return _components(rest, F.dual_graph())


def facet_cycles(F: Fan, length: int) -> list:
    """All facet-cyclic chains of the given length, one per cyclic class."""
    adj = F.dual_graph()
    out = set()

    def walk(path):
        if len(path) == length:
            if path[0] in adj[path[-1]]:
                out.add(_canonical_cycle(path))
            return
        for nxt in adj[path[-1]]:
            if nxt not in path and nxt > path[0]:
                walk(path + [nxt])

    for start in F.cell_ids:
        walk([start])
    return sorted(out)


def _canonical_cycle(path):
    k = len(path)
    rots = [tuple(path[i:] + path[:i]) for i in range(k)]
    rev = list(reversed(path))
    rots += [tuple(rev[i:] + rev[:i]) for i in range(k)]
    return min(rots)


def standard_rays(F: Fan) -> list:
    """Face ids of the rays at which the fan is locally symmetric."""
    return [f for f in F.faces_of_dim(1) if is_standard_face(F, f)]


def facet_count_histogram(F: Fan) -> Counter:
    return Counter(F.facet_count(ci) for ci in F.cell_ids)
