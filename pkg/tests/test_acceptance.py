"""Acceptance criteria, one check per criterion.

Each ``criterion_*`` function returns ``(ok, detail)``.  Under pytest every
criterion is an ordinary test; run as a script it prints one PASS/FAIL line
per criterion with timings:

    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import math
import random
import sys
import time
from collections import Counter
from fractions import Fraction
from math import gcd
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import pytest  # noqa: E402

from helpers import (as_float, lp_max_coordinates, nearest_lattice_points, numeric_nullspace,  # noqa: E402
                     positive_kernel_feasible, random_polytope, random_unimodular,
                     realisable_by_heights)
from tightfan.fan import face_fan, fan_meeting_fan, normal_fan, planar_fan  # noqa: E402
from tightfan.fixtures import (TIGHT_POLYTOPES, five_ray_fan, orthant_fan, three_ray_fan,  # noqa: E402
                               tight_fixture_fans, triangular_prism, twisted_cube_fan,
                               two_lines_fan)
from tightfan.kernel import dot, sub  # noqa: E402
from tightfan.parallelohedra import (NAMED_LATTICES, delone_classify, face_stars,  # noqa: E402
                                     verify_parallelohedron_tightness)
from tightfan.polytope import incidence_isomorphism, polar, pole  # noqa: E402
from tightfan.scaling import (canonical_scaling, infeasibility_certificate, is_polytopal,  # noqa: E402
                              polytope_from_scaling, scaling_from_polytope, torsion, torsion_system)
from tightfan.tightness import (NotTight, Separation, TightType2, TightType3, classify,  # noqa: E402
                                classify_2d, facet_cycles, is_tight, separating_surrogate)


def _fixture_fans():
    return tight_fixture_fans()


# 1 -------------------------------------------------------------------------

def criterion_1():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    bad = []
    for name, F in _fixture_fans().items():
        want = TightType3[name]
        if classify(F) is not want:
            bad.append((name, "identity"))
        for k in range(20):
            M = random_unimodular(rng, 3)
            if classify(F.linear_image(M)) is not want:
                bad.append((name, k))
    dt = time.perf_counter() - t0
    return not bad and dt < 10, f"5 fixtures x 21 images, {len(bad)} mismatches, {dt:.1f}s (< 10s)"


# 2 -------------------------------------------------------------------------

def _direction(v):
    g = gcd(*v)
    return (v[0] // g, v[1] // g)


def _random_planar_rays(rng):
    """Integer rays of a complete pointed 2D fan, with distinct directions."""
    mode = rng.random()
    if mode < 0.2:
        a = (rng.randint(-5, 5), rng.randint(-5, 5))
        b = (rng.randint(-5, 5), rng.randint(-5, 5))
        if a[0] * b[1] - a[1] * b[0] == 0:
            return None
        rays = [a, b, (-a[0], -a[1]), (-b[0], -b[1])]
        if mode < 0.1:
            # three of the four lines' rays plus a perturbed fourth
            rays[3] = (rays[3][0] + rng.choice([-1, 1]), rays[3][1])
    else:
        k = rng.randint(3, 8)
        rays = [(rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(k)]
    rays = [r for r in rays if r != (0, 0)]
    if len({_direction(r) for r in rays}) != len(rays) or len(rays) < 3:
        return None
    angles = sorted(math.atan2(r[1], r[0]) for r in rays)
    gaps = [b - a for a, b in zip(angles, angles[1:])] + [angles[0] + 2 * math.pi - angles[-1]]
    if max(gaps) >= math.pi - 1e-12:
        return None
    return rays


def _oracle_2d(rays):
    """Tight iff every pair of cells meeting only at the apex is antipodal.

    Independent of the library: cells come from an atan2 sort, and
    antipodality compares reduced integer directions.
    """
    order = sorted(rays, key=lambda r: math.atan2(r[1], r[0]))
    k = len(order)
    cells = [frozenset({_direction(order[i]), _direction(order[(i + 1) % k])}) for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if cells[i] & cells[j]:
                continue
            if frozenset((-a, -b) for a, b in cells[i]) != cells[j]:
                return False
    return True


def criterion_2():
    rng = random.Random(7)
    seen, bad, kinds = 0, [], Counter()
    while seen < 200:
        rays = _random_planar_rays(rng)
        if rays is None:
            continue
        seen += 1
        F = planar_fan(rays)
        tight = _oracle_2d(rays)
        if not tight:
            want = NotTight
        elif len(rays) == 3:
            want = TightType2.ThreeRays
        else:
            want = TightType2.TwoLines
        got = classify_2d(F)
        kinds[getattr(got, "value", "NotTight")] += 1
        if got is not want or is_tight(F) != tight:
            bad.append(rays)
    ok = not bad and len(kinds) == 3
    return ok, f"200 random fans, {len(bad)} disagreements, types seen {dict(sorted(kinds.items()))}"


# 3 -------------------------------------------------------------------------

def criterion_3():
    t0 = time.perf_counter()
    rng = random.Random(3)
    bad = 0
    for _ in range(100):
        P = random_polytope(rng, max_vertices=10)
        F = face_fan(P, (0, 0, 0))
        w = scaling_from_polytope(P, (0, 0, 0))
        if any(any(torsion(F, w, r)) for r in F.ridges) or not is_polytopal(F):
            bad += 1
    dt = time.perf_counter() - t0
    return bad == 0 and dt < 60, f"100 random polytopes, {bad} failures, {dt:.1f}s (< 60s)"


# 4 -------------------------------------------------------------------------

def _round_trip_fixtures():
    fans = dict(_fixture_fans())
    fans.update({"orthant": orthant_fan(3), "prism": face_fan(triangular_prism(), (0, 0, 0)),
                 "three_rays": three_ray_fan(), "two_lines": two_lines_fan(),
                 "five_rays": five_ray_fan(), "twisted_cube": twisted_cube_fan()})
    return fans


def criterion_4():
    checked, bad = [], []
    for name, F in _round_trip_fixtures().items():
        w = canonical_scaling(F)
        if w is None:
            continue
        checked.append(name)
        M = polytope_from_scaling(F, w)
        G = face_fan(M, F.apex)
        iso = incidence_isomorphism([frozenset(c) for c in F.cells], [frozenset(c) for c in G.cells])
        if iso is None or not G.same_as(F):
            bad.append(name)
    ok = not bad and len(checked) >= 9
    return ok, f"{len(checked)} fixtures with scalings, {len(bad)} non-isomorphic {bad or ''}".rstrip()


# 5 -------------------------------------------------------------------------

def criterion_5():
    F = twisted_cube_fan()
    A = as_float(torsion_system(F).matrix)
    oracle_ok = (F.is_complete() and F.is_pointed() and not realisable_by_heights(F)
                 and numeric_nullspace(A).shape[1] > 0 and not positive_kernel_feasible(A))
    maxima = lp_max_coordinates(A)
    oracle_forced = frozenset(k for k in range(A.shape[1]) if maxima[k] < 1e-9)
    facets = torsion_system(F).facets
    runs = []
    for _ in range(3):
        G = twisted_cube_fan()
        res = is_polytopal(G)
        runs.append((canonical_scaling(G) is None, bool(res),
                     frozenset(infeasibility_certificate(G).forced_zero)))
    forced = runs[0][2]
    stable = all(r == runs[0] for r in runs)
    ok = oracle_ok and stable and runs[0][:2] == (True, False) and forced == oracle_forced and forced
    named = sorted(facets[k] for k in forced)
    return bool(ok), f"oracle non-polytopal={oracle_ok}, forced-zero facets {named} stable={stable}"


# 6 -------------------------------------------------------------------------

def criterion_6():
    faces, bad = 0, 0
    for F in _fixture_fans().values():
        for fid, k in enumerate(F.face_dims):
            if k < F.dim:
                faces += 1
                bad += not is_tight(fan_meeting_fan(F, fid))
    return bad == 0, f"{faces} faces, {bad} violations"


# 7 -------------------------------------------------------------------------

def criterion_7():
    chains, bad = 0, 0
    for F in _fixture_fans().values():
        for chain in facet_cycles(F, 3):
            chains += 1
            bad += separating_surrogate(F, list(chain)) is not Separation.NotSeparating
    return bad == 0, f"{chains} facet 3-cycles, {bad} separating"


# 8 -------------------------------------------------------------------------

def criterion_8():
    t0 = time.perf_counter()
    problems = []
    for name in ("Z2", "hexagonal", "Z3", "FCC", "BCC"):
        rep = verify_parallelohedron_tightness(NAMED_LATTICES[name]())
        if not (rep.all_tight and rep.all_scalings):
            problems.append(name)
    if delone_classify(NAMED_LATTICES["Z3"]()) != Counter({TightType3.Octahedron: 1}):
        problems.append("Z3 type")
    bcc = NAMED_LATTICES["BCC"]()
    if set(delone_classify(bcc)) != {TightType3.Tetrahedron}:
        problems.append("BCC type")
    for s in face_stars(bcc, 3):
        if len(nearest_lattice_points(bcc, s.coords[0])) != 4 or s.cell_count != 4:
            problems.append("BCC oracle")
            break
    dt = time.perf_counter() - t0
    return not problems and dt < 120, f"5 lattices, problems {problems}, {dt:.1f}s (< 120s)"


# 9 -------------------------------------------------------------------------

def _duality_ok(P, p):
    Q, corr = polar(P, p)
    R, _ = polar(Q, p)
    if set(R.vertices) != set(P.vertices):
        return False
    for F in P.faces:
        if Q.face_dim(corr[F]) != P.dim - 1 - P.face_dim(F):
            return False
        for G in P.faces:
            if (F <= G) != (corr[G] <= corr[F]):
                return False
    for k, (h, fv) in enumerate(zip(P.facets, P.facet_vertices)):
        v = pole(p, h)
        if Q.vertices[k] != v or any(dot(sub(v, p), sub(P.vertices[i], p)) != 1 for i in fv):
            return False
    N = normal_fan(P, p)
    for F in P.faces:
        if not 1 <= P.face_dim(F) < P.dim:
            continue
        verts = sorted(F)
        for r in P.facets_containing(F):
            if any(dot(N.rays[r], sub(P.vertices[v], P.vertices[verts[0]])) for v in verts[1:]):
                return False
    return True


def criterion_9():
    rng = random.Random(9)
    polys = [make() for make in TIGHT_POLYTOPES.values()]
    polys += [random_polytope(rng) for _ in range(50)]
    bad = sum(not _duality_ok(P, (0, 0, 0)) for P in polys)
    off = _duality_ok(TIGHT_POLYTOPES["Cube"](), (Fraction(1, 3), 0, Fraction(-1, 2)))
    return bad == 0 and off, f"{len(polys)} polytopes, {bad} failures, off-centre cube ok={off}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("check", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(check):
    ok, detail = check()
    assert ok, detail


def main() -> int:
    failed = 0
    for i, check in enumerate(CRITERIA, 1):
        t0 = time.perf_counter()
        try:
            ok, detail = check()
        except Exception as exc:  # report, keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        dt = time.perf_counter() - t0
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} criterion {i} ({dt:.1f}s): {detail}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
