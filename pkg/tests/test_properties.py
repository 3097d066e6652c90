"""Property-based checks over random rational inputs (hypothesis)."""

from fractions import Fraction

from hypothesis import assume, given, settings, strategies as st

from tightfan.errors import NotFullDim
from tightfan.fan import face_fan
from tightfan.fixtures import tight_fixture_fans
from tightfan.kernel import det, scale, sub, vsum
from tightfan.polytope import combinatorially_isomorphic, hull, polar
from tightfan.scaling import (is_canonical, is_polytopal, lifting_from_scaling,
                              polytope_from_scaling, scaling_from_polytope, torsion)
from tightfan.tightness import TightType3, classify, is_tight

FIXTURES = tight_fixture_fans()
coords = st.fractions(min_value=-6, max_value=6, max_denominator=3)
points = st.tuples(coords, coords, coords)
matrices = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3)


@st.composite
def polytopes(draw):
    pts = draw(st.lists(points, min_size=4, max_size=9, unique=True))
    try:
        P = hull(pts)
    except NotFullDim:
        assume(False)
    c = scale(Fraction(1, len(P.vertices)), vsum(P.vertices, 3))
    return hull(sub(v, c) for v in P.vertices)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(FIXTURES)), matrices)
def test_classification_is_linear_invariant(name, M):
    assume(det(M) != 0)
    G = FIXTURES[name].linear_image(M)
    assert is_tight(G)
    assert classify(G) is TightType3[name]


@settings(max_examples=25, deadline=None)
@given(polytopes())
def test_polytope_scalings_are_canonical(P):
    F = face_fan(P, (0, 0, 0))
    w = scaling_from_polytope(P, (0, 0, 0))
    assert is_canonical(F, w)
    assert all(not any(torsion(F, w, r)) for r in F.ridges)
    assert lifting_from_scaling(F, w).convex


@settings(max_examples=15, deadline=None)
@given(polytopes())
def test_face_fans_are_polytopal(P):
    F = face_fan(P, (0, 0, 0))
    res = is_polytopal(F)
    assert res
    assert face_fan(res.witness, (0, 0, 0)).same_as(F)


@settings(max_examples=15, deadline=None)
@given(polytopes())
def test_polytope_from_own_scaling_is_isomorphic(P):
    F = face_fan(P, (0, 0, 0))
    M = polytope_from_scaling(F, scaling_from_polytope(P, (0, 0, 0)))
    assert combinatorially_isomorphic(M, P)
    assert face_fan(M, (0, 0, 0)).same_as(F)


@settings(max_examples=25, deadline=None)
@given(polytopes())
def test_double_polar(P):
    Q, _ = polar(P, (0, 0, 0))
    R, _ = polar(Q, (0, 0, 0))
    assert set(R.vertices) == set(P.vertices)
