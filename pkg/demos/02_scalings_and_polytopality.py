"""
Canonical scalings and polytopality
===================================

A scaling puts a positive weight on every facet normal of a fan.  It is
canonical when the weighted normals around each ridge sum to zero.  Such a
scaling exists exactly when the fan is the normal fan of a polytope, and
then integrating the weights across the cells rebuilds that polytope.
"""

from tightfan import (canonical_scaling, face_fan, is_polytopal, lifting_from_scaling,
                      polytope_from_scaling, scaling_from_polytope)
from tightfan.fixtures import cube, twisted_cube_fan
from tightfan.kernel import format_rat
from tightfan.scaling import torsion

# Start from the cube.  Its face fan has six square cones.
P = cube()
F = face_fan(P, (0, 0, 0))

# The polytope itself hands us a scaling: the difference of the poles of
# the two facets on either side of each fan facet.
w = scaling_from_polytope(P, (0, 0, 0))
print("weights from the cube:", sorted({format_rat(t) for t in w.weights.values()}))
print("torsion zero everywhere:", all(not any(torsion(F, w, r)) for r in F.ridges))

# %%
# The linear programme finds a canonical scaling without knowing P.
w = canonical_scaling(F)
lift = lifting_from_scaling(F, w)
print("lifting is convex:", lift.convex)
for f in lift.centred():
    print("  cell functional", [format_rat(x) for x in f])

# %%
# The functionals are the vertices of a polytope whose normal fan is F.
M = polytope_from_scaling(F, w)
print("rebuilt polytope f-vector:", M.f_vector)

# %%
# The twisted cube admits no canonical scaling.  The certificate lists the
# facets whose weight is forced to zero by the torsion equations.
res = is_polytopal(twisted_cube_fan())
print("twisted cube polytopal:", bool(res))
print("forced-zero facets:", res.certificate.to_json()["forced_zero_facets"])
