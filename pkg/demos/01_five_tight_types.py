"""
The five combinatorial types of tight 3D fans
=============================================

A complete pointed fan is tight when any two of its cells look like mirror
images of each other near every point where they meet.  In three
dimensions only five combinatorial types survive.  Here we build each of
them as the face fan of a small polytope, check tightness, and see a few
fans that fail.
"""

from tightfan import classify, face_fan, is_tight, tightness_violations
from tightfan.fixtures import TIGHT_POLYTOPES, five_ray_fan, triangular_prism, twisted_cube_fan
from tightfan.tightness import signature

# Face fans about the origin: one cell per facet of the polytope.
for name, make in TIGHT_POLYTOPES.items():
    F = face_fan(make(), (0, 0, 0))
    cells, facet_counts = signature(F)
    print(f"{name:20s} tight={is_tight(F)}  cells={cells}  facets per cell={facet_counts}")
    assert classify(F).value == name

# The signature (number of cells and facets per cell) is enough to tell
# the five types apart, and the classifier double-checks with an explicit
# isomorphism against a reference fan.

# %%
# Not every nice polytope gives a tight fan.  The triangular prism has two
# triangles which meet only at the apex but are not antipodal.
prism = face_fan(triangular_prism(), (0, 0, 0))
print("prism tight:", is_tight(prism))
print("offending pairs (cell, cell, meeting face):", tightness_violations(prism))

# %%
# In the plane the only tight fans are three rays and two crossing lines.
print("five rays in the plane:", classify(five_ray_fan()))

# %%
# The twisted cube splits every square of the cube into two triangles.  It
# is complete and pointed but not tight.
print("twisted cube:", classify(twisted_cube_fan()))
