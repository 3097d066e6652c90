"""
Meeting fans: tightness passes to sections
==========================================

Near a point of a face f, a fan looks like (the linear span of f) times a
smaller fan in a complementary subspace.  That smaller fan is the meeting
fan at f.  Tightness is inherited by every meeting fan, and in 3D this
forces the rays of a tight fan to have three or four neighbours only.
"""

from collections import Counter

from tightfan import classify, fan_meeting_fan, is_tight
from tightfan.fixtures import tight_fixture_fans

for name, F in tight_fixture_fans().items():
    kinds = Counter()
    for fid in F.faces_of_dim(1):
        M = fan_meeting_fan(F, fid)
        assert is_tight(M)
        kinds[classify(M).value] += 1
    # each ray sees either three rays or two lines in its meeting fan
    print(f"{name:20s} rays: {dict(kinds)}")

# %%
# The meeting fan at a 2D face (a fan facet) is the line split at the origin.
F = tight_fixture_fans()["Cube"]
M = fan_meeting_fan(F, F.facets[0])
print("meeting fan at a facet:", M.dim, "dimensional with", len(M.cells), "cells")
