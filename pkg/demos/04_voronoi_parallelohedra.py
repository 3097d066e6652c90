"""
Voronoi parallelohedra and their vertex stars
=============================================

The Voronoi cells of a lattice tile space face to face.  Around any face of
the tiling, the cells that contain it form a tight fan, so in 3-space the
vertices of a Voronoi tiling come in at most five kinds.  We look at the
standard lattices and two extra ones that together show all five.
"""

from tightfan.parallelohedra import (NAMED_LATTICES, delone_classify, face_stars,
                                     verify_parallelohedron_tightness, voronoi_cell)

for name, make in NAMED_LATTICES.items():
    L = make()
    V = voronoi_cell(L)
    print(f"{name:24s} cell f-vector {V.f_vector}, {len(L.relevant_vectors)} relevant vectors")

# %%
# Vertex stars: how many cells meet at each kind of vertex, and which of
# the five tight types the star realises.
for name in ("Z3", "BCC", "FCC", "hexagonal_prism", "elongated_dodecahedron"):
    L = NAMED_LATTICES[name]()
    counts = [s.cell_count for s in face_stars(L, 3)]
    types = {t.value: n for t, n in delone_classify(L).items()}
    print(f"{name:24s} cells per vertex {counts}  types {types}")

# %%
# Every face star of every codimension is tight and carries a canonical
# scaling.
rep = verify_parallelohedron_tightness(NAMED_LATTICES["FCC"]())
for o in rep.orbits:
    print(f"  codim {o.codim}: {o.cells} cells, {getattr(o.kind, 'value', o.kind)}, "
          f"scaling={o.scaling_exists}")
print("FCC all tight:", rep.all_tight, " all scalings:", rep.all_scalings)
