"""
A tour of two-sheet covers
==========================

Start from the tetrahedron, double it across the edge color class,
and watch the coloring group grow until it saturates.
"""

import numpy as np

from mapforge import (
    ColorSet,
    cells,
    coloring_group,
    i_double,
    is_isomorphic,
    platonic,
    recognize_i_double,
    surface_signature,
)

tetra = platonic("tetrahedron")
print("tetrahedron:", tetra.flag_count, "flags on", surface_signature(tetra))
print("coloring group:", coloring_group(tetra))

# The tetrahedron admits no {1}-coloring, so the {1}-double is connected:
# one new flag per sheet, twice the flags overall.
result = i_double(tetra, (1,))
cover = result.system
print()
print("{1}-double:", cover.flag_count, "flags, split =", result.split)
print("surface:", surface_signature(cover))
print("faces:", [f.degree for f in cells(cover, 2)])

# Doubling adjoins the color set to the group, never more.
print("group upstairs:", coloring_group(cover))

# Keep doubling by whatever is still missing; three steps always suffice.
grown = tetra
for colors in ((2,), (1,), (0,)):
    grown = i_double(grown, colors).system
group = coloring_group(grown)
print()
print("after doubling by {2}, {1}, {0}:", grown.flag_count, "flags")
print("group is now everything:", len(group), "color sets")

# The cover remembers where it came from.  Recognition finds a free
# involution swapping the sheets and rebuilds the base.
found = recognize_i_double(cover, (1,))
deck, base, projection = found
print()
print("recognized base has", base.flag_count, "flags;",
      "isomorphic to the tetrahedron:",
      is_isomorphic(base, tetra) is not None)
print("deck swaps every flag:", (deck != np.arange(cover.flag_count)).all())
