"""
Dual, petrie, opposite, medial
==============================

The four classical map operators, applied to the platonic solids,
with the coloring group tracked through each one.
"""

from mapforge import (
    cells,
    coloring_group,
    dual,
    medial,
    opposite,
    petrie,
    platonic,
    surface_signature,
)


def line(name, system):
    v, e, f = (len(cells(system, i)) for i in range(3))
    print(f"{name:<18} V={v:<3} E={e:<3} F={f:<3} "
          f"{surface_signature(system)}  T={coloring_group(system)}")


cube = platonic("cube")
line("cube", cube)
line("dual(cube)", dual(cube))

# The petrie operator keeps the skeleton but re-threads the faces along
# zigzag walks.  The cube's four zigzag hexagons close up into a torus.
line("petrie(cube)", petrie(cube))

# Opposite = dual . petrie . dual.  It rebuilds the faces from the
# other side, and here lands on a non-orientable surface.
line("opposite(cube)", opposite(cube))

# All three are involutions on the nose.
def same(a, b):
    return all((x == y).all() for x, y in zip(a.connections, b.connections))

assert same(dual(dual(cube)), cube)
assert same(petrie(petrie(cube)), cube)
assert same(opposite(opposite(cube)), cube)

print()

# The medial sits a new vertex on every edge; every vertex it makes has
# degree four, and the edge count doubles.
tetra = platonic("tetrahedron")
line("tetrahedron", tetra)
line("medial(tetra)", medial(tetra))
line("octahedron", platonic("octahedron"))
print()
print("the medial of the tetrahedron is the octahedron, face-bipartite"
      " as every medial is")
