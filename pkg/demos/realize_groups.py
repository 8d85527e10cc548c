"""
Putting every coloring group on a surface
=========================================

There are sixteen subgroups of color sets at rank two.  Eight contain
the full set and need an orientable surface; the other eight live on
non-orientable ones.  Apart from three exceptional pairs, every
compatible combination is realized by an actual map.
"""

from mapforge import (
    SurfaceSignature,
    all_subgroups,
    build_map_with_group,
    coloring_group,
    surface_signature,
)
from mapforge.errors import ExceptionalPair, OrientabilityMismatch

surfaces = [SurfaceSignature(orientable=False, genus=g) for g in (1, 2, 3)]
surfaces += [SurfaceSignature(orientable=True, genus=g) for g in (0, 1, 2)]

for group in all_subgroups(2):
    row = []
    for surface in surfaces:
        try:
            system = build_map_with_group(group, surface)
        except OrientabilityMismatch:
            row.append("   .  ")
            continue
        except ExceptionalPair:
            # two groups refuse the projective plane, and the group of
            # the torus refuses the sphere
            row.append("  none")
            continue
        # the builder re-verifies, but check once more from outside
        assert coloring_group(system).masks == group.masks
        assert surface_signature(system) == surface
        row.append(f"{system.flag_count:>5}f")
    print(f"{str(group):<22}" + " ".join(row))

print()
print("columns:", " ".join(str(s) for s in surfaces))
print("each entry is the flag count of a witness map, . = wrong"
      " orientability class, none = exceptional pair")
