"""Classical operators on flag systems: dual, Petrie, opposite, medial.

All four regenerate connection arrays and run full validation on the
result.  They are pure and commute with flag relabeling.
"""

from __future__ import annotations

import numpy as np

from .coloring import ColorSet
from .errors import BadParameters, RankNotTwo
from .flagsys import FlagSystem, validate

__all__ = [
    "dual",
    "petrie",
    "opposite",
    "medial",
    "dual_color_set",
    "opposite_color_set",
    "petrie_color_set",
]


def dual(system: FlagSystem) -> FlagSystem:
    """Reverse the connection order; cells of dimension i become rank − i."""
    return validate(system.rank, system.flag_count, system.connections[::-1])


def opposite(system: FlagSystem) -> FlagSystem:
    """Replace connection 2 with the composite of connections 0 and 2.

    The two commute, so the composite is again a fixed-point-free
    involution; locally this reverses the gluing across every edge.
    """
    if system.rank < 2:
        raise BadParameters(f"opposite needs rank >= 2, got {system.rank}")
    conns = list(system.connections)
    conns[2] = conns[0][conns[2]]
    return validate(system.rank, system.flag_count, conns)


def petrie(system: FlagSystem) -> FlagSystem:
    """Swap faces for Petrie walks; vertices and edges stay put.

    At rank 2 connection 0 becomes the composite of connections 0 and 2.
    Higher ranks reduce to dual(opposite(dual(system))), which agrees
    with the direct form when the rank is 2.
    """
    if system.rank < 2:
        raise BadParameters(f"petrie needs rank >= 2, got {system.rank}")
    if system.rank > 2:
        return dual(opposite(dual(system)))
    conns = list(system.connections)
    conns[0] = conns[0][conns[2]]
    return validate(system.rank, system.flag_count, conns)


def medial(system: FlagSystem) -> FlagSystem:
    """Map whose vertices are the edges of the input, on the same surface.

    Flags are pairs (f, i) numbered 2f+i.  The i = 0 copy keeps the
    vertex-side adjacency of f, the i = 1 copy the face-side one, and
    the two copies of each flag are glued along the new connection 2.
    """
    if system.rank != 2:
        raise RankNotTwo(system.rank, "medial")
    n = system.flag_count
    r0, r1, r2 = system.connections
    s0 = np.empty(2 * n, dtype=np.intp)
    s1 = np.empty(2 * n, dtype=np.intp)
    s2 = np.empty(2 * n, dtype=np.intp)
    ids = np.arange(n, dtype=np.intp)
    s0[2 * ids] = 2 * r1
    s0[2 * ids + 1] = 2 * r1 + 1
    s1[2 * ids] = 2 * r0
    s1[2 * ids + 1] = 2 * r2 + 1
    s2[2 * ids] = 2 * ids + 1
    s2[2 * ids + 1] = 2 * ids
    return validate(2, 2 * n, (s0, s1, s2))


def dual_color_set(color_set: ColorSet) -> ColorSet:
    """Index set that transfers a coloring through dual: i becomes rank − i."""
    return ColorSet.of((color_set.rank - i for i in color_set.indices), color_set.rank)


def opposite_color_set(color_set: ColorSet) -> ColorSet:
    """Transfer rule through opposite: toggle 2 whenever 0 is present."""
    if 0 in color_set:
        return color_set ^ ColorSet.of((2,), color_set.rank)
    return color_set


def petrie_color_set(color_set: ColorSet) -> ColorSet:
    """Transfer rule through petrie: toggle 0 whenever 2 is present."""
    if 2 in color_set:
        return color_set ^ ColorSet.of((0,), color_set.rank)
    return color_set
