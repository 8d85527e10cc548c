"""Two-sheet covers indexed by a color set, and their recognition.

The I-double of a flag system lives on two copies of the flag set and
crosses sheets exactly along connections in I.  It is connected
precisely when no I-coloring exists downstairs; when a coloring does
exist the construction falls apart into two copies of the base.
Quotienting by a sheet-swapping deck involution inverts the
construction, which is how covers are recognized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._uf import DisjointSets
from .coloring import ColorSet, find_coloring
from .errors import (
    BadParameters,
    ConnectionCollision,
    HasFixedPoint,
    NotDeck,
    NotInvolution,
    RankNotTwo,
    ValidationError,
    VertexBipartite,
)
from .flagsys import FlagSystem, deck_transformations, validate

__all__ = [
    "DoubleResult",
    "i_double",
    "sherk_double",
    "quotient",
    "recognize_i_double",
]


@dataclass(frozen=True)
class DoubleResult:
    """Outcome of doubling: either a genuine cover or two split copies.

    split is true when the construction disconnected; `system` is then
    the component of flag (0, 0), a relabeled copy of the input, and
    the projection maps its flags back with every fiber of size 1.
    Otherwise `system` has twice the flags and fibers of size 2.
    """

    split: bool
    system: FlagSystem
    projection: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.projection, dtype=np.intp)
        arr.setflags(write=False)
        object.__setattr__(self, "projection", arr)


def _as_color_set(system: FlagSystem, color_set) -> ColorSet:
    if isinstance(color_set, ColorSet):
        if color_set.rank != system.rank:
            raise BadParameters(
                f"color set rank {color_set.rank} != system rank {system.rank}"
            )
        return color_set
    return ColorSet.of(color_set, system.rank)


def i_double(system: FlagSystem, color_set) -> DoubleResult:
    """Double cover crossing sheets along the connections in color_set.

    Flag (f, i) is numbered 2f+i.  The parity map (f, i) -> i is always
    a coloring of the result for the same index set, which is why the
    result's coloring group grows to the closure of T(M) with I.
    """
    cs = _as_color_set(system, color_set)
    n = system.flag_count
    ids = np.arange(n, dtype=np.intp)
    lifted = []
    for j, conn in enumerate(system.connections):
        s = np.empty(2 * n, dtype=np.intp)
        if j in cs:
            s[2 * ids] = 2 * conn + 1
            s[2 * ids + 1] = 2 * conn
        else:
            s[2 * ids] = 2 * conn
            s[2 * ids + 1] = 2 * conn + 1
        lifted.append(s)

    uf = DisjointSets(2 * n)
    for s in lifted:
        for f in range(2 * n):
            uf.union(f, int(s[f]))
    if uf.count == 1:
        doubled = validate(system.rank, 2 * n, lifted)
        return DoubleResult(
            split=False, system=doubled, projection=np.arange(2 * n, dtype=np.intp) // 2
        )

    # Disconnected: two mirror copies.  Keep the one holding flag (0, 0).
    root = uf.find(0)
    members = np.array(
        [f for f in range(2 * n) if uf.find(f) == root], dtype=np.intp
    )
    lab = np.full(2 * n, -1, dtype=np.intp)
    lab[members] = np.arange(members.size, dtype=np.intp)
    part = validate(system.rank, members.size, [lab[s[members]] for s in lifted])
    return DoubleResult(split=True, system=part, projection=members // 2)


def sherk_double(system: FlagSystem) -> FlagSystem:
    """Vertex-doubling cover: triangulations grow hexagonal faces.

    Defined as the {0}-double; connectivity requires a non-bipartite
    vertex graph, so bipartite input is an error rather than a split.
    """
    if system.rank != 2:
        raise RankNotTwo(system.rank, "sherk_double")
    result = i_double(system, ColorSet.of((0,), 2))
    if result.split:
        raise VertexBipartite()
    return result.system


def quotient(system: FlagSystem, u) -> tuple[FlagSystem, np.ndarray]:
    """Collapse matching flags of a deck involution into a half-size system.

    The orbits {f, u(f)} become flags, numbered by their smaller member
    in ascending order.  Connections descend because u commutes with
    them; they stay fixed-point-free because u avoids every r_j.
    """
    n = system.flag_count
    u = np.ascontiguousarray(u, dtype=np.intp)
    if u.shape != (n,):
        raise BadParameters(f"deck map has shape {u.shape}, expected ({n},)")
    ids = np.arange(n, dtype=np.intp)
    for i, conn in enumerate(system.connections):
        bad = np.nonzero(u[conn] != conn[u])[0]
        if bad.size:
            raise NotDeck(i, int(bad[0]))
    bad = np.nonzero(u[u] != ids)[0]
    if bad.size:
        raise NotInvolution(
            -1, int(bad[0]), f"u(u(f)) != f at flag {int(bad[0])}"
        )
    bad = np.nonzero(u == ids)[0]
    if bad.size:
        raise HasFixedPoint(int(bad[0]))
    for j, conn in enumerate(system.connections):
        bad = np.nonzero(u == conn)[0]
        if bad.size:
            raise ConnectionCollision(j, int(bad[0]))

    reps = np.minimum(ids, u)
    rep_flags = np.nonzero(reps == ids)[0]
    lab = np.full(n, -1, dtype=np.intp)
    lab[rep_flags] = np.arange(rep_flags.size, dtype=np.intp)
    phi = lab[reps]
    base = validate(
        system.rank,
        rep_flags.size,
        [phi[conn[rep_flags]] for conn in system.connections],
    )
    out = phi.copy()
    out.setflags(write=False)
    return base, out


def recognize_i_double(system: FlagSystem, color_set):
    """Detect whether a system is an I-double and recover the base.

    Needs an I-coloring upstairs; then hunts for a deck involution that
    swaps the two color classes without ever matching a connection.
    Returns (u, base, projection) for the first such involution in deck
    order, or None.  The base is never I-colorable: a base coloring
    would lift through the projection, yet every lift must be swapped
    by u while lifted colorings are u-invariant.
    """
    cs = _as_color_set(system, color_set)
    coloring = find_coloring(system, cs)
    if coloring is None:
        return None
    a = coloring.assignment
    n = system.flag_count
    ids = np.arange(n, dtype=np.intp)
    for u in deck_transformations(system):
        if (u[u] != ids).any() or (u == ids).any():
            continue
        if not (a[u] == a ^ 1).all():
            continue
        if any((u == conn).any() for conn in system.connections):
            continue
        try:
            base, phi = quotient(system, u)
        except ValidationError:
            continue
        return u, base, phi
    return None
