"""Flag systems: edge-colored flag graphs encoding maps and maniplexes.

A rank-n system consists of N flags and n+1 connection involutions
r_0..r_n.  Connections act on the right: crossing r_i replaces the
dimension-i part of a flag's incidence chain.  Axioms checked by
validate():

* every r_i is a fixed-point-free involution,
* r_i and r_j commute and disagree everywhere whenever j >= i + 2,
* the flags form a single orbit under all connections.

Rank 2 systems are maps on closed surfaces; cells of dimension 0, 1, 2
are vertices, edges, faces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._uf import DisjointSets
from .errors import (
    BadParameters,
    Disconnected,
    FixedPoint,
    NonCommuting,
    NotDisjoint,
    NotInvolution,
    OddCharacteristicOrientable,
    OutOfRange,
    RankMismatch,
    RankNotTwo,
)

__all__ = [
    "FlagSystem",
    "Cell",
    "SurfaceSignature",
    "validate",
    "cells",
    "cell_labels",
    "euler_characteristic",
    "surface_signature",
    "apply_word",
    "is_isomorphic",
    "deck_transformations",
    "check_projection",
]


@dataclass(frozen=True, eq=False)
class FlagSystem:
    """Immutable flag system.  Build instances through validate()."""

    rank: int
    connections: tuple[np.ndarray, ...]

    @property
    def flag_count(self) -> int:
        return len(self.connections[0])

    def connection(self, i: int) -> np.ndarray:
        return self.connections[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FlagSystem):
            return NotImplemented
        return self.rank == other.rank and all(
            np.array_equal(a, b) for a, b in zip(self.connections, other.connections)
        )

    def __hash__(self) -> int:
        return hash((self.rank, tuple(c.tobytes() for c in self.connections)))

    def __repr__(self) -> str:
        return f"FlagSystem(rank={self.rank}, flags={self.flag_count})"


def _freeze(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=np.intp)
    out.setflags(write=False)
    return out


def validate(rank: int, flag_count: int, raw_connections) -> FlagSystem:
    """Check the axioms and return the immutable system.

    raw_connections is a sequence of rank+1 integer sequences, each of
    length flag_count, giving the image of every flag under r_i.
    """
    if rank < 1:
        raise BadParameters(f"rank must be at least 1, got {rank}")
    if flag_count < 1:
        raise BadParameters(f"flag count must be positive, got {flag_count}")
    if len(raw_connections) != rank + 1:
        raise BadParameters(
            f"expected {rank + 1} connections for rank {rank}, got {len(raw_connections)}"
        )
    conns = []
    ident = np.arange(flag_count, dtype=np.intp)
    for i, raw in enumerate(raw_connections):
        arr = np.asarray(raw, dtype=np.intp)
        if arr.shape != (flag_count,):
            raise BadParameters(
                f"connection r{i} has length {arr.size}, expected {flag_count}"
            )
        bad = np.nonzero((arr < 0) | (arr >= flag_count))[0]
        if bad.size:
            f = int(bad[0])
            raise OutOfRange(i, f, int(arr[f]), flag_count)
        fixed = np.nonzero(arr == ident)[0]
        if fixed.size:
            raise FixedPoint(i, int(fixed[0]))
        notinv = np.nonzero(arr[arr] != ident)[0]
        if notinv.size:
            raise NotInvolution(i, int(notinv[0]))
        conns.append(arr)
    for i in range(rank + 1):
        for j in range(i + 2, rank + 1):
            ri, rj = conns[i], conns[j]
            bad = np.nonzero(ri[rj] != rj[ri])[0]
            if bad.size:
                raise NonCommuting(i, j, int(bad[0]))
            agree = np.nonzero(ri == rj)[0]
            if agree.size:
                raise NotDisjoint(i, j, int(agree[0]))
    uf = DisjointSets(flag_count)
    for arr in conns:
        for f in range(flag_count):
            uf.union(f, int(arr[f]))
    if uf.count != 1:
        raise Disconnected(uf.count)
    return FlagSystem(rank=rank, connections=tuple(_freeze(c) for c in conns))


@dataclass(frozen=True)
class Cell:
    """Orbit of the subgroup omitting r_dimension, i.e. one i-face."""

    dimension: int
    flags: tuple[int, ...]

    @property
    def degree(self) -> int:
        """Half the flag count: sides of a face / edge-ends of a vertex (rank 2)."""
        return len(self.flags) // 2

    def __contains__(self, flag: int) -> bool:
        return flag in set(self.flags)


def cell_labels(system: FlagSystem, omit: int) -> tuple[np.ndarray, int]:
    """Label every flag with the index of its dimension-`omit` cell.

    Cells are numbered 0.. in order of their smallest contained flag.
    Returns (labels array, cell count).
    """
    n = system.flag_count
    uf = DisjointSets(n)
    for i, conn in enumerate(system.connections):
        if i == omit:
            continue
        for f in range(n):
            uf.union(f, int(conn[f]))
    labels = np.empty(n, dtype=np.intp)
    order: dict[int, int] = {}
    for f in range(n):
        root = uf.find(f)
        if root not in order:
            order[root] = len(order)
        labels[f] = order[root]
    return labels, len(order)


def cells(system: FlagSystem, i: int) -> list[Cell]:
    """All dimension-i cells, numbered by smallest contained flag."""
    if not 0 <= i <= system.rank:
        raise BadParameters(f"cell dimension {i} out of range 0..{system.rank}")
    labels, count = cell_labels(system, i)
    buckets: list[list[int]] = [[] for _ in range(count)]
    for f in range(system.flag_count):
        buckets[labels[f]].append(f)
    return [Cell(dimension=i, flags=tuple(b)) for b in buckets]


def euler_characteristic(system: FlagSystem) -> int:
    """V - E + F for a rank-2 system."""
    if system.rank != 2:
        raise RankNotTwo(system.rank, "euler_characteristic")
    counts = [cell_labels(system, i)[1] for i in (0, 1, 2)]
    return counts[0] - counts[1] + counts[2]


@dataclass(frozen=True)
class SurfaceSignature:
    """Closed surface named by orientability and genus."""

    orientable: bool
    genus: int

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus if self.orientable else 2 - self.genus

    def __str__(self) -> str:
        return f"{'o' if self.orientable else 'n'}{self.genus}"

    @classmethod
    def parse(cls, text: str) -> "SurfaceSignature":
        text = text.strip()
        if len(text) < 2 or text[0] not in "on" or not text[1:].isdigit():
            raise BadParameters(f"bad surface syntax {text!r}, expected o<g> or n<k>")
        orientable = text[0] == "o"
        genus = int(text[1:])
        if not orientable and genus < 1:
            raise BadParameters("non-orientable genus must be at least 1")
        return cls(orientable=orientable, genus=genus)


def surface_signature(system: FlagSystem) -> SurfaceSignature:
    """Identify the closed surface carrying a rank-2 system."""
    if system.rank != 2:
        raise RankNotTwo(system.rank, "surface_signature")
    from .coloring import ColorSet, find_coloring

    chi = euler_characteristic(system)
    orientable = find_coloring(system, ColorSet.full(2)) is not None
    if orientable:
        if chi % 2:
            raise OddCharacteristicOrientable(chi)
        return SurfaceSignature(orientable=True, genus=(2 - chi) // 2)
    return SurfaceSignature(orientable=False, genus=2 - chi)


def apply_word(system: FlagSystem, flag: int, word) -> int:
    """Flag reached from `flag` by crossing the listed connections in order."""
    n = system.flag_count
    if not 0 <= flag < n:
        raise BadParameters(f"flag {flag} out of range 0..{n - 1}")
    f = flag
    for letter in word:
        if not 0 <= letter <= system.rank:
            raise BadParameters(f"letter {letter} out of range 0..{system.rank}")
        f = int(system.connections[letter][f])
    return f


def _bfs_tree(system: FlagSystem) -> list[tuple[int, int, int]]:
    """Spanning-tree edges (flag, parent, letter) in BFS discovery order from flag 0."""
    n = system.flag_count
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    order: list[tuple[int, int, int]] = []
    frontier = [0]
    while frontier:
        nxt = []
        for f in frontier:
            for letter, conn in enumerate(system.connections):
                g = int(conn[f])
                if not seen[g]:
                    seen[g] = True
                    order.append((g, f, letter))
                    nxt.append(g)
        frontier = nxt
    return order


def _transport_all(source: FlagSystem, target: FlagSystem, chunk: int):
    """Yield (start, table) blocks: table[g - start, f] is the image of source
    flag f when source flag 0 is sent to target flag g and images are extended
    along a BFS spanning tree of the source."""
    tree = _bfs_tree(source)
    n_t = target.flag_count
    n_s = source.flag_count
    rows = max(1, chunk // max(n_s, 1))
    for start in range(0, n_t, rows):
        stop = min(start + rows, n_t)
        table = np.empty((stop - start, n_s), dtype=np.intp)
        table[:, 0] = np.arange(start, stop, dtype=np.intp)
        for flag, parent, letter in tree:
            table[:, flag] = target.connections[letter][table[:, parent]]
        yield start, table


_CHUNK = 4_000_000


def _consistent_rows(source: FlagSystem, target: FlagSystem, table: np.ndarray) -> np.ndarray:
    ok = np.ones(table.shape[0], dtype=bool)
    for i in range(source.rank + 1):
        src = source.connections[i]
        tgt = target.connections[i]
        ok &= (table[:, src] == tgt[table]).all(axis=1)
    return ok


def is_isomorphic(system: FlagSystem, other: FlagSystem):
    """Flag bijection phi with phi(f . r_i) = phi(f) . s_i, or None.

    The search fixes flag 0 of `system` and tries every flag of `other` as
    its image, extending by flag transport along a spanning tree; a candidate
    either extends to a full isomorphism or dies on a consistency check.
    """
    if system.rank != other.rank:
        raise RankMismatch(system.rank, other.rank)
    if system.flag_count != other.flag_count:
        return None
    for start, table in _transport_all(system, other, _CHUNK):
        ok = _consistent_rows(system, other, table)
        hits = np.nonzero(ok)[0]
        if hits.size:
            return _freeze(table[hits[0]])
    return None


def deck_transformations(system: FlagSystem) -> list[np.ndarray]:
    """All flag permutations commuting with every connection.

    The action of these permutations is free, so each is determined by the
    image of flag 0; the result always contains the identity and its size
    divides the flag count.
    """
    found = []
    for start, table in _transport_all(system, system, _CHUNK):
        ok = _consistent_rows(system, system, table)
        for row in np.nonzero(ok)[0]:
            found.append(_freeze(table[row]))
    return found


def check_projection(cover: FlagSystem, base: FlagSystem, phi) -> tuple[bool, int | None]:
    """Is phi a connection-preserving projection from cover onto base?

    Returns (True, k) with the constant fiber size k, or (False, None).
    """
    if cover.rank != base.rank:
        raise RankMismatch(cover.rank, base.rank)
    phi = np.asarray(phi, dtype=np.intp)
    if phi.shape != (cover.flag_count,):
        return False, None
    if phi.min() < 0 or phi.max() >= base.flag_count:
        return False, None
    for i in range(cover.rank + 1):
        if not np.array_equal(phi[cover.connections[i]], base.connections[i][phi]):
            return False, None
    fibers = np.bincount(phi, minlength=base.flag_count)
    if fibers.min() != fibers.max():
        return False, None
    return True, int(fibers[0])
