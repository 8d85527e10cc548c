"""Flag bicolorings and the group they generate.

An I-coloring of a flag system assigns 0/1 to every flag so that colors
differ across r_j exactly when j lies in the index set I.  The index
sets admitting a coloring form a subgroup of the power set of
{0..rank} under symmetric difference; that subgroup is the central
invariant computed here.

direct_pso provides an independent route to the four rank-2
pseudo-orientation properties.  It never consults find_coloring: each
kind two-colors a cell-level constraint graph (faces, vertices or
edges carry a binary "circular direction" and every crossing imposes a
parity relation), which is exactly the existence question for the
matching arrow assignment.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ._uf import ParityDisjointSets
from .errors import (
    BadParameters,
    ClosureViolation,
    NotAClosedCycle,
    RankMismatch,
    RankNotTwo,
)
from .flagsys import Cell, FlagSystem, apply_word, cell_labels

__all__ = [
    "ColorSet",
    "Coloring",
    "ColoringGroup",
    "ArrowAssignment",
    "find_coloring",
    "is_valid_coloring",
    "coloring_group",
    "coloring_group_excluding_cell",
    "cycle_consistent",
    "is_pseudo_orientable",
    "direct_pso",
    "i_face_bipartite",
    "subgroup_closure",
    "all_subgroups",
    "PSO_KINDS",
]


@dataclass(frozen=True, order=True)
class ColorSet:
    """Subset of {0..rank} stored as a bitmask."""

    rank: int
    mask: int

    def __post_init__(self):
        if self.rank < 1:
            raise BadParameters(f"rank must be >= 1, got {self.rank}")
        if not 0 <= self.mask < (1 << (self.rank + 1)):
            raise BadParameters(f"mask {self.mask} out of range for rank {self.rank}")

    @classmethod
    def of(cls, indices, rank: int) -> "ColorSet":
        mask = 0
        for i in indices:
            if not 0 <= i <= rank:
                raise BadParameters(f"index {i} out of range 0..{rank}")
            mask |= 1 << i
        return cls(rank=rank, mask=mask)

    @classmethod
    def empty(cls, rank: int) -> "ColorSet":
        return cls(rank=rank, mask=0)

    @classmethod
    def full(cls, rank: int) -> "ColorSet":
        return cls(rank=rank, mask=(1 << (rank + 1)) - 1)

    @classmethod
    def parse(cls, text: str, rank: int) -> "ColorSet":
        text = text.strip()
        if text in ("e", ""):
            return cls.empty(rank)
        if not text.isdigit():
            raise BadParameters(f"bad color set syntax {text!r}")
        return cls.of((int(ch) for ch in text), rank)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.rank + 1) if self.mask >> i & 1)

    def __contains__(self, i: int) -> bool:
        return 0 <= i <= self.rank and bool(self.mask >> i & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __xor__(self, other: "ColorSet") -> "ColorSet":
        if self.rank != other.rank:
            raise RankMismatch(self.rank, other.rank)
        return ColorSet(rank=self.rank, mask=self.mask ^ other.mask)

    def complement(self) -> "ColorSet":
        return ColorSet(rank=self.rank, mask=self.mask ^ ((1 << (self.rank + 1)) - 1))

    def __str__(self) -> str:
        return "".join(str(i) for i in self.indices) or "e"

    def sort_key(self) -> tuple:
        return (len(self), self.indices)


@dataclass(frozen=True)
class Coloring:
    """A concrete I-coloring; assignment[f] is the color of flag f."""

    color_set: ColorSet
    assignment: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.assignment, dtype=np.uint8)
        arr.setflags(write=False)
        object.__setattr__(self, "assignment", arr)


@dataclass(frozen=True)
class ColoringGroup:
    """Delta-closed family of color sets containing the empty set."""

    rank: int
    masks: frozenset[int]

    def __post_init__(self):
        if 0 not in self.masks:
            raise ClosureViolation("group lacks the empty color set")
        for a in self.masks:
            for b in self.masks:
                if (a ^ b) not in self.masks:
                    raise ClosureViolation(
                        f"not closed: {ColorSet(self.rank, a)} ^ {ColorSet(self.rank, b)} missing"
                    )
        if len(self.masks) & (len(self.masks) - 1):
            raise ClosureViolation(f"size {len(self.masks)} is not a power of two")

    @classmethod
    def of(cls, rank: int, sets) -> "ColoringGroup":
        masks = set()
        for s in sets:
            masks.add(s.mask if isinstance(s, ColorSet) else int(s))
        return cls(rank=rank, masks=frozenset(masks))

    @classmethod
    def parse(cls, text: str, rank: int) -> "ColoringGroup":
        parts = [p for p in text.strip().split(",") if p]
        return cls.of(rank, (ColorSet.parse(p, rank) for p in parts))

    @property
    def members(self) -> tuple[ColorSet, ...]:
        sets = [ColorSet(self.rank, m) for m in self.masks]
        return tuple(sorted(sets, key=ColorSet.sort_key))

    def __contains__(self, item) -> bool:
        mask = item.mask if isinstance(item, ColorSet) else int(item)
        return mask in self.masks

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.masks)

    def __str__(self) -> str:
        return ",".join(str(s) for s in self.members)


def subgroup_closure(rank: int, sets) -> ColoringGroup:
    """Smallest Delta-closed family containing the given color sets."""
    masks = {0}
    for s in sets:
        m = s.mask if isinstance(s, ColorSet) else int(s)
        masks |= {m ^ old for old in masks}
    return ColoringGroup(rank=rank, masks=frozenset(masks))


def all_subgroups(rank: int) -> list[ColoringGroup]:
    """Every Delta-closed subgroup of the power set of {0..rank}."""
    singles = list(range(1 << (rank + 1)))
    seen: set[frozenset[int]] = set()
    out: list[ColoringGroup] = []
    for size in range(rank + 2):
        for gens in combinations(singles[1:], size):
            grp = subgroup_closure(rank, gens)
            if grp.masks not in seen:
                seen.add(grp.masks)
                out.append(grp)
    out.sort(key=lambda g: (len(g), tuple(s.sort_key() for s in g.members)))
    return out


def _as_color_set(system: FlagSystem, color_set) -> ColorSet:
    if isinstance(color_set, ColorSet):
        if color_set.rank != system.rank:
            raise RankMismatch(color_set.rank, system.rank)
        return color_set
    return ColorSet.of(color_set, system.rank)


def find_coloring(system: FlagSystem, color_set) -> Coloring | None:
    """Breadth-first parity propagation from flag 0 with color 0 there.

    Returns the canonical I-coloring, or None when some cycle forces a
    contradiction.  The only other coloring is its complement.
    """
    cs = _as_color_set(system, color_set)
    n = system.flag_count
    colors = np.full(n, -1, dtype=np.int8)
    colors[0] = 0
    flips = [1 if j in cs else 0 for j in range(system.rank + 1)]
    conns = system.connections
    queue = deque([0])
    while queue:
        f = queue.popleft()
        cf = int(colors[f])
        for j in range(system.rank + 1):
            g = int(conns[j][f])
            want = cf ^ flips[j]
            have = colors[g]
            if have < 0:
                colors[g] = want
                queue.append(g)
            elif have != want:
                return None
    return Coloring(color_set=cs, assignment=colors.astype(np.uint8))


def is_valid_coloring(system: FlagSystem, color_set, assignment) -> bool:
    """Check the defining property at every flag and index."""
    cs = _as_color_set(system, color_set)
    a = np.asarray(assignment, dtype=np.uint8)
    if a.shape != (system.flag_count,) or a.max(initial=0) > 1:
        return False
    for j in range(system.rank + 1):
        differs = a[system.connections[j]] != a
        if j in cs:
            if not differs.all():
                return False
        elif differs.any():
            return False
    return True


def coloring_group(system: FlagSystem) -> ColoringGroup:
    """All color sets admitting a coloring; verified to be a subgroup."""
    members = []
    for mask in range(1 << (system.rank + 1)):
        if find_coloring(system, ColorSet(system.rank, mask)) is not None:
            members.append(mask)
    return ColoringGroup(rank=system.rank, masks=frozenset(members))


def coloring_group_excluding_cell(system: FlagSystem, face: Cell) -> ColoringGroup:
    """Color sets colorable on the system with one face's flags deleted.

    The remaining flag graph may be disconnected; each component is
    colored independently, so membership only requires the absence of a
    contradictory cycle outside the deleted face.
    """
    if system.rank != 2:
        raise RankNotTwo(system.rank, "coloring_group_excluding_cell")
    if face.dimension != 2:
        raise BadParameters(f"expected a face cell, got dimension {face.dimension}")
    removed = np.zeros(system.flag_count, dtype=bool)
    removed[list(face.flags)] = True
    conns = system.connections
    members = []
    for mask in range(1 << (system.rank + 1)):
        cs = ColorSet(system.rank, mask)
        flips = [1 if j in cs else 0 for j in range(system.rank + 1)]
        colors = np.full(system.flag_count, -1, dtype=np.int8)
        ok = True
        for start in range(system.flag_count):
            if removed[start] or colors[start] >= 0:
                continue
            colors[start] = 0
            queue = deque([start])
            while ok and queue:
                f = queue.popleft()
                cf = int(colors[f])
                for j in range(system.rank + 1):
                    g = int(conns[j][f])
                    if removed[g]:
                        continue
                    want = cf ^ flips[j]
                    have = colors[g]
                    if have < 0:
                        colors[g] = want
                        queue.append(g)
                    elif have != want:
                        ok = False
                        break
            if not ok:
                break
        if ok:
            members.append(mask)
    return ColoringGroup(rank=system.rank, masks=frozenset(members))


def cycle_consistent(system: FlagSystem, flag: int, word, color_set) -> bool:
    """Does a closed word at `flag` cross connections in `color_set` evenly?"""
    cs = _as_color_set(system, color_set)
    word = list(word)
    end = apply_word(system, flag, word)
    if end != flag:
        raise NotAClosedCycle(flag, end)
    return sum(1 for letter in word if letter in cs) % 2 == 0


def is_pseudo_orientable(system: FlagSystem, color_set) -> bool:
    """Can cells be given arrows matching along every index outside color_set?

    Equivalent to colorability of the complementary index set, in any rank.
    """
    cs = _as_color_set(system, color_set)
    return find_coloring(system, cs.complement()) is not None


@dataclass(frozen=True)
class ArrowAssignment:
    """Witness for a pseudo-orientation: one direction bit per cell."""

    kind: str
    cell_dimension: int
    arrows: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.arrows, dtype=np.uint8)
        arr.setflags(write=False)
        object.__setattr__(self, "arrows", arr)


# kind -> (cell dimension, the two letters acting inside a cell, crossing letter,
#          parity required across the crossing: 1 = opposite, 0 = aligned)
PSO_KINDS = {
    "full": (2, (0, 1), 2, 1),
    "face": (2, (0, 1), 2, 0),
    "vertex": (0, (1, 2), 0, 0),
    "edge": (1, (0, 2), 1, 0),
}


def _alternating_reference(system: FlagSystem, inner) -> np.ndarray:
    """Per-flag bit alternating across both `inner` connections.

    Within each cell spanned by the two connections this fixes one of
    the two possible circular directions; cells are even alternating
    cycles, so the BFS never clashes.
    """
    n = system.flag_count
    ref = np.full(n, -1, dtype=np.int8)
    conns = system.connections
    for start in range(n):
        if ref[start] >= 0:
            continue
        ref[start] = 0
        queue = deque([start])
        while queue:
            f = queue.popleft()
            rf = int(ref[f])
            for j in inner:
                g = int(conns[j][f])
                if ref[g] < 0:
                    ref[g] = rf ^ 1
                    queue.append(g)
                else:
                    assert ref[g] == rf ^ 1, "cell walk failed to alternate"
    return ref


def direct_pso(system: FlagSystem, kind: str) -> ArrowAssignment | None:
    """Constraint-propagation oracle for the four rank-2 arrow properties.

    Each relevant cell is a closed walk alternating its two inner
    connections, so it carries exactly two circular directions; a
    reference direction is fixed per cell and every crossing of the
    remaining connection relates the direction bits of the two cells it
    joins.  The relations feed a parity union-find over cells.
    """
    if system.rank != 2:
        raise RankNotTwo(system.rank, "direct_pso")
    if kind not in PSO_KINDS:
        raise BadParameters(f"unknown pseudo-orientation kind {kind!r}")
    dim, inner, crossing, flip = PSO_KINDS[kind]
    labels, count = cell_labels(system, omit=dim)
    n = system.flag_count
    ref = _alternating_reference(system, inner)
    conns = system.connections

    uf = ParityDisjointSets(count)
    cross = conns[crossing]
    for f in range(n):
        g = int(cross[f])
        # The direction bits must satisfy bit[A] ^ bit[B] = flip ^ ref[f] ^ ref[g]
        # so that the induced flag coloring crosses r_crossing with parity flip.
        relation = flip ^ int(ref[f]) ^ int(ref[g])
        if not uf.union(int(labels[f]), int(labels[g]), relation):
            return None

    # Resolve direction bits, anchored at the smallest cell of each component.
    anchor_parity: dict[int, int] = {}
    bits = np.zeros(count, dtype=np.uint8)
    for c in range(count):
        root, parity = uf.relation(c)
        if root not in anchor_parity:
            anchor_parity[root] = parity
        bits[c] = parity ^ anchor_parity[root]
    return ArrowAssignment(kind=kind, cell_dimension=dim, arrows=bits)


def i_face_bipartite(system: FlagSystem, i: int) -> bool:
    """Two-colorability of dimension-i cells under r_i adjacency.

    This is the plain graph-bipartiteness oracle: cells are nodes, and
    two cells are adjacent when some flag of one is r_i-connected to a
    flag of the other.  A cell adjacent to itself is an immediate no.
    """
    if not 0 <= i <= system.rank:
        raise BadParameters(f"index {i} out of range 0..{system.rank}")
    labels, count = cell_labels(system, omit=i)
    adj: list[set[int]] = [set() for _ in range(count)]
    conn = system.connections[i]
    for f in range(system.flag_count):
        a, b = int(labels[f]), int(labels[conn[f]])
        if a == b:
            return False
        adj[a].add(b)
        adj[b].add(a)
    side = [-1] * count
    for start in range(count):
        if side[start] >= 0:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            c = queue.popleft()
            for d in adj[c]:
                if side[d] < 0:
                    side[d] = side[c] ^ 1
                    queue.append(d)
                elif side[d] == side[c]:
                    return False
    return True
