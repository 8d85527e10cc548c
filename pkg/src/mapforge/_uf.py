"""Union-find machinery shared by orbit computation and parity propagation."""

from __future__ import annotations


class DisjointSets:
    """Union-find with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


class ParityDisjointSets:
    """Union-find tracking a Z2 offset of every element relative to its root.

    union(a, b, parity) asserts offset(a) ^ offset(b) == parity and reports
    False when that contradicts the relations recorded so far.
    """

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.offset = [0] * n
        self.size = [1] * n

    def relation(self, x: int) -> tuple[int, int]:
        """Return (root, parity of x relative to root), compressing the path."""
        parent, offset = self.parent, self.offset
        path = []
        root = x
        while parent[root] != root:
            path.append(root)
            root = parent[root]
        acc = 0
        for node in reversed(path):
            acc ^= offset[node]
            parent[node] = root
            offset[node] = acc
        return root, acc

    def union(self, a: int, b: int, parity: int) -> bool:
        ra, pa = self.relation(a)
        rb, pb = self.relation(b)
        if ra == rb:
            return (pa ^ pb) == parity
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
            pa, pb = pb, pa
        self.parent[rb] = ra
        self.offset[rb] = pa ^ pb ^ parity
        self.size[ra] += self.size[rb]
        return True
