"""Disjoint-set union over hashable ids (union by rank, path halving)."""

from __future__ import annotations


class DisjointSet:
    def __init__(self):
        self._parent = {}
        self._rank = {}

    def add(self, x) -> None:
        if x not in self._parent:
            self._parent[x] = x
            self._rank[x] = 0

    def __contains__(self, x) -> bool:
        return x in self._parent

    def find(self, x):
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        """Merge the sets of a and b; returns the surviving root."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self._rank[ra] < self._rank[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        if self._rank[ra] == self._rank[rb]:
            self._rank[ra] += 1
        return ra

    def same(self, a, b) -> bool:
        return self.find(a) == self.find(b)
