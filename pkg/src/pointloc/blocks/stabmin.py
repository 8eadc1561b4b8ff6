"""Stabbing-min over a dynamic set of closed 1-d intervals.

query(y) returns the minimum-key interval containing y.  Core is a segment
tree over the frozen endpoint universe with a lazy min-heap per node;
intervals whose endpoints are outside the universe wait in a small buffer
that is scanned linearly and folded in on periodic rebuilds.  Deletion is
logical (tombstones) and triggers compaction once the dead outweigh the
living.
"""

from __future__ import annotations

import heapq
from bisect import bisect_left
from typing import Optional


class StabbingMinSet:
    def __init__(self):
        self._values = []        # sorted distinct endpoint values (universe)
        self._heaps = {}         # segment-tree node index -> heap of entries
        self._size = 1           # implicit tree over `_size` leaf slots
        self._entries = {}       # uid -> (lo, hi, key, payload, alive)
        self._buffer = []        # uids pending universe growth
        self._next_uid = 0
        self._alive = 0
        self._dead = 0

    def __len__(self) -> int:
        return self._alive

    # -- updates -------------------------------------------------------

    def insert(self, lo, hi, key, payload=None) -> int:
        if hi < lo:
            raise ValueError("empty interval")
        uid = self._next_uid
        self._next_uid += 1
        self._entries[uid] = [lo, hi, key, payload, True]
        self._alive += 1
        if self._in_universe(lo) and self._in_universe(hi):
            self._tree_insert(uid)
        else:
            self._buffer.append(uid)
            if len(self._buffer) > max(16, len(self._values) // 2):
                self._rebuild()
        return uid

    def delete(self, uid) -> None:
        e = self._entries[uid]
        if not e[4]:
            return
        e[4] = False
        self._alive -= 1
        self._dead += 1
        if self._dead > self._alive + 16:
            self._rebuild()

    # -- queries -------------------------------------------------------

    def query(self, y) -> Optional[tuple]:
        """((lo, hi), key, payload) of the min-key interval containing y.

        y may compare equal to several distinct universe values (geometric
        keys can tie at a query); every matching leaf is walked."""
        best = None
        seen = set()
        for pos in self._leaf_positions(y):
            node = pos + self._size
            while node >= 1 and node not in seen:
                seen.add(node)
                h = self._heaps.get(node)
                if h:
                    while h and not self._entries[h[0][1]][4]:
                        heapq.heappop(h)
                    if h and (best is None or h[0] < best):
                        best = h[0]
                node >>= 1
        for uid in self._buffer:
            lo, hi, key, payload, alive = self._entries[uid]
            if alive and lo <= y <= hi:
                cand = (key, uid)
                if best is None or cand < best:
                    best = cand
        if best is None:
            return None
        lo, hi, key, payload, _ = self._entries[best[1]]
        return (lo, hi), key, payload

    # -- internals -----------------------------------------------------

    def _in_universe(self, v) -> bool:
        i = bisect_left(self._values, v)
        return i < len(self._values) and self._values[i] == v

    def _leaf_positions(self, y) -> list:
        """Leaf slots matching y: 2i+1 on each equal value, 2i in a gap."""
        if not self._values:
            return []
        vals = self._values
        i = bisect_left(vals, y)
        out = []
        j = i
        while j < len(vals) and vals[j] == y:
            out.append(2 * j + 1)
            j += 1
        if out:
            return out
        if i == 0 or i == len(vals):
            return []  # outside the universe; buffered entries cover it
        return [2 * i]

    def _tree_insert(self, uid) -> None:
        lo, hi, key, payload, _ = self._entries[uid]
        il = bisect_left(self._values, lo)
        ih = bisect_left(self._values, hi)
        l = 2 * il + 1 + self._size
        r = 2 * ih + 2 + self._size  # half-open end
        entry = (key, uid)
        while l < r:
            if l & 1:
                heapq.heappush(self._heaps.setdefault(l, []), entry)
                l += 1
            if r & 1:
                r -= 1
                heapq.heappush(self._heaps.setdefault(r, []), entry)
            l >>= 1
            r >>= 1

    def _rebuild(self) -> None:
        vals = set()
        live = []
        for uid, e in self._entries.items():
            if e[4]:
                live.append(uid)
                vals.add(e[0])
                vals.add(e[1])
        self._values = sorted(vals)
        nslots = 2 * len(self._values) + 1
        self._size = 1
        while self._size < max(nslots, 1):
            self._size *= 2
        self._heaps = {}
        self._buffer = []
        dead = [uid for uid, e in self._entries.items() if not e[4]]
        for uid in dead:
            del self._entries[uid]
        self._dead = 0
        for uid in live:
            self._tree_insert(uid)
