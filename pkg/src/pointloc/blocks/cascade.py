"""Repeated predecessor search along a chain of sorted lists.

Two interchangeable strategies:

* PLAIN     - an independent binary search per list;
* CASCADING - static fractional cascading: each list is augmented with every
              other element of the next augmented list, so after one binary
              search at the head every further list costs O(1) bridge steps.

Both return identical predecessor indices for identical inputs; structures
that are static between rebuilds use CASCADING, everything else PLAIN.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Sequence

PLAIN = "plain"
CASCADING = "cascading"


def _default_le(a, b) -> bool:
    return a <= b


class CascadeChain:
    """Chain over `lists[0] .. lists[k-1]` (root first).

    `le(a, b)` is the total order shared by all elements and queries along
    one chain; it defaults to `<=`.
    """

    def __init__(self, lists: Sequence[Sequence], strategy: str = PLAIN,
                 le: Callable = _default_le):
        if strategy not in (PLAIN, CASCADING):
            raise ValueError(f"unknown strategy {strategy!r}")
        self.lists = [list(l) for l in lists]
        self.strategy = strategy
        self.le = le
        self._aug: Optional[List[list]] = None
        if strategy == CASCADING:
            self._build()

    def _build(self) -> None:
        le = self.le
        aug: List[list] = [None] * len(self.lists)
        # Each augmented entry is (elem, own_idx, down_idx):
        #   own_idx : index of the last own-list element <= elem (-1 if none)
        #   down_idx: index in aug[i+1] of this sampled element (-1 for own)
        for i in range(len(self.lists) - 1, -1, -1):
            own = self.lists[i]
            sampled = []
            if i + 1 < len(self.lists) and aug[i + 1]:
                nxt = aug[i + 1]
                sampled = [(nxt[j][0], j) for j in range(1, len(nxt), 2)]
            merged = []
            a = b = 0
            own_idx = -1
            while a < len(own) or b < len(sampled):
                take_own = b >= len(sampled) or (
                    a < len(own) and le(own[a], sampled[b][0]))
                if take_own:
                    own_idx = a
                    merged.append((own[a], own_idx, -1))
                    a += 1
                else:
                    merged.append((sampled[b][0], own_idx, sampled[b][1]))
                    b += 1
            # fix down pointers: each entry gets the aug[i+1] index of the
            # greatest sampled element at or before it
            down = -1
            fixed = []
            for elem, oi, di in merged:
                if di >= 0:
                    down = di
                fixed.append((elem, oi, down))
            aug[i] = fixed
        self._aug = aug

    # -- searching -----------------------------------------------------

    def search(self, key) -> List[int]:
        """Index of the predecessor (last element <= key) in every list,
        -1 where a list has none."""
        if self.strategy == PLAIN or self._aug is None:
            return [self._bisect(l, key) for l in self.lists]
        le = self.le
        out = []
        aug = self._aug
        if not aug:
            return out
        pos = self._bisect_entries(aug[0], key)
        for i, lst in enumerate(self.lists):
            cur = aug[i]
            out.append(cur[pos][1] if pos >= 0 else -1)
            if i + 1 < len(aug):
                nxt = aug[i + 1]
                j = cur[pos][2] if pos >= 0 else -1
                while j + 1 < len(nxt) and le(nxt[j + 1][0], key):
                    j += 1
                pos = j
        return out

    def values(self, key) -> List[Optional[object]]:
        return [self.lists[i][j] if j >= 0 else None
                for i, j in enumerate(self.search(key))]

    def _bisect(self, lst, key) -> int:
        le = self.le
        lo, hi = 0, len(lst)
        while lo < hi:
            mid = (lo + hi) // 2
            if le(lst[mid], key):
                lo = mid + 1
            else:
                hi = mid
        return lo - 1

    def _bisect_entries(self, entries, key) -> int:
        le = self.le
        lo, hi = 0, len(entries)
        while lo < hi:
            mid = (lo + hi) // 2
            if le(entries[mid][0], key):
                lo = mid + 1
            else:
                hi = mid
        return lo - 1
