"""Incremental stabbing-lowest index over vertical-sided trapezoids.

Base: a weight-balanced interval tree of fan-out f over the wall keys.  A
trapezoid lives in at most three base nodes: a left-anchored piece at the
child holding its left wall, a right-anchored piece at the child holding
its right wall, and a middle piece at their common home node.

Left-anchored pieces at a node all cross the node region's right boundary,
so their sides are totally ordered (no two upper or lower sides cross); a
mutable priority search tree finds the side immediately above a query, and
a binary segment tree over the side order holds, per node, the key-sorted
interval list and its staircase sublist (keys ascending, dominance values
descending) searched by predecessor-of-q.x.  Right-anchored pieces reuse
the same code through mirrored keys.  Middle pieces go into a low segment
tree over the home node's child slots, each slot node carrying a
side-ordered list and a stabbing-min set keyed by the top side.

All vertical comparisons between stored sides use the left-biased
non-crossing order (`cmp_seg_vertical`), which does not depend on where a
region wall currently sits, so base-tree growth never invalidates stored
order.  Rebalancing displaces the affected trapezoids (a per-trapezoid
generation stamp invalidates their old slots lazily) and re-places them.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .blocks.cascade import CASCADING, PLAIN, CascadeChain
from .blocks.stabmin import StabbingMinSet
from .blocks.wbb import WbbNode, WeightBalancedBase
from .geom import (
    Point, Segment, Trapezoid, cmp_heights, cmp_seg_vertical, cmp_stab,
    point_vs_segment,
)


class SideKey:
    """A side under the left-biased vertical order; collinear overlapping
    sides compare equal.  Also comparable against a QueryLevel (the height
    of a query point), resolved exactly at the query abscissa."""

    __slots__ = ("seg",)

    def __init__(self, s: Segment):
        self.seg = s

    def __lt__(self, other):
        if isinstance(other, QueryLevel):
            return point_vs_segment(self.seg, other.q) > 0  # side below q
        return cmp_seg_vertical(self.seg, other.seg) < 0

    def __le__(self, other):
        if isinstance(other, QueryLevel):
            return point_vs_segment(self.seg, other.q) >= 0
        return cmp_seg_vertical(self.seg, other.seg) <= 0

    def __eq__(self, other):
        if isinstance(other, QueryLevel):
            return point_vs_segment(self.seg, other.q) == 0
        return cmp_seg_vertical(self.seg, other.seg) == 0

    __hash__ = None

    def __repr__(self):
        return f"SideKey({self.seg})"


class QueryLevel:
    """The vertical level of a query point, comparable against SideKeys of
    sides spanning the query abscissa."""

    __slots__ = ("q",)

    def __init__(self, q: Point):
        self.q = q

    def __lt__(self, other):
        return point_vs_segment(other.seg, self.q) < 0  # q below the side

    def __le__(self, other):
        return point_vs_segment(other.seg, self.q) <= 0

    def __eq__(self, other):
        return point_vs_segment(other.seg, self.q) == 0

    __hash__ = None


def _mirror(p: Point) -> Point:
    return Point(-p.x, -p.y)


# ---------------------------------------------------------------------------
# mutable PST over sides
# ---------------------------------------------------------------------------

class _TreapNode:
    __slots__ = ("side", "span_key", "prio", "lo", "hi", "reach", "top")

    def __init__(self, side, span_key, prio):
        self.side = side
        self.span_key = span_key
        self.prio = prio
        self.lo = None
        self.hi = None
        self.reach = span_key
        self.top = side


class MutablePst:
    """Sides in vertical order, heap-augmented by the minimal span key, so a
    ray shoot prunes subtrees whose every piece starts right of the query."""

    def __init__(self):
        self.root = None
        self.size = 0
        self._counter = 0

    def insert(self, side: Segment, span_key: Point, uid: int) -> None:
        prio = ((uid * 2654435761) ^ (self._counter * 40503)) & 0xFFFFFFFF
        self._counter += 1
        node = _TreapNode(side, span_key, prio)
        self.root = self._insert(self.root, node)
        self.size += 1

    def _insert(self, root, node):
        if root is None:
            return node
        if node.prio > root.prio:
            node.lo, node.hi = self._split(root, node.side)
            self._pull(node)
            return node
        if cmp_seg_vertical(node.side, root.side) < 0:
            root.lo = self._insert(root.lo, node)
        else:
            root.hi = self._insert(root.hi, node)
        self._pull(root)
        return root

    def _split(self, node, side):
        if node is None:
            return None, None
        if cmp_seg_vertical(node.side, side) < 0:
            lo, hi = self._split(node.hi, side)
            node.hi = lo
            self._pull(node)
            return node, hi
        lo, hi = self._split(node.lo, side)
        node.lo = hi
        self._pull(node)
        return lo, node

    def _pull(self, node):
        reach = node.span_key
        top = node.side
        for c in (node.lo, node.hi):
            if c is not None:
                if c.reach < reach:
                    reach = c.reach
                if cmp_seg_vertical(c.top, top) > 0:
                    top = c.top
        node.reach = reach
        node.top = top

    def shoot(self, q: Point, qspan: Point) -> Optional[Segment]:
        """Lowest side weakly above q among sides with span_key <= qspan."""
        return self._shoot(self.root, q, qspan)

    def _shoot(self, node, q, qspan):
        if node is None or node.reach > qspan:
            return None
        t = node.top
        if not t.is_vertical and t.a.x <= q.x <= t.b.x \
                and point_vs_segment(t, q) > 0:
            return None  # even the topmost side runs strictly below q
        r = self._shoot(node.lo, q, qspan)
        if r is not None:
            return r
        if node.span_key <= qspan and point_vs_segment(node.side, q) <= 0:
            return node.side
        return self._shoot(node.hi, q, qspan)


# ---------------------------------------------------------------------------
# per-node wall structure: staircase segment tree over the side order
# ---------------------------------------------------------------------------

class _Entry:
    """One trapezoid's wall interval, keyed by its far wall."""

    __slots__ = ("trap", "key", "gen")

    def __init__(self, trap, key, gen):
        self.trap = trap
        self.key = key
        self.gen = gen

    def valid(self) -> bool:
        return self.trap._gen == self.gen


class _WallNode:
    __slots__ = ("lo", "hi", "split", "min_c", "max_c", "stair", "leaf_class")

    def __init__(self):
        self.lo = None
        self.hi = None
        self.split = None       # max side class of the lo subtree
        self.min_c = None
        self.max_c = None
        self.leaf_class = None  # set on leaves
        self.stair = []         # staircase (keys asc, dominance desc)


class WallTree:
    """Binary segment tree over the side order at one base node's wall."""

    def __init__(self, index):
        self.index = index
        self.root = None
        self.classes = 0
        self.generation = 0
        self._chain_memo: Dict[int, tuple] = {}

    # -- leaf location ----------------------------------------------------

    def _leaf_for(self, side: Segment, create: bool):
        if self.root is None:
            if not create:
                return None
            leaf = _WallNode()
            leaf.leaf_class = SideKey(side)
            leaf.min_c = leaf.max_c = leaf.leaf_class
            self.root = leaf
            self.classes = 1
            return leaf
        node = self.root
        path = []
        while node.leaf_class is None:
            path.append(node)
            node = node.lo if cmp_seg_vertical(side, node.split.seg) <= 0 \
                else node.hi
        c = cmp_seg_vertical(side, node.leaf_class.seg)
        if c == 0:
            return node
        if not create:
            return node  # nearest leaf; good enough for a descent anchor
        # grow: the old leaf object becomes internal and keeps its stored
        # entries; the repair pass below pushes down any whose interval
        # does not contain the new class
        a = _WallNode()
        a.leaf_class = node.leaf_class
        a.min_c = a.max_c = a.leaf_class
        b = _WallNode()
        b.leaf_class = SideKey(side)
        b.min_c = b.max_c = b.leaf_class
        node.leaf_class = None
        if c < 0:
            node.lo, node.hi = b, a
            node.split = b.leaf_class
        else:
            node.lo, node.hi = a, b
            node.split = a.leaf_class
        node.min_c = node.lo.min_c
        node.max_c = node.hi.max_c
        for p in reversed(path):
            p.min_c = p.lo.min_c
            p.max_c = p.hi.max_c
        self.classes += 1
        # Push down any interval stored on the new leaf's ancestors that no
        # longer spans the widened leaf set (its boundary class was exactly
        # the split leaf): re-cover it below, excluding the new class.
        for p in path + [node]:
            bad = None
            for e in p.stair:
                if not e.valid():
                    continue
                blo = SideKey(e.trap.bottom)
                bhi = SideKey(e.trap.top)
                if bhi < blo:
                    blo, bhi = bhi, blo
                if blo <= p.min_c and p.max_c <= bhi:
                    continue
                if bad is None:
                    bad = []
                bad.append((e, blo, bhi))
            if bad:
                for e, blo, bhi in bad:
                    e.alive = False
                    nodes: List[_WallNode] = []
                    self._cover(p, blo, bhi, nodes)
                    for w in nodes:
                        self._stair_insert(w, e.entry)
        return b

    # -- interval insertion -------------------------------------------------

    def insert_interval(self, trap: Trapezoid, key) -> None:
        self.generation += 1
        self._chain_memo.clear()
        b = self._leaf_for(trap.bottom, True).leaf_class
        t = self._leaf_for(trap.top, True).leaf_class
        if t < b:
            b, t = t, b
        nodes: List[_WallNode] = []
        self._cover(self.root, b, t, nodes)
        entry = _Entry(trap, key, trap._gen)
        for w in nodes:
            self._stair_insert(w, entry)

    def _cover(self, node, b, t, out):
        if node is None:
            return
        if node.max_c < b or t < node.min_c:
            return
        if b <= node.min_c and node.max_c <= t:
            out.append(node)
            return
        if node.leaf_class is not None:
            return
        self._cover(node.lo, b, t, out)
        self._cover(node.hi, b, t, out)

    def _stair_insert(self, w: _WallNode, entry: _Entry) -> None:
        stair = w.stair
        key = entry.key
        i = self._stair_bisect(stair, key)
        j = i
        while j >= 0 and not stair[j].valid():
            j -= 1
        if j >= 0:
            c = self._dom_cmp(entry, stair[j])
            if c >= 0:
                return  # dominated: an at-least-as-good earlier entry exists
            if stair[j].key == key:
                stair[j].alive = False
                self.index.dominated_deletions += 1
        mine = _StairSlot(entry)
        stair.insert(i + 1, mine)
        k = i + 2
        while k < len(stair):
            e = stair[k]
            if not e.valid():
                k += 1
                continue
            if self._dom_cmp(e, entry) >= 0:
                e.alive = False
                self.index.dominated_deletions += 1
                k += 1
            else:
                break
        self._compact(w)

    @staticmethod
    def _dom_cmp(e1, e2) -> int:
        """Dominance order: top side order, then the stabbing tie rule."""
        c = cmp_seg_vertical(e1.trap.top, e2.trap.top)
        if c:
            return c
        t1, t2 = e1.trap, e2.trap
        if t1.owner_edge != t2.owner_edge:
            return -1 if t1.owner_edge < t2.owner_edge else 1
        if t1.uid != t2.uid:
            return -1 if t1.uid < t2.uid else 1
        return 0

    @staticmethod
    def _stair_bisect(stair, key) -> int:
        lo, hi = 0, len(stair)
        while lo < hi:
            mid = (lo + hi) // 2
            if stair[mid].key <= key:
                lo = mid + 1
            else:
                hi = mid
        return lo - 1

    def _compact(self, w: _WallNode) -> None:
        if len(w.stair) > 8:
            dead = sum(1 for e in w.stair if not e.valid())
            if dead * 2 > len(w.stair):
                w.stair = [e for e in w.stair if e.valid()]

    # -- queries --------------------------------------------------------------

    def level_path(self, q: Point) -> Tuple[List[_WallNode], bool]:
        """Nodes visited descending by the query point's vertical level;
        exact ties against a split class explore both children.  Returns
        (nodes, had_ties)."""
        out: List[_WallNode] = []
        ties = False
        frontier = [self.root] if self.root is not None else []
        while frontier:
            node = frontier.pop()
            out.append(node)
            if node.leaf_class is not None:
                continue
            c = point_vs_segment(node.split.seg, q)
            if c > 0:      # q strictly above the split class
                frontier.append(node.hi)
            elif c < 0:
                frontier.append(node.lo)
            else:
                ties = True
                frontier.append(node.lo)
                frontier.append(node.hi)
        return out, ties

    def query(self, q: Point, qkey, strategy: str,
              epoch: int) -> List[Trapezoid]:
        """Per node on the level path, the staircase predecessor of qkey;
        every returned trapezoid contains q."""
        path, ties = self.level_path(q)
        if not path:
            return []
        out = []
        if strategy == CASCADING and not ties:
            leaf = path[-1]
            memo = self._chain_memo.get(id(leaf))
            stamp = (self.generation, epoch)
            if memo is None or memo[0] != stamp:
                lists = [[e for e in w.stair if e.valid()] for w in path]
                chain = CascadeChain(lists, strategy=CASCADING, le=_slot_le)
                if len(self._chain_memo) > 64:
                    self._chain_memo.clear()
                memo = (stamp, chain, lists)
                self._chain_memo[id(leaf)] = memo
            _stamp, chain, lists = memo
            for lst, idx in zip(lists, chain.search(qkey)):
                cand = self._tie_refine(lst, idx, q.x)
                if cand is not None:
                    out.append(cand)
            return out
        for w in path:
            stair = w.stair
            i = self._stair_bisect(stair, qkey)
            while i >= 0 and not stair[i].valid():
                i -= 1
            cand = self._tie_refine(stair, i, q.x)
            if cand is not None:
                out.append(cand)
        return out

    @staticmethod
    def _tie_refine(stair, i, qx):
        """Entry at i, refined among valid left neighbors whose tops pass
        through the same hit point at qx (the stabbing tie rule decides)."""
        if i < 0:
            return None
        best = stair[i].trap
        j = i - 1
        while j >= 0:
            e = stair[j]
            if e.valid():
                t = e.trap
                if cmp_heights(t.top, best.top, qx) != 0:
                    break
                if (t.owner_edge, t.uid) < (best.owner_edge, best.uid):
                    best = t
            j -= 1
        return best

    def check_staircases(self) -> None:
        def walk(node):
            if node is None:
                return
            live = [e for e in node.stair if e.valid()]
            for e1, e2 in zip(live, live[1:]):
                assert (e1.key, e1.trap.uid) < (e2.key, e2.trap.uid), \
                    "staircase keys not increasing"
                assert self._dom_cmp(e2, e1) < 0, \
                    "staircase dominance not decreasing"
            walk(node.lo)
            walk(node.hi)
        walk(self.root)


class _StairSlot:
    """One node's staircase slot for an entry; aliveness is per slot (a
    dominance deletion at one node must not affect the entry elsewhere)."""

    __slots__ = ("entry", "alive")

    def __init__(self, entry):
        self.entry = entry
        self.alive = True

    @property
    def key(self):
        return self.entry.key

    @property
    def trap(self):
        return self.entry.trap

    def valid(self):
        return self.alive and self.entry.valid()


def _slot_le(a, b) -> bool:
    bk = b.key if isinstance(b, _StairSlot) else b
    return a.key <= bk


# ---------------------------------------------------------------------------
# per-base-node data
# ---------------------------------------------------------------------------

class _SideData:
    """Left-anchored (or, mirrored, right-anchored) pieces at a base node."""

    def __init__(self, index, mirrored: bool):
        self.index = index
        self.mirrored = mirrored
        self.pst = MutablePst()
        self.wall = WallTree(index)
        self.members: List[tuple] = []  # (trap, placement generation)
        self.count = 0

    def _key(self, p: Point) -> Point:
        return _mirror(p) if self.mirrored else p

    def add(self, trap: Trapezoid) -> None:
        self.count += 1
        self.members.append((trap, trap._gen))
        if len(self.members) > 16 and \
                sum(1 for t, g in self.members if t._gen == g) * 2 < len(self.members):
            self.members = [(t, g) for t, g in self.members if t._gen == g]
        key = self._key(trap.xr) if self.mirrored else trap.xl
        for side in (trap.top, trap.bottom):
            self.pst.insert(side, key, trap.uid)
        self.wall.insert_interval(trap, key)

    def valid_members(self) -> List[Trapezoid]:
        return [t for t, g in self.members if t._gen == g]

    def query(self, q: Point, strategy: str, epoch: int) -> List[Trapezoid]:
        qspan = self._key(q)
        e = self.pst.shoot(q, qspan)
        if e is None:
            return []
        return self.wall.query(e, qspan, q.x, strategy, epoch)

    def slot_count(self) -> int:
        total = 0

        def walk(w):
            nonlocal total
            if w is None:
                return
            total += len(w.stair)
            walk(w.lo)
            walk(w.hi)
        walk(self.wall.root)
        return total + self.pst.size


class _MidNode:
    __slots__ = ("lo", "hi", "lo_key", "hi_key", "child", "sides", "stab")

    def __init__(self, lo_key, hi_key, child=None):
        self.lo = None
        self.hi = None
        self.lo_key = lo_key   # inclusive region start
        self.hi_key = hi_key   # exclusive region end (None = +inf)
        self.child = child     # base child this (once-)leaf slot represents
        self.sides = []        # (SideKey, trap, gen) in side order
        self.stab = None       # StabbingMinSet over the side order


def _le_bound(a, b) -> bool:
    """a <= b where None means +infinity."""
    return b is None if a is None else (b is None or a <= b)


class _MidData:
    """Middle pieces at a home node: a low tree over its child slots."""

    def __init__(self, index, children: List[WbbNode]):
        self.index = index
        self.leaf_of: Dict[int, _MidNode] = {}
        self.root = self._build(children, 0, len(children))
        self._index_leaves(self.root)

    def _build(self, children, lo, hi):
        if hi - lo == 1:
            c = children[lo]
            nxt = children[lo + 1].min_key if lo + 1 < len(children) else None
            return _MidNode(c.min_key, nxt, child=c)
        mid = (lo + hi) // 2
        node = _MidNode(None, None)
        node.lo = self._build(children, lo, mid)
        node.hi = self._build(children, mid, hi)
        node.lo_key = node.lo.lo_key
        node.hi_key = node.hi.hi_key
        return node

    def _index_leaves(self, node):
        if node.child is not None:
            self.leaf_of[id(node.child)] = node
            return
        self._index_leaves(node.lo)
        self._index_leaves(node.hi)

    def split_slot(self, old_child, n1, n2) -> None:
        """A child slot becomes two slots (child split, or a fresh leaf key
        appearing right after an existing one); stored entries stay put."""
        slot = self.leaf_of.pop(id(old_child), None)
        if slot is None:
            return
        a = _MidNode(n1.min_key, n2.min_key, child=n1)
        b = _MidNode(n2.min_key, slot.hi_key, child=n2)
        slot.child = None
        slot.lo, slot.hi = a, b
        self.leaf_of[id(n1)] = a
        self.leaf_of[id(n2)] = b

    def prepend_slot(self, new_child) -> None:
        slot = _MidNode(new_child.min_key, self.root.lo_key, child=new_child)
        node = _MidNode(slot.lo_key, self.root.hi_key)
        node.lo = slot
        node.hi = self.root
        self.root = node
        self.leaf_of[id(new_child)] = slot

    def insert(self, trap: Trapezoid, lo_child, hi_child) -> None:
        lo_key = lo_child.min_key
        hi_bound = self.leaf_of[id(hi_child)].hi_key
        nodes: List[_MidNode] = []
        self._cover(self.root, lo_key, hi_bound, nodes)
        for w in nodes:
            self._node_insert(w, trap)

    def insert_at_child(self, trap: Trapezoid, child) -> None:
        """Pin a piece directly onto one child's slot (gap extension)."""
        self._node_insert(self.leaf_of[id(child)], trap)

    def _cover(self, node, lo_key, hi_bound, out):
        if node is None:
            return
        # skip if disjoint from [lo_key, hi_bound)
        if node.hi_key is not None and node.hi_key <= lo_key:
            return
        if hi_bound is not None and not node.lo_key < hi_bound:
            return
        if lo_key <= node.lo_key and _le_bound(node.hi_key, hi_bound):
            out.append(node)
            return
        if node.child is not None:
            return
        self._cover(node.lo, lo_key, hi_bound, out)
        self._cover(node.hi, lo_key, hi_bound, out)

    def _node_insert(self, w: _MidNode, trap: Trapezoid) -> None:
        if w.stab is None:
            w.stab = StabbingMinSet()
        gen = trap._gen
        for side in (trap.top, trap.bottom):
            lo, hi = 0, len(w.sides)
            while lo < hi:
                mid = (lo + hi) // 2
                if cmp_seg_vertical(w.sides[mid][0].seg, side) <= 0:
                    lo = mid + 1
                else:
                    hi = mid
            w.sides.insert(lo, (SideKey(side), trap, gen))
        bkey = SideKey(trap.bottom)
        tkey = SideKey(trap.top)
        uid = w.stab.insert(bkey, tkey, (tkey, trap.owner_edge, trap.uid),
                            payload=(trap, gen))
        trap._stab_refs.append((w.stab, uid))

    def query(self, q: Point) -> List[Trapezoid]:
        out = []
        node = self.root
        while node is not None:
            self._node_query(node, q, out)
            if node.child is not None:
                break
            node = node.hi if (node.hi is not None
                               and node.hi.lo_key <= q) else node.lo
        return out

    @staticmethod
    def _node_query(node: _MidNode, q: Point, out) -> None:
        sides = node.sides
        if not sides or node.stab is None:
            return
        lo, hi = 0, len(sides)
        while lo < hi:
            mid = (lo + hi) // 2
            if point_vs_segment(sides[mid][0].seg, q) > 0:
                lo = mid + 1  # side strictly below q
            else:
                hi = mid
        i = lo
        while i < len(sides):
            sk, trap, gen = sides[i]
            if trap._gen == gen:
                got = node.stab.query(sk)
                if got is not None:
                    _iv, _key, payload = got
                    t2, g2 = payload
                    if t2._gen == g2:
                        out.append(t2)
                return
            i += 1


class _BaseData:
    __slots__ = ("left", "right", "mid")

    def __init__(self, index, node: WbbNode):
        self.left = _SideData(index, mirrored=False)
        self.right = _SideData(index, mirrored=True)
        self.mid = None
        if node.children:
            self.mid = _MidData(index, node.children)


# ---------------------------------------------------------------------------
# the index
# ---------------------------------------------------------------------------

class StabLowestIndex:
    """Insert trapezoids (no two tops or bottoms properly crossing), answer
    lowest-stabbed queries; ties resolved by owner edge then cell id."""

    def __init__(self, fanout: int = 8, strategy: str = PLAIN):
        self.f = fanout
        self.strategy = strategy
        self.base = WeightBalancedBase(fanout, split_hook=self._split_hook,
                                       insert_hook=self._insert_hook)
        self.traps: List[Trapezoid] = []
        self.dominated_deletions = 0
        self.rehomed = 0
        self.epoch = 0

    def __len__(self) -> int:
        return len(self.traps)

    # -- updates --------------------------------------------------------------

    def insert(self, t: Trapezoid) -> None:
        if t.top.is_vertical or t.bottom.is_vertical:
            raise ValueError("degenerate trapezoid with vertical sides")
        if not t.xl < t.xr:
            raise ValueError("empty wall span")
        if t.uid < 0:
            t.uid = len(self.traps)
        t._gen = 0
        t._stab_refs = []
        self.traps.append(t)
        self.base.insert(t.xl)
        self.base.insert(t.xr)
        self._place(t)

    def _place(self, t: Trapezoid) -> None:
        home = self.base.home_of(t.xl, t.xr)
        assert not home.is_leaf
        cl = home.child_for(t.xl)
        cr = home.child_for(t.xr)
        assert cl is not cr
        self._data(cl).left.add(t)
        self._data(cr).right.add(t)
        kids = home.children
        il = next(i for i, c in enumerate(kids) if c is cl)
        ir = next(i for i, c in enumerate(kids) if c is cr)
        if ir - il > 1:
            d = self._data(home)
            if d.mid is None:
                d.mid = _MidData(self, home.children)
            d.mid.insert(t, kids[il + 1], kids[ir - 1])
        t._nodes = (home, cl, cr)

    def _data(self, node: WbbNode) -> _BaseData:
        if node.data is None:
            node.data = _BaseData(self, node)
        return node.data

    # -- hooks ------------------------------------------------------------------

    def _insert_hook(self, parent: WbbNode, leaf: WbbNode, prev) -> None:
        """A new leaf key narrows its predecessor leaf's region: split the
        parent's slot and pin every left-anchored piece of the predecessor
        onto the new gap slot (they all extend past the new key)."""
        mid = parent.data.mid if parent.data is not None else None
        if prev is None:
            if mid is not None:
                mid.prepend_slot(leaf)
            return
        extend = prev.data.left.valid_members() if prev.data is not None else []
        if mid is None and not extend:
            return
        d = self._data(parent)
        if d.mid is None:
            d.mid = _MidData(self, parent.children)
        if id(leaf) not in d.mid.leaf_of:
            d.mid.split_slot(prev, prev, leaf)
        for t in extend:
            d.mid.insert_at_child(t, leaf)

    def _split_hook(self, old: WbbNode, n1: WbbNode, n2: WbbNode,
                    parent: WbbNode) -> None:
        self.epoch += 1
        if parent.data is not None and parent.data.mid is not None:
            parent.data.mid.split_slot(old, n1, n2)
        affected: Dict[int, Trapezoid] = {}
        self._collect(old, affected)
        for t in affected.values():
            t._gen += 1
            for stab, uid in t._stab_refs:
                stab.delete(uid)
            t._stab_refs = []
            self.rehomed += 1
        for t in affected.values():
            self._place(t)

    def _collect(self, node: WbbNode, out: Dict[int, Trapezoid]) -> None:
        """Every trapezoid with a live piece in this subtree.  Anchored
        pieces always exist at the wall children, so the side membership
        registries see every placed trapezoid."""
        d = node.data
        if d is not None:
            for sd in (d.left, d.right):
                for t in sd.valid_members():
                    out[t.uid] = t
        for c in node.children:
            self._collect(c, out)

    # -- queries ------------------------------------------------------------------

    def query_lowest(self, q: Point) -> Optional[Trapezoid]:
        if self.base.root is None:
            return None
        best = None
        for v in self.base.path_nodes(q):
            d = v.data
            if d is None:
                continue
            cands = d.left.query(q, self.strategy, self.epoch)
            cands += d.right.query(q, self.strategy, self.epoch)
            if d.mid is not None:
                cands += d.mid.query(q)
            for t in cands:
                if t is None or not t.contains(q):
                    continue
                if best is None or cmp_stab(t, best, q) < 0:
                    best = t
        return best

    # -- audits ------------------------------------------------------------------

    def check(self) -> None:
        self.base.check()

        def walk(v):
            if v.data is not None:
                v.data.left.wall.check_staircases()
                v.data.right.wall.check_staircases()
            for c in v.children:
                walk(c)
        if self.base.root is not None:
            walk(self.base.root)
        for t in self.traps:
            assert len(t._nodes) == 3

    def slot_count(self) -> int:
        total = 0

        def walk(v):
            nonlocal total
            if v.data is not None:
                total += v.data.left.slot_count()
                total += v.data.right.slot_count()
            for c in v.children:
                walk(c)
        if self.base.root is not None:
            walk(self.base.root)
        return total
