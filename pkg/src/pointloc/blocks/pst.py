"""Priority search tree for vertical ray shooting among segments that all
cross one vertical wall.

side="left":  segments share/start at the wall on their left endpoints and
              extend right; queries come from weakly right of the wall.
side="right": mirrored (the configuration used for left-anchored pieces,
              whose right ends sit on the wall).

The tree is static and built from a y-sorted sequence in linear time; the
query walks down pruning subtrees by their extreme opposite-endpoint reach
(the heap key) and by their topmost segment.
"""

from __future__ import annotations

from typing import Optional, Sequence

from ..geom import Point, Segment, ray_hit_weak, point_vs_segment


class _PNode:
    __slots__ = ("seg", "reach", "top", "lo", "hi")

    def __init__(self, seg, reach, top, lo, hi):
        self.seg = seg      # leaf segment, None for internal
        self.reach = reach  # extreme far-endpoint key in subtree
        self.top = top      # highest (last in y-order) segment of subtree
        self.lo = lo
        self.hi = hi


class PrioritySearchTree:
    __slots__ = ("side", "wall", "root", "size")

    def __init__(self, segs_sorted: Sequence[Segment], side: str = "left",
                 wall: Optional[Point] = None, check: bool = False):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.side = side
        self.wall = wall
        self.size = len(segs_sorted)
        if check:
            self._check_sorted(segs_sorted)
        self.root = self._build(list(segs_sorted), 0, self.size)

    def _check_sorted(self, segs) -> None:
        xs = {(s.a.x if self.side == "left" else s.b.x) for s in segs}
        if len(xs) > 1:
            raise ValueError("segments do not share a wall line")
        for s, t in zip(segs, segs[1:]):
            ya = s.a.y if self.side == "left" else s.b.y
            yb = t.a.y if self.side == "left" else t.b.y
            if ya > yb:
                raise ValueError("segments not sorted by y on the wall")

    def _build(self, segs, lo, hi):
        if lo >= hi:
            return None
        if hi - lo == 1:
            s = segs[lo]
            reach = s.b if self.side == "left" else s.a
            return _PNode(s, reach, s, None, None)
        mid = (lo + hi) // 2
        left = self._build(segs, lo, mid)
        right = self._build(segs, mid, hi)
        if self.side == "left":
            reach = max(left.reach, right.reach)
        else:
            reach = min(left.reach, right.reach)
        return _PNode(None, reach, right.top, left, right)

    def _covers(self, s: Segment, p: Point) -> bool:
        return s.a <= p <= s.b

    def ray_shoot(self, p: Point, weak: bool = False) -> Optional[Segment]:
        """Lowest stored segment hit by the upward ray from p; None if none.

        weak=True admits a hit at height p.y (p lying on the segment)."""
        if self.wall is not None:
            if self.side == "left" and p.x < self.wall.x:
                raise ValueError("query point strictly left of the wall")
            if self.side == "right" and p.x > self.wall.x:
                raise ValueError("query point strictly right of the wall")
        return self._shoot(self.root, p, weak)

    def _shoot(self, node, p, weak):
        if node is None:
            return None
        if self.side == "left":
            if node.reach < p:
                return None
        else:
            if node.reach > p:
                return None
        if node.seg is not None:
            s = node.seg
            if not self._covers(s, p):
                return None
            h = ray_hit_weak(s, p)
            if h is None:
                return None
            if not weak and h.y == p.y:
                return None
            return s
        # Prune a subtree whose topmost segment runs below the query point.
        t = node.top
        if self._covers(t, p) and not t.is_vertical:
            side = point_vs_segment(t, p)
            if side > 0 or (side == 0 and not weak):
                return None
        r = self._shoot(node.lo, p, weak)
        if r is not None:
            return r
        return self._shoot(node.hi, p, weak)

    @property
    def root_reach(self):
        return None if self.root is None else self.root.reach


def pst_build_sorted(segs_sorted: Sequence[Segment], side: str = "left",
                     wall: Optional[Point] = None,
                     check: bool = False) -> PrioritySearchTree:
    return PrioritySearchTree(segs_sorted, side=side, wall=wall, check=check)


def pst_ray_shoot(tree: PrioritySearchTree, p: Point,
                  weak: bool = False) -> Optional[Segment]:
    return tree.ray_shoot(p, weak=weak)
