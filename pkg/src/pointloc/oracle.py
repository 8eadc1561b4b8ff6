"""Brute-force reference implementations.

Everything here recomputes from flat edge/vertex lists with no shared state
with the production structures (only the exact predicates in `geom` are
shared).  Face identity is resolved by upward-ray crossing parity against
every boundary walk; a face is named by the set of walks that contain it,
which is invariant within a face and differs across faces.

The int64 kernel backends accelerate the per-query scans whenever all
coordinates (doubled, to absorb half-integer queries) fit the kernel
coordinate limit; otherwise a pure exact path runs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .geom import (
    Point, Segment, Trapezoid, cmp_stab, orientation, point_on_segment,
    ray_hit, ray_hit_weak, segments_properly_cross,
)

OUTER_TOKEN = ("outer",)
BOUNDARY_TOKEN = ("boundary",)


def _angle_half(dx, dy) -> int:
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def _ccw_before(d1, d2) -> bool:
    h1, h2 = _angle_half(*d1), _angle_half(*d2)
    if h1 != h2:
        return h1 < h2
    return d1[0] * d2[1] - d1[1] * d2[0] > 0


def _doubled_int(c) -> Optional[int]:
    c2 = c * 2
    if isinstance(c2, int):
        return c2
    if isinstance(c2, Fraction) and c2.denominator == 1:
        return int(c2)
    return None


class OracleSnapshot:
    """A frozen reconstruction of the subdivision from raw geometry."""

    def __init__(self, segments: Sequence[Segment],
                 isolated_vertices: Sequence[Point] = (),
                 kernels=None):
        self.segments = list(segments)
        self.isolated_vertices = list(isolated_vertices)
        self.kern = kernels if kernels is not None else _kernels.impl
        self._build_walks()
        self._build_components()
        self._prepare_arrays()

    # -- construction ---------------------------------------------------

    def _build_walks(self) -> None:
        # rotations: outgoing (edge index, forward?) per vertex, CCW order
        rot: Dict[Point, List[Tuple[int, bool]]] = {}
        for i, s in enumerate(self.segments):
            rot.setdefault(s.a, []).append((i, True))
            rot.setdefault(s.b, []).append((i, False))
        for p, out in rot.items():
            def dirkey(item):
                i, fwd = item
                s = self.segments[i]
                q = s.b if fwd else s.a
                return (q.x - p.x, q.y - p.y)
            out.sort(key=_CcwKey(dirkey))
        self.rot = rot
        # walks over directed edges (i, fwd)
        walk_of: Dict[Tuple[int, bool], int] = {}
        walks: List[List[Tuple[int, bool]]] = []
        areas: List = []
        for i, s in enumerate(self.segments):
            for fwd in (True, False):
                if (i, fwd) in walk_of:
                    continue
                wid = len(walks)
                walk = []
                area = 0
                cur = (i, fwd)
                while cur not in walk_of:
                    walk_of[cur] = wid
                    walk.append(cur)
                    ci, cf = cur
                    cs = self.segments[ci]
                    p, r = (cs.a, cs.b) if cf else (cs.b, cs.a)
                    area += p.x * r.y - r.x * p.y
                    # next: cw-next of twin around head
                    head = r
                    out = self.rot[head]
                    twin = (ci, not cf)
                    j = out.index(twin)
                    cur = out[(j - 1) % len(out)]
                walks.append(walk)
                areas.append(area)
        self.walks = walks
        self.walk_areas = areas
        self.walk_of = walk_of

    def _build_components(self) -> None:
        # component id per edge via BFS over shared vertices
        comp = [-1] * len(self.segments)
        at_vertex: Dict[Point, List[int]] = {}
        for i, s in enumerate(self.segments):
            at_vertex.setdefault(s.a, []).append(i)
            at_vertex.setdefault(s.b, []).append(i)
        c = 0
        for i in range(len(self.segments)):
            if comp[i] >= 0:
                continue
            stack = [i]
            comp[i] = c
            while stack:
                j = stack.pop()
                s = self.segments[j]
                for p in (s.a, s.b):
                    for k in at_vertex[p]:
                        if comp[k] < 0:
                            comp[k] = c
                            stack.append(k)
            c += 1
        self.edge_component = comp
        self.n_components = c

    def _prepare_arrays(self) -> None:
        self._arrays = None
        n = len(self.segments)
        cols = []
        for s in self.segments:
            vals = []
            for v in (s.a.x, s.a.y, s.b.x, s.b.y):
                d = _doubled_int(v)
                if d is None or abs(d) >= self.kern.COORD_LIMIT:
                    return
                vals.append(d)
            cols.append(vals)
        w1 = np.full(n, -1, dtype=np.dtype("long"))
        w2 = np.full(n, -1, dtype=np.dtype("long"))
        for i in range(n):
            w1[i] = self.walk_of[(i, True)]
            w2[i] = self.walk_of[(i, False)]
        arr = np.array(cols, dtype=np.int64).reshape(n, 4) if n else \
            np.zeros((0, 4), dtype=np.int64)
        self._arrays = {
            "ax": np.ascontiguousarray(arr[:, 0]),
            "ay": np.ascontiguousarray(arr[:, 1]),
            "bx": np.ascontiguousarray(arr[:, 2]),
            "by": np.ascontiguousarray(arr[:, 3]),
            "w1": np.ascontiguousarray(w1),
            "w2": np.ascontiguousarray(w2),
        }

    # -- queries ----------------------------------------------------------

    def _point_doubled(self, q: Point) -> Optional[Tuple[int, int]]:
        qx = _doubled_int(q.x)
        qy = _doubled_int(q.y)
        if qx is None or qy is None:
            return None
        if abs(qx) >= self.kern.COORD_LIMIT or abs(qy) >= self.kern.COORD_LIMIT:
            return None
        return qx, qy

    def locate(self, q: Point):
        """Face token for q: OUTER_TOKEN, BOUNDARY_TOKEN, or a frozenset of
        odd-parity walk ids."""
        if q in self.rot or q in set(self.isolated_vertices):
            return BOUNDARY_TOKEN
        dq = self._point_doubled(q)
        if self._arrays is not None and dq is not None:
            a = self._arrays
            parity, on_edge = self.kern.crossings_parity(
                dq[0], dq[1], a["ax"], a["ay"], a["bx"], a["by"],
                a["w1"], a["w2"], len(self.walks))
            if on_edge:
                return BOUNDARY_TOKEN
            odd = frozenset(int(i) for i in np.nonzero(parity)[0])
        else:
            par = [0] * len(self.walks)
            for i, s in enumerate(self.segments):
                if point_on_segment(s, q):
                    return BOUNDARY_TOKEN
                if s.a < q < s.b and orientation(s.a, s.b, q) < 0:
                    par[self.walk_of[(i, True)]] ^= 1
                    par[self.walk_of[(i, False)]] ^= 1
            odd = frozenset(i for i, v in enumerate(par) if v)
        if not odd:
            return OUTER_TOKEN
        return odd

    def outer_component_of_face(self, q: Point):
        """Component id owning the outer boundary of q's face, or None when
        q lies in the unbounded face (boundary queries excluded)."""
        token = self.locate(q)
        if token == BOUNDARY_TOKEN:
            raise ValueError("boundary query")
        if token == OUTER_TOKEN:
            return None
        best = None
        for wid in token:
            area = self.walk_areas[wid]
            if area > 0 and (best is None or area < best[0]):
                best = (area, wid)
        if best is None:
            return None
        ei, _fwd = self.walks[best[1]][0]
        return self.edge_component[ei]

    def ray_shoot(self, q: Point, edge_indices=None, weak=False):
        """Lowest edge (by index) hit by the upward ray from q among the
        given subset (all edges when None)."""
        idxs = range(len(self.segments)) if edge_indices is None else edge_indices
        best = None
        for i in idxs:
            s = self.segments[i]
            h = ray_hit_weak(s, q) if weak else ray_hit(s, q)
            if h is None:
                continue
            if best is None or h.y < best[0]:
                best = (h.y, i)
        return None if best is None else (best[1], Point(q.x, best[0]))

    def components(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for i, c in enumerate(self.edge_component):
            out.setdefault(c, []).append(i)
        return out

    def ccw_walks(self) -> List[List[Tuple[int, bool]]]:
        return [w for w, a in zip(self.walks, self.walk_areas) if a > 0]


class _CcwKey:
    """functools.cmp_to_key-style adapter for the CCW direction order."""

    def __init__(self, dirkey):
        self.dirkey = dirkey

    def __call__(self, item):
        return _CcwWrapped(self.dirkey(item))


class _CcwWrapped:
    __slots__ = ("d",)

    def __init__(self, d):
        self.d = d

    def __lt__(self, other):
        return _ccw_before(self.d, other.d)


def naive_stab_lowest(traps: Sequence[Trapezoid], q: Point) -> Optional[Trapezoid]:
    """Linear scan: lowest trapezoid containing q, spec tie rule."""
    best = None
    for t in traps:
        if not t.contains(q):
            continue
        if best is None or cmp_stab(t, best, q) < 0:
            best = t
    return best


def naive_ray_shoot(segs: Sequence[Segment], q: Point,
                    weak: bool = False) -> Optional[int]:
    """Index of the lowest segment hit by the upward ray from q."""
    best = None
    for i, s in enumerate(segs):
        h = ray_hit_weak(s, q) if weak else ray_hit(s, q)
        if h is None:
            continue
        if best is None or h.y < best[0]:
            best = (h.y, i)
    return None if best is None else best[1]


def validate_insertion(s: Segment, edges: Sequence[Segment],
                       vertices: Sequence[Point]) -> Optional[str]:
    """Full O(n) validity check for inserting edge s; None when ok."""
    for t in edges:
        if segments_properly_cross(s, t):
            return f"crosses edge {t}"
    endpoints = {s.a, s.b}
    for p in vertices:
        if p in endpoints:
            continue
        if point_on_segment(s, p):
            return f"contains vertex {p} in its interior"
    for t in edges:
        for p in (t.a, t.b):
            if p in endpoints:
                continue
            if point_on_segment(s, p):
                return f"contains vertex {p} in its interior"
    for p in endpoints:
        for t in edges:
            if p in (t.a, t.b):
                continue
            if point_on_segment(t, p):
                return f"endpoint {p} lies inside edge {t}"
    return None
