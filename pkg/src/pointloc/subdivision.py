"""The incremental planar subdivision: vertices with angular rotations,
edges with interior flags, connectivity, and one concatenable queue per
bounded face holding its outer boundary walk.

Conventions
-----------
Every undirected edge owns two directed half-edges (twins).  Around a
vertex the outgoing half-edges are kept in counterclockwise angular order;
walking a face boundary takes, from half-edge (u -> v), the clockwise-next
edge after the twin in v's rotation.  With faces on the left of their
half-edges, the outer boundary of a bounded face is the counterclockwise
(positive-area) walk, and exactly those walks live in queues.

Interior flags classify each edge against the union U of closed bounded
faces of its own component's induced subdivision: OUTSIDE (flag "null"),
BOUNDARY (flag "true", with the half-edge that has U on its left), or
INTERIOR (flag "false").  Transitions only move toward INTERIOR, which the
structure counts and asserts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .blocks.concat_queue import ConcatQueue, _fresh_qid
from .blocks.dsu import DisjointSet
from .geom import Point, Segment, orientation, point_on_segment, seg


class Flag(enum.Enum):
    NULL = "null"        # edge not contained in U(component)
    TRUE = "true"        # edge on the boundary of U
    FALSE = "false"      # edge in the interior of U


class InsertionClass(enum.Enum):
    ISOLATED = "isolated"
    ONE_ENDPOINT = "one_endpoint"
    BRIDGE = "bridge"
    SAME_COMPONENT = "same_component"


@dataclass(frozen=True)
class NoNewFace:
    pass


@dataclass(frozen=True)
class FaceSplit:
    old: int
    new: int


@dataclass(frozen=True)
class NewEnclosedFace:
    name: int
    cycle: tuple  # half-edges of the new face's outer walk, in order


FaceEvent = object

OUTER_FACE = -1  # reserved name of the unbounded face


class HalfEdge:
    __slots__ = ("edge", "tail", "head", "twin", "qh")

    def __init__(self, edge, tail, head):
        self.edge: Edge = edge
        self.tail: Vertex = tail
        self.head: Vertex = head
        self.twin: Optional[HalfEdge] = None
        self.qh = None  # queue Handle when on some face's outer boundary

    @property
    def direction(self) -> Tuple:
        return (self.head.pos.x - self.tail.pos.x,
                self.head.pos.y - self.tail.pos.y)

    def __repr__(self):
        return f"{self.tail.pos}->{self.head.pos}"


class Edge:
    __slots__ = ("eid", "seg", "flag", "flag_dir", "halves", "alive", "logical")

    def __init__(self, eid: int, s: Segment):
        self.eid = eid
        self.seg = s
        self.flag = Flag.NULL
        self.flag_dir: Optional[HalfEdge] = None  # U on its left when TRUE
        self.halves: Tuple[HalfEdge, HalfEdge] = ()
        self.alive = True
        self.logical = None  # set by the locator layer

    def __repr__(self):
        return f"Edge#{self.eid}{self.seg}"


class Vertex:
    __slots__ = ("vid", "pos", "rotation")

    def __init__(self, vid: int, pos: Point):
        self.vid = vid
        self.pos = pos
        self.rotation: List[HalfEdge] = []  # outgoing, CCW from east

    def __repr__(self):
        return f"Vertex#{self.vid}{self.pos}"


def _angle_half(dx, dy) -> int:
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def _ccw_before(d1, d2) -> bool:
    """True if direction d1 comes strictly before d2 going CCW from east."""
    h1, h2 = _angle_half(*d1), _angle_half(*d2)
    if h1 != h2:
        return h1 < h2
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    return cross > 0


class Subdivision:
    def __init__(self):
        self.vertices: Dict[Point, Vertex] = {}
        self.vertex_by_id: Dict[int, Vertex] = {}
        self.edges: Dict[int, Edge] = {}
        self.dsu = DisjointSet()
        self.queues: Dict[int, ConcatQueue] = {}
        self._next_vid = 0
        self._next_eid = 0
        self.n_edges = 0
        # charge counters
        self.flag_transitions = 0
        self.queue_element_insertions = 0

    # ------------------------------------------------------------------
    # vertex index / rotations
    # ------------------------------------------------------------------

    def vertex_at(self, p: Point) -> Optional[Vertex]:
        return self.vertices.get(p)

    def _new_vertex(self, p: Point) -> Vertex:
        v = Vertex(self._next_vid, p)
        self._next_vid += 1
        self.vertices[p] = v
        self.vertex_by_id[v.vid] = v
        return v

    def _rot_insert(self, v: Vertex, h: HalfEdge) -> None:
        d = h.direction
        rot = v.rotation
        lo, hi = 0, len(rot)
        while lo < hi:
            mid = (lo + hi) // 2
            if _ccw_before(rot[mid].direction, d):
                lo = mid + 1
            else:
                hi = mid
        rot.insert(lo, h)

    def _rot_replace(self, v: Vertex, old: HalfEdge, new: HalfEdge) -> None:
        i = next(j for j, x in enumerate(v.rotation) if x is old)
        v.rotation[i] = new

    def _ccw_next(self, v: Vertex, h: HalfEdge) -> HalfEdge:
        rot = v.rotation
        i = next(j for j, x in enumerate(rot) if x is h)
        return rot[(i + 1) % len(rot)]

    def _cw_next(self, v: Vertex, h: HalfEdge) -> HalfEdge:
        rot = v.rotation
        i = next(j for j, x in enumerate(rot) if x is h)
        return rot[(i - 1) % len(rot)]

    def walk_next(self, h: HalfEdge) -> HalfEdge:
        """Next half-edge of the boundary walk with the face on the left."""
        return self._cw_next(h.head, h.twin)

    def walk_pred(self, h: HalfEdge) -> HalfEdge:
        """The half-edge whose walk_next is h."""
        return self._ccw_next(h.tail, h).twin

    def trace_cycle(self, start: HalfEdge) -> List[HalfEdge]:
        out = [start]
        cur = self.walk_next(start)
        while cur is not start:
            out.append(cur)
            cur = self.walk_next(cur)
        return out

    # ------------------------------------------------------------------
    # name / flag queries
    # ------------------------------------------------------------------

    def face_name_of(self, h: HalfEdge) -> Optional[int]:
        """Name of the face whose outer boundary holds h; None otherwise."""
        if h.qh is None:
            return None
        q = h.qh.queue()
        return q.qid if q is not None else None

    def interior_flag(self, eid: int) -> Flag:
        return self.edges[eid].flag

    def component_of_edge(self, eid: int):
        return self.dsu.find(eid)

    def component_of_vertex(self, v: Vertex):
        """Component id: the DS root of an incident edge, or a per-vertex
        sentinel for an edgeless vertex."""
        if v.rotation:
            return self.dsu.find(v.rotation[0].edge.eid)
        return ("v", v.vid)

    # ------------------------------------------------------------------
    # flag bookkeeping
    # ------------------------------------------------------------------

    def _set_flag(self, edge: Edge, flag: Flag, flag_dir=None) -> None:
        old = edge.flag
        if old == flag and edge.flag_dir is flag_dir:
            return
        assert old != Flag.FALSE or flag == Flag.FALSE, \
            "interior flag may not leave FALSE"
        assert flag != Flag.NULL or old == Flag.NULL, \
            "no flag transitions into NULL"
        if old != flag:
            self.flag_transitions += 1
        edge.flag = flag
        edge.flag_dir = flag_dir if flag == Flag.TRUE else None

    def _wedge_is_bounded(self, v: Vertex, h_e: HalfEdge) -> bool:
        """Is the face of the *old* component's induced subdivision in which
        h_e points (just clockwise of it around v) a bounded face?

        Reads the neighbor's interior flag; valid right after h_e has been
        inserted into v's rotation."""
        if len(v.rotation) < 2:
            return False
        # the wedge containing h_e's direction is the face left of the
        # clockwise-previous outgoing edge (in the pre-insertion rotation)
        h_prev = self._cw_next(v, h_e)
        if h_prev is h_e:
            return False
        edge = h_prev.edge
        if edge.flag == Flag.FALSE:
            return True
        if edge.flag == Flag.NULL:
            return False
        return edge.flag_dir is h_prev

    # ------------------------------------------------------------------
    # queue plumbing
    # ------------------------------------------------------------------

    def _q_new(self, halfedges) -> ConcatQueue:
        q = ConcatQueue.from_values(halfedges)
        for h, handle in zip(halfedges, q.handles()):
            h.qh = handle
        self.queues[q.qid] = q
        self.queue_element_insertions += len(halfedges)
        return q

    def _q_insert_after(self, q: ConcatQueue, at_handle, h: HalfEdge):
        h.qh = q.insert_after(at_handle, h)
        self.queue_element_insertions += 1
        return h.qh

    def _q_drop(self, q: ConcatQueue) -> None:
        self.queues.pop(q.qid, None)

    # ------------------------------------------------------------------
    # vertex insertion
    # ------------------------------------------------------------------

    def insert_vertex(self, p: Point, on_edge: Optional[int] = None) -> int:
        """Insert a vertex at p: either splitting the given edge or as an
        isolated vertex inside a face."""
        if p in self.vertices:
            raise ValueError(f"vertex already exists at {p}")
        if on_edge is None:
            return self._new_vertex(p).vid
        edge = self.edges[on_edge]
        if not edge.alive:
            raise ValueError("cannot split a dead edge")
        if not point_on_segment(edge.seg, p) or p in (edge.seg.a, edge.seg.b):
            raise ValueError(f"{p} is not interior to edge {on_edge}")
        v = self._new_vertex(p)
        a, b = edge.seg.a, edge.seg.b
        va, vb = self.vertices[a], self.vertices[b]
        e1 = self._new_edge(seg(a, p))
        e2 = self._new_edge(seg(p, b))
        h_fwd, h_rev = edge.halves  # h_fwd: a->b, h_rev: b->a
        h1f, h1r = e1.halves  # a->p, p->a
        h2f, h2r = e2.halves  # p->b, b->p
        # rotations: directions at a and b are unchanged
        self._rot_replace(va, h_fwd, h1f)
        self._rot_replace(vb, h_rev, h2r)
        for h in (h1r, h2f):
            self._rot_insert(v, h)
        # connectivity: sub-edges join the old edge's set
        self.dsu.union(edge.eid, e1.eid)
        self.dsu.union(edge.eid, e2.eid)
        # flags inherit, with directions mapped onto the matching halves
        if edge.flag == Flag.TRUE:
            if edge.flag_dir is h_fwd:
                self._set_flag(e1, Flag.TRUE, h1f)
                self._set_flag(e2, Flag.TRUE, h2f)
            else:
                self._set_flag(e1, Flag.TRUE, h1r)
                self._set_flag(e2, Flag.TRUE, h2r)
        else:
            self._set_flag(e1, edge.flag)
            self._set_flag(e2, edge.flag)
        # queue elements: replace each directed occurrence by the two halves
        if h_fwd.qh is not None:
            qh = h_fwd.qh
            q = qh.queue()
            qh.value = h1f
            h1f.qh = qh
            self._q_insert_after(q, qh, h2f)
            h_fwd.qh = None
        if h_rev.qh is not None:
            qh = h_rev.qh
            q = qh.queue()
            qh.value = h2r
            h2r.qh = qh
            self._q_insert_after(q, qh, h1r)
            h_rev.qh = None
        edge.alive = False
        self.n_edges += 1  # two sub-edges replace one edge
        return v.vid

    # ------------------------------------------------------------------
    # edge insertion
    # ------------------------------------------------------------------

    def _new_edge(self, s: Segment) -> Edge:
        e = Edge(self._next_eid, s)
        self._next_eid += 1
        va = self.vertices.get(s.a) or self._new_vertex(s.a)
        vb = self.vertices.get(s.b) or self._new_vertex(s.b)
        h1 = HalfEdge(e, va, vb)
        h2 = HalfEdge(e, vb, va)
        h1.twin = h2
        h2.twin = h1
        e.halves = (h1, h2)
        self.edges[e.eid] = e
        self.dsu.add(e.eid)
        return e

    def classify_insertion(self, s: Segment) -> InsertionClass:
        va = self.vertices.get(s.a)
        vb = self.vertices.get(s.b)
        ca = self.component_of_vertex(va) if va is not None else None
        cb = self.component_of_vertex(vb) if vb is not None else None
        if ca is None and cb is None:
            return InsertionClass.ISOLATED
        if ca is None or cb is None:
            return InsertionClass.ONE_ENDPOINT
        if ca == cb:
            return InsertionClass.SAME_COMPONENT
        return InsertionClass.BRIDGE

    def insert_edge(self, s: Segment):
        """Insert an edge; returns (edge, insertion class, face event)."""
        for q in (s.a, s.b):
            v = self.vertices.get(q)
            if v is not None:
                for h in v.rotation:
                    if h.head.pos in (s.a, s.b) and h.edge.alive:
                        if {h.tail.pos, h.head.pos} == {s.a, s.b}:
                            raise ValueError("duplicate edge")
        cls = self.classify_insertion(s)
        edge = self._new_edge(s)
        h_ab = edge.halves[0] if edge.halves[0].tail.pos == s.a else edge.halves[1]
        h_ba = h_ab.twin
        va, vb = h_ab.tail, h_ab.head
        # connect into rotations
        self._rot_insert(va, h_ab)
        self._rot_insert(vb, h_ba)
        # connectivity
        for v in (va, vb):
            for h in v.rotation:
                if h.edge is not edge:
                    self.dsu.union(edge.eid, h.edge.eid)
                    break
        self.n_edges += 1

        if cls == InsertionClass.ISOLATED:
            self._set_flag(edge, Flag.NULL)
            return edge, cls, NoNewFace()

        if cls in (InsertionClass.ONE_ENDPOINT, InsertionClass.BRIDGE):
            return edge, cls, self._insert_non_cycle(edge, h_ab, h_ba, cls)

        return edge, cls, self._insert_same_component(edge, h_ab, h_ba)

    def _insert_non_cycle(self, edge, h_ab, h_ba, cls) -> FaceEvent:
        """Attachment that creates no cycle: flags from wedge tests, and the
        growing boundary walk spliced into a queue when it is an outer one."""
        va, vb = h_ab.tail, h_ab.head
        bounded = False
        attached = []
        if len(va.rotation) > 1:
            attached.append((va, h_ab))
            bounded = bounded or self._wedge_is_bounded(va, h_ab)
        if len(vb.rotation) > 1:
            attached.append((vb, h_ba))
            bounded = bounded or self._wedge_is_bounded(vb, h_ba)
        self._set_flag(edge, Flag.FALSE if bounded else Flag.NULL)

        # Splice the new walk pieces into the (single possible) outer queue.
        pred_ab = self.walk_pred(h_ab)
        pred_ba = self.walk_pred(h_ba)
        in_q_a = pred_ab.qh is not None and pred_ab is not h_ba
        in_q_b = pred_ba.qh is not None and pred_ba is not h_ab
        assert not (in_q_a and in_q_b), "two outer boundaries for one face"
        if in_q_a:
            q = pred_ab.qh.queue()
            pieces = [h_ab]
            cur = self.walk_next(h_ab)
            while cur is not h_ab and cur.qh is None:
                pieces.append(cur)
                cur = self.walk_next(cur)
            at = pred_ab.qh
            for h in pieces:
                at = self._q_insert_after(q, at, h)
        elif in_q_b:
            q = pred_ba.qh.queue()
            pieces = [h_ba]
            cur = self.walk_next(h_ba)
            while cur is not h_ba and cur.qh is None:
                pieces.append(cur)
                cur = self.walk_next(cur)
            at = pred_ba.qh
            for h in pieces:
                at = self._q_insert_after(q, at, h)
        return NoNewFace()

    def _insert_same_component(self, edge, h_ab, h_ba) -> FaceEvent:
        d1 = self.walk_pred(h_ab)
        d2 = self.walk_pred(h_ba)
        in_queue = d1.qh is not None
        assert (d2.qh is not None) == in_queue, \
            "endpoints of a chord disagree about the outer boundary"
        if in_queue:
            return self._split_face(edge, h_ab, h_ba, d1, d2)
        return self._enclose_face(edge, h_ab, h_ba)

    def _split_face(self, edge, h_ab, h_ba, d1, d2) -> FaceEvent:
        """Both endpoints on the outer boundary of a bounded face: its queue
        splits in two; the chord is interior to the union of bounded faces."""
        self._set_flag(edge, Flag.FALSE)
        q = d1.qh.queue()
        old_name = q.qid
        assert d2.qh.queue() is q
        tail = q.split_after(d2.qh)
        if d1.qh.queue() is tail:
            rest = tail.split_after(d1.qh)
            arc1 = tail            # rotation of walk (d2 .. d1]
            arc2 = q.concat(rest)  # rotation of walk (d1 .. d2]
        else:
            rest = q.split_after(d1.qh)
            arc2 = rest            # (d1 .. d2]
            arc1 = tail.concat(q)  # (d2 .. d1]
        self._q_insert_after(arc1, d1.qh, h_ab)
        self._q_insert_after(arc2, d2.qh, h_ba)
        # the walk through h_ab keeps the old face name
        self.queues.pop(old_name, None)
        self.queues.pop(arc1.qid, None)
        self.queues.pop(arc2.qid, None)
        arc1.qid = old_name
        new_name = _fresh_qid()
        arc2.qid = new_name
        self.queues[arc1.qid] = arc1
        self.queues[arc2.qid] = arc2
        return FaceSplit(old=old_name, new=new_name)

    def _enclose_face(self, edge, h_ab, h_ba) -> FaceEvent:
        """Both endpoints on a boundary walk that is not an outer boundary:
        one of the two new walks encloses a brand-new bounded face.

        The two candidate walks are stepped in lockstep so the wasted work
        on the wrong side is bounded by the size of the face actually
        enclosed (whose elements pay for themselves by entering a queue)."""
        cycle = self._find_positive_walk(h_ab, h_ba)
        # flag updates along the new face's outer walk
        occurrences: Dict[int, List[HalfEdge]] = {}
        for h in cycle:
            occurrences.setdefault(h.edge.eid, []).append(h)
        for eid, hs in occurrences.items():
            e = self.edges[eid]
            if len(hs) >= 2:
                self._set_flag(e, Flag.FALSE)
            elif e.flag == Flag.TRUE:
                self._set_flag(e, Flag.FALSE)
            else:
                assert e.flag == Flag.NULL or e is edge
                self._set_flag(e, Flag.TRUE, hs[0])
        q = self._q_new(cycle)
        return NewEnclosedFace(name=q.qid, cycle=tuple(cycle))

    def _find_positive_walk(self, h1: HalfEdge, h2: HalfEdge) -> List[HalfEdge]:
        """Of the two walks through h1 and h2, return the counterclockwise
        (positive signed area) one, stepping both alternately."""
        walks = [[h1], [h2]]
        areas = [0, 0]
        cursors = [h1, h2]
        closed = [False, False]
        while True:
            for i in (0, 1):
                if closed[i]:
                    continue
                cur = cursors[i]
                p, r = cur.tail.pos, cur.head.pos
                areas[i] += p.x * r.y - r.x * p.y
                nxt = self.walk_next(cur)
                if nxt is walks[i][0]:
                    closed[i] = True
                    if areas[i] > 0:
                        return walks[i]
                    # the other side must be the enclosing one
                    other = 1 - i
                    if closed[other]:
                        raise AssertionError("no enclosing side on a chord")
                    cur2 = cursors[other]
                    while True:
                        nxt2 = self.walk_next(cur2)
                        if nxt2 is walks[other][0]:
                            return walks[other]
                        walks[other].append(nxt2)
                        cur2 = nxt2
                else:
                    walks[i].append(nxt)
                    cursors[i] = nxt

    # ------------------------------------------------------------------
    # audits
    # ------------------------------------------------------------------

    def check_queues(self) -> None:
        """Every queue holds a closed walk; every element points back."""
        for qid, q in self.queues.items():
            assert qid == q.qid
            hs = [h for h in q]
            assert hs, "empty face queue"
            for h, nxt in zip(hs, hs[1:] + hs[:1]):
                assert self.walk_next(h) is nxt, "queue is not a boundary walk"
            for h in hs:
                assert h.qh is not None and h.qh.queue() is q
        seen = {}
        for qid, q in self.queues.items():
            for h in q:
                assert id(h) not in seen, "half-edge in two queues"
                seen[id(h)] = qid

    def live_edges(self) -> List[Edge]:
        return [e for e in self.edges.values() if e.alive]
