"""Exact geometric primitives shared by every structure in the package.

All coordinates are exact rationals (python ints, promoted to Fraction only
when a value is genuinely non-integral), so every predicate below is
deterministic and tolerance-free.

Degeneracy convention: horizontal comparisons use the lexicographic key
(x, y).  This is equivalent to an infinitesimal shear x' = x + eps*y, makes
vertical segments legal input, and gives any two distinct points distinct
"x" positions.  Throughout the package "left of", "x-span" and "vertical
ray" are meant in this sheared sense; a Point compares as its own shear key.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Union

Coord = Union[int, Fraction]

LEFT = 1
COLLINEAR = 0
RIGHT = -1


def as_coord(value) -> Coord:
    """Normalize a number or decimal string to an exact coordinate."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, str):
        f = Fraction(value)
        return int(f) if f.denominator == 1 else f
    if isinstance(value, float):
        raise TypeError("float coordinates are not accepted; pass int, Fraction or str")
    raise TypeError(f"cannot interpret {value!r} as a coordinate")


class Point(NamedTuple):
    """A point; tuple comparison *is* the shear order (x, then y)."""

    x: Coord
    y: Coord


class Segment(NamedTuple):
    """A closed straight segment with a strictly left of b in shear order."""

    a: Point
    b: Point

    @property
    def is_vertical(self) -> bool:
        return self.a.x == self.b.x


def pt(x, y) -> Point:
    return Point(as_coord(x), as_coord(y))


def seg(p, q) -> Segment:
    """Build a segment, orienting the endpoints left-to-right under shear."""
    if p == q:
        raise ValueError(f"degenerate segment at {p}")
    return Segment(p, q) if p < q else Segment(q, p)


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q-p) x (r-p): LEFT, RIGHT or COLLINEAR."""
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    if d > 0:
        return LEFT
    if d < 0:
        return RIGHT
    return COLLINEAR


def point_vs_segment(s: Segment, p: Point) -> int:
    """+1 if p is strictly above the line through s, -1 strictly below, 0 on.

    Valid for non-vertical s; callers guarantee p.x within the real x-span
    when they need "above the segment" rather than "above the line".
    """
    return orientation(s.a, s.b, p)


def seg_y_at(s: Segment, x: Coord) -> Coord:
    """Exact y of (non-vertical) s at abscissa x."""
    ax, ay = s.a.x, s.a.y
    bx, by = s.b.x, s.b.y
    num = ay * (bx - ax) + (x - ax) * (by - ay)
    den = bx - ax
    f = Fraction(num, den)
    return int(f) if f.denominator == 1 else f


def _hit_height(s: Segment, p: Point) -> Optional[Coord]:
    """Height of the sheared upward ray from p on s, or None if the ray
    passes beside s.  The height may be below p; callers filter."""
    ka, kb = s.a, s.b
    if not (ka <= p <= kb):
        return None
    if s.is_vertical:
        # Sheared span is [(x, ay), (x, by)]; the ray meets s only at p itself.
        return p.y
    if p.x == ka.x:
        # Left endpoint column: ka <= p forces p.y >= ka.y, so the sheared
        # ray passes right of the endpoint and meets s at height -> ka.y.
        return ka.y
    if p.x == kb.x:
        return kb.y
    return seg_y_at(s, p.x)


def ray_hit(s: Segment, p: Point) -> Optional[Point]:
    """Intersection of the upward vertical ray from p with s, if strictly
    above p under the shear; None otherwise."""
    h = _hit_height(s, p)
    if h is None or h <= p.y:
        return None
    return Point(p.x, h)


def ray_hit_weak(s: Segment, p: Point) -> Optional[Point]:
    """Like ray_hit but admits a hit at p itself (p lying on s)."""
    h = _hit_height(s, p)
    if h is None or h < p.y:
        return None
    return Point(p.x, h)


def point_on_segment(s: Segment, p: Point) -> bool:
    """True iff p lies on the closed segment (endpoints included)."""
    if orientation(s.a, s.b, p) != COLLINEAR:
        return False
    return s.a <= p <= s.b


def cmp_heights(s: Segment, t: Segment, x: Coord) -> int:
    """Sign of y_s(x) - y_t(x) for two non-vertical segments at abscissa x."""
    ds = s.b.x - s.a.x
    dt = t.b.x - t.a.x
    ns = s.a.y * ds + (x - s.a.x) * (s.b.y - s.a.y)
    nt = t.a.y * dt + (x - t.a.x) * (t.b.y - t.a.y)
    d = ns * dt - nt * ds
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def cmp_slopes(s: Segment, t: Segment) -> int:
    """Sign of slope(s) - slope(t) for non-vertical segments."""
    d = (s.b.y - s.a.y) * (t.b.x - t.a.x) - (t.b.y - t.a.y) * (s.b.x - s.a.x)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def cmp_seg_vertical(s: Segment, t: Segment) -> int:
    """Vertical order of two non-crossing, non-vertical segments whose real
    x-spans overlap: negative if s runs below t there.  Segments touching at
    a point are ordered by slope (the order just right of the touch)."""
    xm = s.a.x if s.a.x >= t.a.x else t.a.x
    c = cmp_heights(s, t, xm)
    if c:
        return c
    return cmp_slopes(s, t)


class Trapezoid:
    """A cell of a vertical decomposition: two vertical walls, a top side
    lying on the owner edge, and a bottom side.

    Walls are vertex shear keys, so xl/xr are Points; the cell spans
    [xl, xr] in shear order.  Triangles appear as cells whose top and bottom
    share an endpoint.
    """

    __slots__ = ("top", "bottom", "xl", "xr", "owner_edge", "owner_component",
                 "uid", "_gen", "_stab_refs", "_nodes")

    def __init__(self, top: Segment, bottom: Segment, xl: Point, xr: Point,
                 owner_edge: int, owner_component: int = -1, uid: int = -1):
        self.top = top
        self.bottom = bottom
        self.xl = xl
        self.xr = xr
        self.owner_edge = owner_edge
        self.owner_component = owner_component
        self.uid = uid
        self._gen = 0          # placement generation (stabbing index internals)
        self._stab_refs = ()
        self._nodes = ()

    def __repr__(self):
        return (f"Trapezoid(top={self.top}, bottom={self.bottom}, "
                f"xl={self.xl}, xr={self.xr}, owner={self.owner_edge})")

    def contains(self, p: Point) -> bool:
        if not (self.xl <= p <= self.xr):
            return False
        if point_vs_segment(self.bottom, p) < 0:
            return False
        if point_vs_segment(self.top, p) > 0:
            return False
        return True

    def top_hit_height(self, p: Point) -> Coord:
        """y of the upward ray hit on the top side, assuming contains(p)."""
        if self.top.is_vertical:
            return p.y
        return seg_y_at(self.top, p.x)


def point_in_trapezoid(t: Trapezoid, p: Point) -> bool:
    return t.contains(p)


def cmp_stab(t1: Trapezoid, t2: Trapezoid, p: Point) -> int:
    """Order two trapezoids containing p by the stabbing rule: lower top-hit
    first, ties by owner edge id then cell id.  Negative if t1 wins."""
    if t1.top.is_vertical or t2.top.is_vertical:
        h1 = t1.top_hit_height(p)
        h2 = t2.top_hit_height(p)
        c = -1 if h1 < h2 else (1 if h1 > h2 else 0)
    else:
        c = cmp_heights(t1.top, t2.top, p.x)
    if c:
        return c
    if t1.owner_edge != t2.owner_edge:
        return -1 if t1.owner_edge < t2.owner_edge else 1
    if t1.uid != t2.uid:
        return -1 if t1.uid < t2.uid else 1
    return 0


def segments_properly_cross(s: Segment, t: Segment) -> bool:
    """True iff the closed segments intersect anywhere except at shared
    endpoints.  Used by validation; not on any hot path."""
    if s == t:
        return True
    o1 = orientation(s.a, s.b, t.a)
    o2 = orientation(s.a, s.b, t.b)
    o3 = orientation(t.a, t.b, s.a)
    o4 = orientation(t.a, t.b, s.b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    # Collinear / endpoint-touching cases.
    touch = set()
    for p, on in ((t.a, o1), (t.b, o2)):
        if on == COLLINEAR and s.a <= p <= s.b:
            touch.add(p)
    for p, on in ((s.a, o3), (s.b, o4)):
        if on == COLLINEAR and t.a <= p <= t.b:
            touch.add(p)
    if not touch:
        return False
    shared = {s.a, s.b} & {t.a, t.b}
    return any(p not in shared for p in touch)
