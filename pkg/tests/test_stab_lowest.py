"""Stabbing-lowest index vs. the linear-scan oracle."""

import math
import random

import pytest

from pointloc.blocks.cascade import CASCADING, PLAIN
from pointloc.geom import Point, Segment, Trapezoid, pt, seg
from pointloc.oracle import naive_stab_lowest
from pointloc.stab_lowest import StabLowestIndex


def rect(x0, y0, x1, y1, owner=0):
    top = seg(pt(x0, y1), pt(x1, y1))
    bot = seg(pt(x0, y0), pt(x1, y0))
    return Trapezoid(top, bot, pt(x0, y0), pt(x1, y0), owner)


def test_examples_nested():
    idx = StabLowestIndex(fanout=4)
    assert idx.query_lowest(pt(1, 1)) is None
    a = rect(0, 0, 10, 10, owner=1)
    idx.insert(a)
    assert idx.query_lowest(pt(5, 5)) is a
    b = rect(2, 2, 8, 6, owner=2)
    idx.insert(b)
    assert idx.query_lowest(pt(5, 3)) is b
    assert idx.query_lowest(pt(5, 8)) is a
    assert idx.query_lowest(pt(20, 5)) is None
    idx.check()


def test_rejects_degenerate():
    idx = StabLowestIndex()
    t = rect(0, 0, 5, 5)
    bad = Trapezoid(seg(pt(0, 0), pt(0, 5)), t.bottom, t.xl, t.xr, 0)
    with pytest.raises(ValueError):
        idx.insert(bad)


def _random_traps(rng, n, slope):
    """Trapezoids whose sides are all parallel (slope in {0,1,-1}) so no
    two tops or bottoms ever properly cross."""
    traps = []
    for uid in range(n):
        x0 = rng.randrange(0, 400)
        w = rng.randrange(1, 60)
        x1 = x0 + w
        c0 = rng.randrange(-200, 200)
        c1 = c0 + rng.randrange(1, 80)
        ext0 = rng.randrange(0, 8)
        ext1 = rng.randrange(0, 8)
        sx0, sx1 = x0 - ext0, x1 + ext1

        def line(c, xa, xb):
            return seg(pt(xa, c + slope * xa), pt(xb, c + slope * xb))

        top = line(c1, sx0, sx1)
        bot = line(c0, sx0, sx1)
        xl = Point(x0, c0 + slope * x0)
        xr = Point(x1, c0 + slope * x1)
        traps.append(Trapezoid(top, bot, xl, xr, owner_edge=rng.randrange(8)))
    return traps


def _random_query(rng):
    return pt(rng.randrange(-10, 480), rng.randrange(-260, 320))


@pytest.mark.parametrize("seed,slope", [(1, 0), (2, 0), (3, 1), (4, -1), (5, 0)])
def test_fuzz_vs_oracle(seed, slope):
    rng = random.Random(seed)
    idx = StabLowestIndex(fanout=4)
    traps = _random_traps(rng, 300, slope)
    live = []
    for i, t in enumerate(traps):
        idx.insert(t)
        live.append(t)
        for _ in range(3):
            q = _random_query(rng)
            got = idx.query_lowest(q)
            want = naive_stab_lowest(live, q)
            assert got is want, (seed, i, q, got, want)
        if i % 97 == 0:
            idx.check()
    idx.check()


def test_fuzz_boundary_queries():
    rng = random.Random(77)
    idx = StabLowestIndex(fanout=4)
    live = _random_traps(rng, 200, 0)
    for t in live:
        idx.insert(t)
    for t in rng.sample(live, 60):
        # on walls, on tops, on corners
        for q in (t.xl, t.xr, Point(t.xl.x, t.xl.y + 1),
                  pt((t.xl.x + t.xr.x) // 2, t.top.a.y)):
            got = idx.query_lowest(q)
            want = naive_stab_lowest(live, q)
            assert got is want, (q, got, want)


def test_dominated_deletion_budget():
    rng = random.Random(11)
    idx = StabLowestIndex(fanout=4)
    traps = _random_traps(rng, 500, 0)
    for t in traps:
        idx.insert(t)
    n = len(traps)
    assert idx.dominated_deletions <= n * (math.ceil(math.log2(n)) + 1)


def test_repeated_queries_deterministic():
    rng = random.Random(13)
    idx = StabLowestIndex(fanout=4)
    for t in _random_traps(rng, 150, 0):
        idx.insert(t)
    qs = [_random_query(rng) for _ in range(50)]
    first = [idx.query_lowest(q) for q in qs]
    again = [idx.query_lowest(q) for q in qs]
    assert first == again


def test_cascading_matches_plain():
    rng = random.Random(17)
    traps = _random_traps(rng, 250, 0)
    qs = [_random_query(rng) for _ in range(300)]
    a = StabLowestIndex(fanout=4, strategy=PLAIN)
    b = StabLowestIndex(fanout=4, strategy=CASCADING)
    for t in traps:
        ta = Trapezoid(t.top, t.bottom, t.xl, t.xr, t.owner_edge)
        tb = Trapezoid(t.top, t.bottom, t.xl, t.xr, t.owner_edge)
        a.insert(ta)
        b.insert(tb)
        q = _random_query(rng)
        ra, rb = a.query_lowest(q), b.query_lowest(q)
        assert (ra is None) == (rb is None)
        if ra is not None:
            assert ra.uid == rb.uid
    for q in qs:
        ra, rb = a.query_lowest(q), b.query_lowest(q)
        assert (ra is None) == (rb is None)
        if ra is not None:
            assert ra.uid == rb.uid


def test_storage_accounting():
    rng = random.Random(23)
    idx = StabLowestIndex(fanout=4)
    traps = _random_traps(rng, 400, 0)
    for t in traps:
        idx.insert(t)
    n = len(traps)
    # live + ghost slots stay within a small multiple of n log n
    assert idx.slot_count() <= 8 * n * (math.log2(n) + 1)
    for t in idx.traps:
        assert len(t._nodes) == 3
