"""Shared test scenery: hand scenes and a random valid-scene generator."""

import random
from fractions import Fraction

from pointloc.geom import pt, seg
from pointloc.oracle import validate_insertion

SQUARE = [seg(pt(0, 0), pt(10, 0)), seg(pt(10, 0), pt(10, 10)),
          seg(pt(10, 10), pt(0, 10)), seg(pt(0, 10), pt(0, 0))]

INNER_SQUARE = [seg(pt(3, 3), pt(7, 3)), seg(pt(7, 3), pt(7, 7)),
                seg(pt(7, 7), pt(3, 7)), seg(pt(3, 7), pt(3, 3))]


def random_ops(rng_or_seed, n_ops, kmax=6, with_vertices=True,
               with_diagonals=True, connected=False):
    """A random valid op sequence on a (kmax x kmax) unit grid, coordinates
    scaled by 4.  Yields ('e', segment) and ('v', point, None-or-edge-pos)
    ops; edge validity is enforced with the brute-force validator.
    connected=True keeps the scene a single component (no merges)."""
    rng = rng_or_seed if isinstance(rng_or_seed, random.Random) \
        else random.Random(rng_or_seed)
    S = 4
    candidates = []
    for i in range(kmax + 1):
        for j in range(kmax + 1):
            if i < kmax:
                candidates.append(seg(pt(S * i, S * j), pt(S * (i + 1), S * j)))
            if j < kmax:
                candidates.append(seg(pt(S * i, S * j), pt(S * i, S * (j + 1))))
            if with_diagonals and i < kmax and j < kmax:
                candidates.append(seg(pt(S * i, S * j), pt(S * (i + 1), S * (j + 1))))
                candidates.append(seg(pt(S * (i + 1), S * j), pt(S * i, S * (j + 1))))
    rng.shuffle(candidates)
    edges = []
    vertices = []
    ops = []
    for s in candidates:
        if len(ops) >= n_ops:
            break
        if with_vertices and edges and rng.random() < 0.12:
            e = rng.choice(edges)
            mid = pt(Fraction(e.a.x + e.b.x, 2), Fraction(e.a.y + e.b.y, 2))
            if mid not in vertices and not any(
                    mid in (t.a, t.b) for t in edges):
                ops.append(("v", mid, e))
                vertices.append(mid)
                continue
        if connected and edges:
            touch = {s.a, s.b} & {p for t in edges for p in (t.a, t.b)}
            if not touch:
                continue
        if validate_insertion(s, edges, vertices) is None:
            edges.append(s)
            ops.append(("e", s, None))
    return ops


def apply_ops(sub, ops):
    """Replay ops onto a Subdivision; returns the edge list per op index."""
    edge_of_seg = {}
    for kind, payload, extra in ops:
        if kind == "e":
            edge, _cls, _ev = sub.insert_edge(payload)
            edge_of_seg[payload] = edge
        else:
            target = edge_of_seg[extra]
            # the original edge may have been split already; find the live
            # sub-edge containing the point
            from pointloc.geom import point_on_segment
            eid = None
            for e in sub.live_edges():
                if point_on_segment(e.seg, payload):
                    eid = e.eid
                    break
            assert eid is not None
            sub.insert_vertex(payload, on_edge=eid)
    return edge_of_seg
