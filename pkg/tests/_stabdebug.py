"""Ad-hoc reproduction helper for stab_lowest fuzz failures (dev only)."""

import random
import sys

sys.path.insert(0, "tests")

from pointloc.stab_lowest import StabLowestIndex
from pointloc.oracle import naive_stab_lowest


def find_failure(seed, slope, n=300, fanout=4):
    from test_stab_lowest import _random_traps, _random_query
    rng = random.Random(seed)
    idx = StabLowestIndex(fanout=fanout)
    traps = _random_traps(rng, n, slope)
    live = []
    for i, t in enumerate(traps):
        idx.insert(t)
        live.append(t)
        for _ in range(3):
            q = _random_query(rng)
            got = idx.query_lowest(q)
            want = naive_stab_lowest(live, q)
            if got is not want:
                return idx, live, i, q, got, want
    return idx, live, None, None, None, None


def diagnose(idx, q, want):
    home, cl, cr = want._nodes
    path = idx.base.path_nodes(q)
    print("want uid", want.uid, "gen", want._gen, "xl", want.xl, "xr", want.xr)
    print("home on path?", home in path, "cl?", cl in path, "cr?", cr in path)
    out = []
    if cl in path and cl.data:
        sd = cl.data.left
        e = sd.pst.shoot(q, q)
        print("L pst:", e)
        print("L cands:", [c.uid for c in sd.query(q, "plain", idx.epoch)])
        if e is not None:
            for w in sd.wall.path_nodes(e):
                print("   stair:", [(s.trap.uid, s.valid(), s.key) for s in w.stair])
    if cr in path and cr.data:
        sd = cr.data.right
        e = sd.pst.shoot(q, sd._key(q))
        print("R pst:", e)
        print("R cands:", [c.uid for c in sd.query(q, "plain", idx.epoch)])
    if home in path and home.data and home.data.mid:
        print("mid cands:", [c.uid for c in home.data.mid.query(q)])
        m = home.data.mid

        def dump(nnode, d=0):
            print("  " * d, "slot" if nnode.child is not None else "int",
                  nnode.lo_key, nnode.hi_key,
                  [(t.uid, t._gen == g) for _s, t, g in nnode.sides])
            if nnode.lo:
                dump(nnode.lo, d + 1)
            if nnode.hi:
                dump(nnode.hi, d + 1)
        dump(m.root)


if __name__ == "__main__":
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    slope = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    idx, live, i, q, got, want = find_failure(seed, slope)
    if i is None:
        print("no failure")
    else:
        print("fail at insert", i, "q:", q, "got:", got.uid if got else None)
        diagnose(idx, q, want)
