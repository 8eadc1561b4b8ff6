"""Pure-python (numpy) kernels for the brute-force oracles.

All functions take pre-scaled int64 coordinate arrays (the caller scales
rationals to integers and guarantees |coord| < 2**24 so that every product
below stays inside int64).  Exact sign arithmetic only; the final argmin
steps fall back to python big ints, so results are exact regardless.

Segment arrays are stored left-to-right in shear order: (ax, ay) < (bx, by)
lexicographically.
"""

from __future__ import annotations

import numpy as np

BACKEND = "py"

# Largest coordinate magnitude the int64 paths accept.
COORD_LIMIT = 1 << 24


def _lex_lt(x1, y1, x2, y2):
    return (x1 < x2) | ((x1 == x2) & (y1 < y2))


def _lex_le(x1, y1, x2, y2):
    return (x1 < x2) | ((x1 == x2) & (y1 <= y2))


def crossings_parity(qx, qy, ax, ay, bx, by, walk1, walk2, nwalks):
    """Upward-ray crossing parity per boundary walk.

    walk1/walk2 give the (at most two) walk ids each edge participates in,
    -1 for none.  Returns (parity uint8[nwalks], on_edge: bool).
    """
    # orientation(a, b, q): sign of (b-a) x (q-a); below the edge <=> negative
    orient = (bx - ax) * (qy - ay) - (by - ay) * (qx - ax)
    span_strict = _lex_lt(ax, ay, qx, qy) & _lex_lt(qx, qy, bx, by)
    crossing = span_strict & (orient < 0)
    on_edge = bool(np.any((orient == 0) & _lex_le(ax, ay, qx, qy)
                          & _lex_le(qx, qy, bx, by)))
    parity = np.zeros(nwalks, dtype=np.uint8)
    if crossing.any():
        idx = np.nonzero(crossing)[0]
        for w in (walk1, walk2):
            ws = w[idx]
            ws = ws[ws >= 0]
            if len(ws):
                np.bitwise_xor.at(parity, ws, 1)
    return parity, on_edge


def _height_key(iax, iay, ibx, iby, qx):
    """Exact (numerator, denominator>0) of the edge height at qx (python ints)."""
    dx = ibx - iax
    return iay * dx + (qx - iax) * (iby - iay), dx


def rayshoot_best(qx, qy, ax, ay, bx, by, weak=False):
    """Index of the lowest edge hit by the upward ray from q, or -1.

    Vertical edges are hit only if q lies on them (shear semantics); with
    weak=True a hit at height q.y (q on the edge) is admitted.
    """
    n = len(ax)
    if n == 0:
        return -1
    in_span = _lex_le(ax, ay, qx, qy) & _lex_le(qx, qy, bx, by)
    orient = (bx - ax) * (qy - ay) - (by - ay) * (qx - ax)
    vertical = ax == bx
    above = in_span & ~vertical & ((orient < 0) | (weak & (orient == 0)))
    # Left-endpoint column: the sheared ray passes right of the endpoint, so
    # the only admissible hit there is q on the endpoint itself (weak).
    left_col = in_span & ~vertical & (ax == qx)
    above &= ~left_col | (weak & (ay == qy))
    if weak:
        above |= in_span & vertical  # q on a vertical edge
    idx = np.nonzero(above)[0]
    if len(idx) == 0:
        return -1
    best = -1
    bn = bd = 0
    for i in idx.tolist():
        if ax[i] == bx[i]:
            num, den = int(qy), 1
        elif bx[i] == qx:
            num, den = int(by[i]), 1
        else:
            num, den = _height_key(int(ax[i]), int(ay[i]), int(bx[i]), int(by[i]), int(qx))
        if best < 0 or num * bd < bn * den:
            best, bn, bd = i, num, den
    return best


def stab_filter(qx, qy, txl_x, txl_y, txr_x, txr_y,
                tax, tay, tbx, tby, bax, bay, bbx, bby):
    """Mask of trapezoids containing q (closed containment, shear walls)."""
    m = _lex_le(txl_x, txl_y, qx, qy) & _lex_le(qx, qy, txr_x, txr_y)
    top_ok = (tbx - tax) * (qy - tay) - (tby - tay) * (qx - tax) <= 0
    bot_ok = (bbx - bax) * (qy - bay) - (bby - bay) * (qx - bax) >= 0
    return m & top_ok & bot_ok


def stab_best(qx, qy, txl_x, txl_y, txr_x, txr_y,
              tax, tay, tbx, tby, bax, bay, bbx, bby, owner, uid):
    """Index of the lowest trapezoid stabbed by q (exact, with the
    owner-then-uid tie rule), or -1."""
    mask = stab_filter(qx, qy, txl_x, txl_y, txr_x, txr_y,
                       tax, tay, tbx, tby, bax, bay, bbx, bby)
    idx = np.nonzero(mask)[0]
    if len(idx) == 0:
        return -1
    best = -1
    bn = bd = 0
    for i in idx.tolist():
        iax, iay, ibx, iby = int(tax[i]), int(tay[i]), int(tbx[i]), int(tby[i])
        if iax == ibx:
            num, den = int(qy), 1
        else:
            num, den = _height_key(iax, iay, ibx, iby, int(qx))
        if best < 0:
            c = -1
        else:
            d = num * bd - bn * den
            c = -1 if d < 0 else (1 if d > 0 else 0)
            if c == 0:
                if owner[i] != owner[best]:
                    c = -1 if owner[i] < owner[best] else 1
                else:
                    c = -1 if uid[i] < uid[best] else 1
        if c < 0:
            best, bn, bd = i, num, den
    return best


def proper_crossings(sax, say, sbx, sby, ax, ay, bx, by):
    """Mask of edges whose closed segments meet segment s anywhere except at
    a shared endpoint.  s given as scalars, edges as arrays."""
    o1 = np.sign((sbx - sax) * (ay - say) - (sby - say) * (ax - sax))
    o2 = np.sign((sbx - sax) * (by - say) - (sby - say) * (bx - sax))
    o3 = np.sign((bx - ax) * (say - ay) - (by - ay) * (sax - ax))
    o4 = np.sign((bx - ax) * (sby - ay) - (by - ay) * (sbx - ax))
    proper = (o1 != o2) & (o3 != o4) & (o1 != 0) & (o2 != 0) & (o3 != 0) & (o4 != 0)
    touchy = (o1 == 0) | (o2 == 0) | (o3 == 0) | (o4 == 0)
    out = np.asarray(proper, dtype=bool).copy()
    out |= (ax == sax) & (ay == say) & (bx == sbx) & (by == sby)
    for i in np.nonzero(touchy & ~proper)[0].tolist():
        touch = set()
        if o1[i] == 0 and _scalar_le(sax, say, ax[i], ay[i]) and _scalar_le(ax[i], ay[i], sbx, sby):
            touch.add((int(ax[i]), int(ay[i])))
        if o2[i] == 0 and _scalar_le(sax, say, bx[i], by[i]) and _scalar_le(bx[i], by[i], sbx, sby):
            touch.add((int(bx[i]), int(by[i])))
        if o3[i] == 0 and _scalar_le(ax[i], ay[i], sax, say) and _scalar_le(sax, say, bx[i], by[i]):
            touch.add((int(sax), int(say)))
        if o4[i] == 0 and _scalar_le(ax[i], ay[i], sbx, sby) and _scalar_le(sbx, sby, bx[i], by[i]):
            touch.add((int(sbx), int(sby)))
        shared = {(int(sax), int(say)), (int(sbx), int(sby))} & \
                 {(int(ax[i]), int(ay[i])), (int(bx[i]), int(by[i]))}
        if any(p not in shared for p in touch):
            out[i] = True
    return out


def _scalar_le(x1, y1, x2, y2):
    return (x1, y1) <= (x2, y2)
