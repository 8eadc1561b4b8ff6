# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the pykernels oracle loops.

Same contracts as pointloc._kernels.pykernels; coordinates are pre-scaled
int64 with |coord| < 2**24, and every comparison is exact (products are
taken in 128-bit arithmetic)."""

import numpy as np

ctypedef long long i64
cdef extern from *:
    ctypedef long long i128 "__int128"

BACKEND = "c"

COORD_LIMIT = 1 << 24


cdef inline bint _lex_lt(i64 x1, i64 y1, i64 x2, i64 y2) nogil:
    return x1 < x2 or (x1 == x2 and y1 < y2)


cdef inline bint _lex_le(i64 x1, i64 y1, i64 x2, i64 y2) nogil:
    return x1 < x2 or (x1 == x2 and y1 <= y2)


def crossings_parity(i64 qx, i64 qy,
                     i64[::1] ax, i64[::1] ay, i64[::1] bx, i64[::1] by,
                     long[::1] walk1, long[::1] walk2, Py_ssize_t nwalks):
    cdef Py_ssize_t n = ax.shape[0]
    parity = np.zeros(nwalks, dtype=np.uint8)
    cdef unsigned char[::1] par = parity
    cdef bint on_edge = False
    cdef Py_ssize_t i
    cdef i128 orient
    cdef long w
    with nogil:
        for i in range(n):
            orient = (<i128>(bx[i] - ax[i])) * (qy - ay[i]) - \
                     (<i128>(by[i] - ay[i])) * (qx - ax[i])
            if orient == 0:
                if _lex_le(ax[i], ay[i], qx, qy) and _lex_le(qx, qy, bx[i], by[i]):
                    on_edge = True
                continue
            if orient < 0 and _lex_lt(ax[i], ay[i], qx, qy) and \
                    _lex_lt(qx, qy, bx[i], by[i]):
                w = walk1[i]
                if w >= 0:
                    par[w] ^= 1
                w = walk2[i]
                if w >= 0:
                    par[w] ^= 1
    return parity, on_edge


def rayshoot_best(i64 qx, i64 qy,
                  i64[::1] ax, i64[::1] ay, i64[::1] bx, i64[::1] by,
                  bint weak=False):
    cdef Py_ssize_t n = ax.shape[0]
    cdef Py_ssize_t best = -1
    cdef i64 bn = 0, bd = 1, num, den
    cdef Py_ssize_t i
    cdef i128 orient
    with nogil:
        for i in range(n):
            if not (_lex_le(ax[i], ay[i], qx, qy) and
                    _lex_le(qx, qy, bx[i], by[i])):
                continue
            if ax[i] == bx[i]:
                if not weak:
                    continue
                num = qy
                den = 1
            elif ax[i] == qx:
                # left-endpoint column: only a weak hit at q == a qualifies
                if not (weak and ay[i] == qy):
                    continue
                num = ay[i]
                den = 1
            else:
                orient = (<i128>(bx[i] - ax[i])) * (qy - ay[i]) - \
                         (<i128>(by[i] - ay[i])) * (qx - ax[i])
                if orient > 0 or (orient == 0 and not weak):
                    continue
                den = bx[i] - ax[i]
                num = ay[i] * den + (qx - ax[i]) * (by[i] - ay[i])
            if best < 0 or <i128>num * bd < <i128>bn * den:
                best = i
                bn = num
                bd = den
    return best


def stab_filter(i64 qx, i64 qy,
                i64[::1] txl_x, i64[::1] txl_y, i64[::1] txr_x, i64[::1] txr_y,
                i64[::1] tax, i64[::1] tay, i64[::1] tbx, i64[::1] tby,
                i64[::1] bax, i64[::1] bay, i64[::1] bbx, i64[::1] bby):
    cdef Py_ssize_t n = tax.shape[0]
    mask = np.zeros(n, dtype=bool)
    cdef unsigned char[::1] m = mask.view(np.uint8)
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            m[i] = _contains(qx, qy, txl_x[i], txl_y[i], txr_x[i], txr_y[i],
                             tax[i], tay[i], tbx[i], tby[i],
                             bax[i], bay[i], bbx[i], bby[i])
    return mask


cdef inline bint _contains(i64 qx, i64 qy, i64 lx, i64 ly, i64 rx, i64 ry,
                           i64 tax, i64 tay, i64 tbx, i64 tby,
                           i64 bax, i64 bay, i64 bbx, i64 bby) nogil:
    if not (_lex_le(lx, ly, qx, qy) and _lex_le(qx, qy, rx, ry)):
        return False
    if (<i128>(tbx - tax)) * (qy - tay) - (<i128>(tby - tay)) * (qx - tax) > 0:
        return False
    if (<i128>(bbx - bax)) * (qy - bay) - (<i128>(bby - bay)) * (qx - bax) < 0:
        return False
    return True


def stab_best(i64 qx, i64 qy,
              i64[::1] txl_x, i64[::1] txl_y, i64[::1] txr_x, i64[::1] txr_y,
              i64[::1] tax, i64[::1] tay, i64[::1] tbx, i64[::1] tby,
              i64[::1] bax, i64[::1] bay, i64[::1] bbx, i64[::1] bby,
              long[::1] owner, long[::1] uid):
    cdef Py_ssize_t n = tax.shape[0]
    cdef Py_ssize_t best = -1
    cdef i64 bn = 0, bd = 1, num, den
    cdef Py_ssize_t i
    cdef i128 d
    cdef int c
    with nogil:
        for i in range(n):
            if not _contains(qx, qy, txl_x[i], txl_y[i], txr_x[i], txr_y[i],
                             tax[i], tay[i], tbx[i], tby[i],
                             bax[i], bay[i], bbx[i], bby[i]):
                continue
            if tax[i] == tbx[i]:
                num = qy
                den = 1
            else:
                den = tbx[i] - tax[i]
                num = tay[i] * den + (qx - tax[i]) * (tby[i] - tay[i])
            if best < 0:
                c = -1
            else:
                d = <i128>num * bd - <i128>bn * den
                if d < 0:
                    c = -1
                elif d > 0:
                    c = 1
                elif owner[i] != owner[best]:
                    c = -1 if owner[i] < owner[best] else 1
                else:
                    c = -1 if uid[i] < uid[best] else 1
            if c < 0:
                best = i
                bn = num
                bd = den
    return best


def proper_crossings(i64 sax, i64 say, i64 sbx, i64 sby,
                     i64[::1] ax, i64[::1] ay, i64[::1] bx, i64[::1] by):
    cdef Py_ssize_t n = ax.shape[0]
    mask = np.zeros(n, dtype=bool)
    cdef unsigned char[::1] m = mask.view(np.uint8)
    cdef Py_ssize_t i
    cdef int o1, o2, o3, o4
    for i in range(n):
        if ax[i] == sax and ay[i] == say and bx[i] == sbx and by[i] == sby:
            m[i] = True
            continue
        o1 = _osign(sax, say, sbx, sby, ax[i], ay[i])
        o2 = _osign(sax, say, sbx, sby, bx[i], by[i])
        o3 = _osign(ax[i], ay[i], bx[i], by[i], sax, say)
        o4 = _osign(ax[i], ay[i], bx[i], by[i], sbx, sby)
        if o1 != o2 and o3 != o4 and o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0:
            m[i] = True
        elif o1 == 0 or o2 == 0 or o3 == 0 or o4 == 0:
            m[i] = _touch_crossing(sax, say, sbx, sby,
                                   ax[i], ay[i], bx[i], by[i], o1, o2, o3, o4)
    return mask


cdef inline int _osign(i64 px, i64 py, i64 qx, i64 qy, i64 rx, i64 ry) nogil:
    cdef i128 d = (<i128>(qx - px)) * (ry - py) - (<i128>(qy - py)) * (rx - px)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


cdef bint _touch_crossing(i64 sax, i64 say, i64 sbx, i64 sby,
                          i64 ax, i64 ay, i64 bx, i64 by,
                          int o1, int o2, int o3, int o4) nogil:
    # A collinear or endpoint contact is a violation unless the contact
    # point is an endpoint shared by both segments.
    if o1 == 0 and _lex_le(sax, say, ax, ay) and _lex_le(ax, ay, sbx, sby):
        if not ((ax == sax and ay == say) or (ax == sbx and ay == sby)):
            return True
    if o2 == 0 and _lex_le(sax, say, bx, by) and _lex_le(bx, by, sbx, sby):
        if not ((bx == sax and by == say) or (bx == sbx and by == sby)):
            return True
    if o3 == 0 and _lex_le(ax, ay, sax, say) and _lex_le(sax, say, bx, by):
        if not ((sax == ax and say == ay) or (sax == bx and say == by)):
            return True
    if o4 == 0 and _lex_le(ax, ay, sbx, sby) and _lex_le(sbx, sby, bx, by):
        if not ((sbx == ax and sby == ay) or (sbx == bx and sby == by)):
            return True
    return False
