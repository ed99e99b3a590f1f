# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the hot kernels.

Must stay result-identical to ``pure.py``; the parity tests in
tests/test_kernels.py compare the two backends element by element.
"""

from libc.math cimport sqrt

import numpy as np
cimport numpy as cnp

from ..quaternion import LETTER_MATRICES_X5

cnp.import_array()

cdef long long[6][3][3] M5
_m5py = LETTER_MATRICES_X5
for _w in range(6):
    for _i in range(3):
        for _j in range(3):
            M5[_w][_i][_j] = _m5py[_w][_i][_j]


cdef inline long long _isqrt(long long v) nogil:
    cdef long long r
    if v < 0:
        return -1
    r = <long long> sqrt(<double> v)
    while (r + 1) * (r + 1) <= v:
        r += 1
    while r * r > v:
        r -= 1
    return r


def sweep_points(d):
    """Lattice points of norm d, lexicographically ordered."""
    cdef long long dd = d
    cdef long long r = _isqrt(dd)
    cdef long long x, y, z, rem_x, rem, ry
    cdef Py_ssize_t count = 0, idx = 0
    # first pass: count
    for x in range(-r, r + 1):
        rem_x = dd - x * x
        ry = _isqrt(rem_x)
        for y in range(-ry, ry + 1):
            rem = rem_x - y * y
            z = _isqrt(rem)
            if z * z == rem:
                count += 2 if z > 0 else 1
    out = np.empty((count, 3), dtype=np.int64)
    cdef long long[:, ::1] o = out
    for x in range(-r, r + 1):
        rem_x = dd - x * x
        ry = _isqrt(rem_x)
        for y in range(-ry, ry + 1):
            rem = rem_x - y * y
            z = _isqrt(rem)
            if z * z == rem:
                if z > 0:
                    o[idx, 0] = x; o[idx, 1] = y; o[idx, 2] = -z
                    idx += 1
                o[idx, 0] = x; o[idx, 1] = y; o[idx, 2] = z
                idx += 1
    return out


def sweep_count(d):
    cdef long long dd = d
    cdef long long r = _isqrt(dd)
    cdef long long x, y, z, rem_x, rem, ry
    cdef long long count = 0
    with nogil:
        for x in range(-r, r + 1):
            rem_x = dd - x * x
            ry = _isqrt(rem_x)
            for y in range(-ry, ry + 1):
                rem = rem_x - y * y
                z = _isqrt(rem)
                if z * z == rem:
                    count += 2 if z > 0 else 1
    return int(count)


def step_table(points):
    """Per-point integral letter images; see pure.step_table."""
    pts = np.ascontiguousarray(points, dtype=np.int64)
    cdef long long[:, ::1] p = pts
    cdef Py_ssize_t n = p.shape[0], i
    cdef int w, k, hit_count
    cdef long long u0, u1, u2
    counts = np.zeros(n, dtype=np.int64)
    letters = np.full((n, 2), -1, dtype=np.int8)
    images = np.zeros((n, 2, 3), dtype=np.int64)
    cdef long long[::1] c = counts
    cdef signed char[:, ::1] L = letters
    cdef long long[:, :, ::1] im = images
    with nogil:
        for i in range(n):
            hit_count = 0
            for w in range(6):
                u0 = M5[w][0][0] * p[i, 0] + M5[w][0][1] * p[i, 1] + M5[w][0][2] * p[i, 2]
                u1 = M5[w][1][0] * p[i, 0] + M5[w][1][1] * p[i, 1] + M5[w][1][2] * p[i, 2]
                u2 = M5[w][2][0] * p[i, 0] + M5[w][2][1] * p[i, 1] + M5[w][2][2] * p[i, 2]
                if u0 % 5 == 0 and u1 % 5 == 0 and u2 % 5 == 0:
                    if hit_count < 2:
                        L[i, hit_count] = w
                        im[i, hit_count, 0] = u0 / 5
                        im[i, hit_count, 1] = u1 / 5
                        im[i, hit_count, 2] = u2 / 5
                    hit_count += 1
            c[i] = hit_count
    return counts, letters, images


def nb_visit_hist(next_arc, arc_src, arc_tgt, in_set, steps):
    """Exact visit-count histogram over all marked non-backtracking
    paths with ``steps`` letters; see pure.nb_visit_hist."""
    cdef int st = steps
    in_arr = np.ascontiguousarray(in_set, dtype=np.uint8)
    cdef unsigned char[::1] ins = in_arr
    cdef Py_ssize_t n_vertices = ins.shape[0]
    cdef Py_ssize_t a, b, s, cc
    if st == 0:
        hist0 = np.zeros(2, dtype=np.uint64)
        n_in = int(in_arr.sum())
        hist0[0] = n_vertices - n_in
        hist0[1] = n_in
        return hist0
    na = np.ascontiguousarray(next_arc, dtype=np.int32)
    srcs = np.ascontiguousarray(arc_src, dtype=np.int32)
    tgts = np.ascontiguousarray(arc_tgt, dtype=np.int32)
    cdef int[:, ::1] nxt = na
    cdef int[::1] src = srcs
    cdef int[::1] tgt = tgts
    cdef Py_ssize_t n_arcs = nxt.shape[0]
    cdef int width = st + 2
    prev = np.empty((n_arcs, 5), dtype=np.int32)
    fill = np.zeros(n_arcs, dtype=np.int32)
    cdef int[:, ::1] pv = prev
    cdef int[::1] fl = fill
    for a in range(n_arcs):
        for s in range(5):
            b = nxt[a, s]
            pv[b, fl[b]] = a
            fl[b] += 1
    f = np.zeros((n_arcs, width), dtype=np.uint64)
    g = np.zeros((n_arcs, width), dtype=np.uint64)
    cdef unsigned long long[:, ::1] F = f
    cdef unsigned long long[:, ::1] G = g
    cdef unsigned long long total
    cdef int t, shift
    with nogil:
        for a in range(n_arcs):
            F[a, ins[src[a]] + ins[tgt[a]]] = 1
        for t in range(st - 1):
            for b in range(n_arcs):
                shift = ins[tgt[b]]
                for cc in range(width):
                    G[b, cc] = 0
                for s in range(5):
                    a = pv[b, s]
                    for cc in range(width - shift):
                        G[b, cc + shift] += F[a, cc]
            for b in range(n_arcs):
                for cc in range(width):
                    F[b, cc] = G[b, cc]
    hist = np.zeros(width, dtype=np.uint64)
    cdef unsigned long long[::1] H = hist
    for a in range(n_arcs):
        for cc in range(width):
            H[cc] += F[a, cc]
    return hist


cdef inline unsigned long long _mix(unsigned long long z) nogil:
    z = (z ^ (z >> 30)) * <unsigned long long> 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * <unsigned long long> 0x94D049BB133111EBULL
    return z ^ (z >> 31)

cdef unsigned long long _GAMMA = <unsigned long long> 0x9E3779B97F4A7C15ULL


def nb_visit_samples(next_arc, arc_src, arc_tgt, in_set, steps, n_walks, seed):
    """Visit counts of sampled non-backtracking walks; SplitMix64
    substream (seed, walk index), identical to the pure backend."""
    na = np.ascontiguousarray(next_arc, dtype=np.int32)
    tgts = np.ascontiguousarray(arc_tgt, dtype=np.int32)
    in_arr = np.ascontiguousarray(in_set, dtype=np.uint8)
    cdef int[:, ::1] nxt = na
    cdef int[::1] tgt = tgts
    cdef unsigned char[::1] ins = in_arr
    cdef long long n_vertices = ins.shape[0]
    cdef long long nw = n_walks
    cdef int st = steps
    cdef unsigned long long sd = <unsigned long long> (seed & 0xFFFFFFFFFFFFFFFF)
    out = np.empty(n_walks, dtype=np.int64)
    cdef long long[::1] o = out
    cdef long long j, v, visits
    cdef long long arc
    cdef int t
    cdef unsigned long long key
    with nogil:
        for j in range(nw):
            key = _mix(sd + (<unsigned long long> (j + 1)) * _GAMMA)
            v = <long long> (_mix(key + _GAMMA) % <unsigned long long> n_vertices)
            visits = ins[v]
            if st > 0:
                arc = 6 * v + <long long> (_mix(key + 2 * _GAMMA) % 6)
                visits += ins[tgt[arc]]
                for t in range(2, st + 1):
                    arc = nxt[arc, _mix(key + (<unsigned long long> (t + 1)) * _GAMMA) % 5]
                    visits += ins[tgt[arc]]
            o[j] = visits
    return out
