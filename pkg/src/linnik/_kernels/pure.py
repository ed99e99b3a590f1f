"""Pure-Python (numpy) implementation of the hot kernels.

Semantics are specified here; ``_native.pyx`` mirrors them exactly.
All arithmetic is integer-exact: square roots are validated by
squaring, never trusted from floating point.
"""

import math

import numpy as np

from ..quaternion import LETTER_MATRICES_X5
from ..rng import draw, stream_key

# (6,3,3) int64 table of the denominator-cleared letter matrices
M5 = np.array(LETTER_MATRICES_X5, dtype=np.int64)


def _isqrt_array(values):
    """Exact floor square roots of a nonnegative int64 array."""
    r = np.sqrt(values.astype(np.float64)).astype(np.int64)
    r = np.where((r + 1) * (r + 1) <= values, r + 1, r)
    r = np.where(r * r > values, r - 1, r)
    return r


def sweep_points(d):
    """All integer triples of norm d as an (m, 3) int64 array, in
    lexicographic order."""
    r = math.isqrt(d)
    chunks = []
    for x in range(-r, r + 1):
        rem_x = d - x * x
        ry = math.isqrt(rem_x)
        ys = np.arange(-ry, ry + 1, dtype=np.int64)
        rem = rem_x - ys * ys
        z = _isqrt_array(rem)
        ok = z * z == rem
        ys = ys[ok]
        z = z[ok]
        if ys.size == 0:
            continue
        # for each y emit (x, y, -z) then (x, y, z); collapse z == 0
        pos = np.count_nonzero(z)
        out = np.empty((ys.size + pos, 3), dtype=np.int64)
        idx = 0
        nz = z > 0
        n_nz = int(nz.sum())
        if n_nz:
            two = np.empty((n_nz, 2, 3), dtype=np.int64)
            two[:, :, 0] = x
            two[:, 0, 1] = ys[nz]
            two[:, 1, 1] = ys[nz]
            two[:, 0, 2] = -z[nz]
            two[:, 1, 2] = z[nz]
            out[: 2 * n_nz] = two.reshape(-1, 3)
            idx = 2 * n_nz
        n_z0 = ys.size - n_nz
        if n_z0:
            out[idx:, 0] = x
            out[idx:, 1] = ys[~nz]
            out[idx:, 2] = 0
        chunks.append(out)
    if not chunks:
        return np.empty((0, 3), dtype=np.int64)
    points = np.concatenate(chunks)
    order = np.lexsort((points[:, 2], points[:, 1], points[:, 0]))
    return points[order]


def sweep_count(d):
    """|{(x,y,z) : x^2+y^2+z^2 = d}| without materializing the points."""
    r = math.isqrt(d)
    total = 0
    for x in range(-r, r + 1):
        rem_x = d - x * x
        ry = math.isqrt(rem_x)
        ys = np.arange(-ry, ry + 1, dtype=np.int64)
        rem = rem_x - ys * ys
        z = _isqrt_array(rem)
        ok = z * z == rem
        total += int(ok.sum()) + int((z[ok] > 0).sum())
    return total


def step_table(points):
    """Integral images of each point under the six letters.

    Returns (counts, letters, images) where counts[i] is the number of
    letters w with w.p integral, letters[i] lists the first two such
    letters in enum order (-1 padded) and images[i][k] the image under
    letters[i][k] (zeros where padded).
    """
    pts = np.ascontiguousarray(points, dtype=np.int64)
    n = pts.shape[0]
    # images5[w] = 5 * (letter w applied to each point)
    images5 = np.einsum("wij,nj->wni", M5, pts)
    divisible = (images5 % 5 == 0).all(axis=2)  # (6, n)
    counts = divisible.sum(axis=0).astype(np.int64)
    letters = np.full((n, 2), -1, dtype=np.int8)
    images = np.zeros((n, 2, 3), dtype=np.int64)
    # stable argsort over ~divisible puts hit letters first, in enum order
    first_two = np.argsort(~divisible.T, axis=1, kind="stable")[:, :2]
    for k in range(2):
        w = first_two[:, k]
        hit = divisible.T[np.arange(n), w]
        letters[hit, k] = w[hit].astype(np.int8)
        images[hit, k] = images5[w[hit], np.nonzero(hit)[0]] // 5
    return counts, letters, images


def _prev_table(next_arc):
    """Reverse the 5-regular arc adjacency: prev[b] lists the five arcs
    a with b among next_arc[a]."""
    n_arcs = next_arc.shape[0]
    prev = np.empty((n_arcs, 5), dtype=np.int32)
    fill = np.zeros(n_arcs, dtype=np.int32)
    for a in range(n_arcs):
        for s in range(5):
            b = next_arc[a, s]
            prev[b, fill[b]] = a
            fill[b] += 1
    if not (fill == 5).all():
        raise AssertionError("arc graph is not 5-in-regular")
    return prev


def nb_visit_hist(next_arc, arc_src, arc_tgt, in_set, steps):
    """Histogram of |path ∩ B| over all marked non-backtracking paths
    with ``steps`` letters (``steps + 1`` vertices).

    in_set is a 0/1 uint8 vector over vertices.  Entry c of the result
    counts the paths visiting B exactly c times (counted with vertex
    multiplicity along the path).  Exact in uint64; callers budget-gate
    the total path count.
    """
    in_set = np.asarray(in_set, dtype=np.uint8)
    if steps == 0:
        hist = np.zeros(2, dtype=np.uint64)
        n_in = int(in_set.sum())
        hist[0] = len(in_set) - n_in
        hist[1] = n_in
        return hist
    n_arcs = next_arc.shape[0]
    width = steps + 2
    src_in = in_set[arc_src].astype(np.int64)
    tgt_in = in_set[arc_tgt].astype(np.int64)
    f = np.zeros((n_arcs, width), dtype=np.uint64)
    f[np.arange(n_arcs), src_in + tgt_in] = 1
    prev = _prev_table(next_arc)
    for _ in range(steps - 1):
        inflow = f[prev].sum(axis=1, dtype=np.uint64)
        g = np.zeros_like(f)
        plain = tgt_in == 0
        g[plain] = inflow[plain]
        g[~plain, 1:] = inflow[~plain, :-1]
        f = g
    return f.sum(axis=0, dtype=np.uint64)


def nb_visit_samples(next_arc, arc_src, arc_tgt, in_set, steps, n_walks, seed):
    """Visit counts of ``n_walks`` sampled non-backtracking walks.

    Walk j draws from the SplitMix64 substream (seed, j): uniform start
    vertex, uniform first letter, then uniform choice among the five
    continuations.  Returns an (n_walks,) int64 array.
    """
    n_vertices = len(in_set)
    out = np.empty(n_walks, dtype=np.int64)
    for j in range(n_walks):
        key = stream_key(seed, j)
        v = draw(key, 0) % n_vertices
        visits = int(in_set[v])
        if steps == 0:
            out[j] = visits
            continue
        arc = 6 * v + (draw(key, 1) % 6)
        visits += int(in_set[arc_tgt[arc]])
        for t in range(2, steps + 1):
            arc = next_arc[arc, draw(key, t) % 5]
            visits += int(in_set[arc_tgt[arc]])
        out[j] = visits
    return out
