"""Deviation statistics mod q and on spherical caps, plus the exact
integer Hecke tree.

dev(cell) = observed mass / predicted mass - 1, where the prediction is
uniform over the sphere mod q (fibers of reduction) or Lebesgue over
the unit sphere (caps, normalized to total area 1).  Cap membership is
decided in double precision with an inclusive boundary; every report
embeds its parameters and seed.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import default_budgets
from .errors import BudgetError, PreconditionError
from .lattice import enumerate_hd_array
from .modq_graph import enumerate_hdq
from .quaternion import LETTER_MATRICES_X5
from .rng import stream_key, unit_vector


@dataclass(frozen=True)
class DeviationStats:
    """Per-cell deviations with exact bookkeeping.

    cells maps a cell key (residue triple, or center index) to a
    (count, deviation) pair; bookkeeping_exact certifies that the
    deviations recombine to the total mass as exact rationals.
    """

    kind: str
    d: int
    parameter: float | int  # q, or cap radius rho
    cells: tuple
    max_abs_deviation: float
    threshold: float | None
    fraction_above_threshold: float | None
    confidence_halfwidth: float | None
    n_samples: int | None
    seed: int | None
    bookkeeping_exact: bool

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "d": self.d,
            "parameter": self.parameter,
            "cells": [
                {"cell": list(cell), "count": count, "deviation": dev}
                for cell, count, dev in self.cells
            ],
            "max_abs_deviation": self.max_abs_deviation,
            "threshold": self.threshold,
            "fraction_above_threshold": self.fraction_above_threshold,
            "confidence_halfwidth": self.confidence_halfwidth,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "bookkeeping_exact": self.bookkeeping_exact,
        }

    def to_rows(self):
        return [
            {"cell": " ".join(str(c) for c in cell), "count": count, "deviation": dev}
            for cell, count, dev in self.cells
        ]


def dev_mod_q(d, q, threshold=None, budgets=None):
    """Fiber sizes of reduction mod q over every residue vertex, with
    deviations from uniformity.

    Empty fibers count too (deviation -1); the partition identity
    sum(fibers) = |H_d| and the mean identity are checked in exact
    arithmetic.
    """
    budgets = budgets or default_budgets()
    if math.gcd(q, 30 * d) != 1:
        raise PreconditionError(f"q = {q} must be coprime to 30 d")
    points = enumerate_hd_array(d, budgets)
    if len(points) == 0:
        raise PreconditionError(f"H_d is empty for d = {d}")
    verts = enumerate_hdq(d, q)
    codes = verts[:, 0] * q * q + verts[:, 1] * q + verts[:, 2]
    reduced = np.mod(points, q)
    red_codes = reduced[:, 0] * q * q + reduced[:, 1] * q + reduced[:, 2]
    pos = np.searchsorted(codes, red_codes)
    if not (codes[pos] == red_codes).all():
        raise AssertionError("a reduced point missed the sphere mod q")
    counts = np.bincount(pos, minlength=len(verts))
    if int(counts.sum()) != len(points):
        raise AssertionError("fibers do not partition H_d")
    expected = Fraction(len(points), len(verts))
    mean = sum(
        (Fraction(int(c)) / expected) for c in counts
    ) / len(verts)
    bookkeeping = mean == 1
    devs = [float(Fraction(int(c)) / expected - 1) for c in counts]
    cells = tuple(
        (tuple(int(x) for x in v), int(c), dev)
        for v, c, dev in zip(verts, counts, devs)
    )
    fraction = None
    if threshold is not None:
        fraction = sum(1 for dev in devs if abs(dev) > threshold) / len(devs)
    return DeviationStats(
        kind="mod_q",
        d=d,
        parameter=q,
        cells=cells,
        max_abs_deviation=max(abs(dev) for dev in devs),
        threshold=threshold,
        fraction_above_threshold=fraction,
        confidence_halfwidth=None,
        n_samples=None,
        seed=None,
        bookkeeping_exact=bookkeeping,
    )


def cap_area(rho):
    """Normalized area of a spherical cap of radius rho (area(S^2)=1)."""
    if not 0 < rho <= math.pi:
        raise PreconditionError("cap radius must lie in (0, pi]")
    return (1.0 - math.cos(rho)) / 2.0


def _cap_count(points, d, center, rho):
    """Points with angle(x, center) <= rho, inclusive boundary."""
    c = np.asarray(center, dtype=np.float64)
    c = c / np.linalg.norm(c)
    dots = points @ c
    return int((dots >= math.sqrt(d) * math.cos(rho)).sum())


def cap_deviation(d, center, rho, budgets=None):
    """dev of one cap: fraction of H_d inside over area, minus 1."""
    budgets = budgets or default_budgets()
    points = enumerate_hd_array(d, budgets)
    if len(points) == 0:
        raise PreconditionError(f"H_d is empty for d = {d}")
    area = cap_area(rho)
    count = _cap_count(points, d, center, rho)
    return (count / len(points)) / area - 1.0


def cap_stats(d, rho, n_centers, seed, eta, budgets=None):
    """Monte-Carlo measure of centers whose cap deviation reaches eta.

    Centers are uniform on the sphere from the (seed)-keyed stream; the
    report carries a normal-approximation 95% half-width.
    """
    budgets = budgets or default_budgets()
    if n_centers < 1:
        raise PreconditionError("n_centers must be >= 1")
    points = enumerate_hd_array(d, budgets)
    if len(points) == 0:
        raise PreconditionError(f"H_d is empty for d = {d}")
    area = cap_area(rho)
    threshold_dot = math.sqrt(d) * math.cos(rho)
    key = stream_key(seed, 0)
    cells = []
    bad = 0
    for i in range(n_centers):
        center = np.array(unit_vector(key, i))
        count = int((points @ center >= threshold_dot).sum())
        dev = (count / len(points)) / area - 1.0
        if abs(dev) >= eta:
            bad += 1
        cells.append(((i,), count, dev))
    fraction = bad / n_centers
    halfwidth = 1.96 * math.sqrt(max(fraction * (1 - fraction), 0.0) / n_centers)
    return DeviationStats(
        kind="caps",
        d=d,
        parameter=rho,
        cells=tuple(cells),
        max_abs_deviation=max(abs(dev) for _, _, dev in cells),
        threshold=eta,
        fraction_above_threshold=fraction,
        confidence_halfwidth=halfwidth,
        n_samples=n_centers,
        seed=seed,
        bookkeeping_exact=True,
    )


@dataclass(frozen=True)
class HeckeNode:
    """Word-indexed tree node: an integer vector of norm d * 25^depth."""

    vector: tuple
    depth: int
    word: tuple


def hecke_layer(x, depth, budgets=None):
    """All nodes at the given depth of the tree over x: images under
    the 6 * 5^(depth-1) reduced words, by exact integer arithmetic
    (each step applies a denominator-cleared letter matrix)."""
    budgets = budgets or default_budgets()
    x = tuple(int(v) for v in x)
    if depth == 0:
        return [HeckeNode(vector=x, depth=0, word=())]
    count = 6 * 5 ** (depth - 1)
    if count > budgets.path_budget:
        raise BudgetError(f"{count} nodes exceed the path budget")
    mats = np.array(LETTER_MATRICES_X5, dtype=np.int64)
    layer = [(np.array(x, dtype=object), ())]
    for _ in range(depth):
        nxt = []
        for vec, word in layer:
            banned = word[-1] ^ 1 if word else -1
            for w in range(6):
                if w == banned:
                    continue
                nxt.append((mats[w].astype(object) @ vec, word + (w,)))
        layer = nxt
    norm0 = sum(v * v for v in x)
    out = []
    for vec, word in layer:
        node = HeckeNode(
            vector=tuple(int(v) for v in vec), depth=depth, word=word
        )
        if sum(v * v for v in node.vector) != norm0 * 25**depth:
            raise AssertionError("norm identity failed on a tree node")
        out.append(node)
    return out


def hecke_dedup_report(nodes):
    """Words may collide on equal vectors (the shadowing phenomenon);
    report distinct vector count."""
    return {"words": len(nodes), "distinct_vectors": len({n.vector for n in nodes})}


def hecke_equidist_check(x, depth, caps, budgets=None):
    """Per-cap |empirical direction mass - cap area| at one depth."""
    nodes = hecke_layer(x, depth, budgets)
    scale = math.sqrt(sum(v * v for v in x)) * 5**depth
    dirs = np.array([n.vector for n in nodes], dtype=np.float64) / scale
    out = []
    for center, rho in caps:
        c = np.asarray(center, dtype=np.float64)
        c = c / np.linalg.norm(c)
        frac = float((dirs @ c >= math.cos(rho)).mean())
        out.append(abs(frac - cap_area(rho)))
    return out
