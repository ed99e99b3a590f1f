"""Arc graphs, the quadratic spectral transfer, and large-deviation
statistics of non-backtracking walks.

The arc graph has one vertex per directed edge (vertex, letter); arc a
feeds arc b when b starts where a ends and b is not the reversal of a,
so walks on it are exactly the non-backtracking walks downstairs and
every arc has five continuations.  Its normalized spectrum is predicted
from the base spectrum: each base eigenvalue t of A/6 contributes the
two roots of z^2 - (6t/5) z + 1/5, and the complement carries the
reversal action with eigenvalues +-1/5.  We verify the prediction by
comparing power traces, avoiding a nonsymmetric eigensolver.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .config import default_budgets
from .errors import BudgetError, PreconditionError
from .rng import draw, stream_key


@dataclass(eq=False)
class ArcGraph:
    """Directed arcs of a six-letter graph; arc index is 6*vertex +
    letter."""

    n_vertices: int
    src: np.ndarray
    tgt: np.ndarray
    letter: np.ndarray
    reversal: np.ndarray
    next_arc: np.ndarray  # (6n, 5) int32

    @property
    def n_arcs(self):
        return 6 * self.n_vertices

    def adjacency(self):
        """Dense 0/1 arc adjacency (row = from-arc)."""
        mat = np.zeros((self.n_arcs, self.n_arcs), dtype=np.int64)
        rows = np.repeat(np.arange(self.n_arcs), 5)
        mat[rows, self.next_arc.ravel()] = 1
        return mat


def arc_graph(g):
    n = g.n_vertices
    arcs = 6 * n
    src = np.repeat(np.arange(n, dtype=np.int32), 6)
    letter = np.tile(np.arange(6, dtype=np.int8), n)
    tgt = np.empty(arcs, dtype=np.int32)
    for w in range(6):
        tgt[w::6] = g.letter_target[w]
    reversal = 6 * tgt + (letter ^ 1).astype(np.int32)
    next_arc = np.empty((arcs, 5), dtype=np.int32)
    for w in range(6):
        allowed = [u for u in range(6) if u != (w ^ 1)]
        for k, u in enumerate(allowed):
            next_arc[w::6, k] = 6 * tgt[w::6] + u
    return ArcGraph(
        n_vertices=n, src=src, tgt=tgt, letter=letter,
        reversal=reversal, next_arc=next_arc,
    )


def predicted_arc_spectrum(
    base_eigs, vertex_count, arc_count, arc_trace1=None, arc_trace2=None
):
    """Predicted eigenvalue multiset of the normalized arc operator.

    base_eigs are the 6-normalized eigenvalues of the base graph.  The
    +-1/5 multiplicities on the complement of the transported space are
    solved from the first two power traces when given (two equations,
    two unknowns), else split evenly; either way they must fill exactly
    arc_count - 2*vertex_count dimensions.
    """
    base = np.asarray(base_eigs, dtype=np.float64)
    if len(base) != vertex_count:
        raise PreconditionError(
            f"{len(base)} base eigenvalues for {vertex_count} vertices"
        )
    if arc_count != 6 * vertex_count:
        raise PreconditionError("arc count must be 6 * vertex count")
    s = 6.0 * base / 5.0
    disc = s * s - 4.0 / 5.0
    sqrt_disc = np.sqrt(disc.astype(complex))
    roots = np.concatenate([(s + sqrt_disc) / 2.0, (s - sqrt_disc) / 2.0])
    new_dim = arc_count - 2 * vertex_count
    sum_old1 = float(s.sum())
    sum_old2 = float((s * s - 2.0 / 5.0).sum())
    if arc_trace1 is None:
        p_minus_m = 0.0
    else:
        p_minus_m = 5.0 * (arc_trace1 - sum_old1)
    if arc_trace2 is None:
        p_plus_m = float(new_dim)
    else:
        p_plus_m = 25.0 * (arc_trace2 - sum_old2)
    mult_plus = round((p_plus_m + p_minus_m) / 2.0)
    mult_minus = round((p_plus_m - p_minus_m) / 2.0)
    if (
        abs(p_plus_m + p_minus_m - 2 * mult_plus) > 1e-6 * max(1, arc_count)
        or mult_plus < 0
        or mult_minus < 0
        or mult_plus + mult_minus != new_dim
    ):
        raise PreconditionError(
            f"complement multiplicities ({p_plus_m}, {p_minus_m}) do not fill "
            f"{new_dim} dimensions"
        )
    extra = np.concatenate(
        [np.full(mult_plus, 0.2), np.full(mult_minus, -0.2)]
    ).astype(complex)
    return np.concatenate([roots, extra])


def power_trace_check(ag, predicted, max_power, budgets=None):
    """Max over k <= max_power of |tr(T'^k) - sum(predicted^k)|.

    Traces of the unnormalized arc operator are computed by exact
    integer matrix powers and divided by 5^k.
    """
    budgets = budgets or default_budgets()
    if max_power < 1:
        raise PreconditionError("max_power must be >= 1")
    if ag.n_arcs > budgets.dense_cap:
        raise BudgetError(
            f"{ag.n_arcs} arcs exceed the dense powering cap {budgets.dense_cap}"
        )
    mat = ag.adjacency()
    power = np.eye(ag.n_arcs, dtype=np.int64)
    pred = np.asarray(predicted, dtype=complex)
    worst = 0.0
    for k in range(1, max_power + 1):
        power = power @ mat
        exact = Fraction(int(np.trace(power)), 5**k)
        approx = pred**k
        total = complex(approx.sum())
        if abs(total.imag) > 1e-6:
            raise AssertionError("predicted spectrum is not conjugation-closed")
        worst = max(worst, abs(float(exact) - total.real))
    return worst


def nominal_path_count(n_vertices, length):
    """Directed marked non-backtracking paths with ``length`` letters."""
    if length == 0:
        return n_vertices
    return n_vertices * 6 * 5 ** (length - 1)


def enumerate_nb_paths(g, length, budgets=None):
    """Iterator over all marked non-backtracking paths with ``length``
    letters, as (start, letters, vertices); start ascending, words in
    enum order."""
    budgets = budgets or default_budgets()
    total = nominal_path_count(g.n_vertices, length)
    if total > budgets.path_budget:
        raise BudgetError(
            f"{total} paths exceed the path budget {budgets.path_budget}"
        )
    lt = g.letter_target
    if length == 0:
        for v in range(g.n_vertices):
            yield v, (), (v,)
        return

    def walk(prefix_letters, prefix_vertices):
        if len(prefix_letters) == length:
            yield tuple(prefix_letters), tuple(prefix_vertices)
            return
        banned = prefix_letters[-1] ^ 1 if prefix_letters else -1
        v = prefix_vertices[-1]
        for w in range(6):
            if w == banned:
                continue
            prefix_letters.append(w)
            prefix_vertices.append(int(lt[w, v]))
            yield from walk(prefix_letters, prefix_vertices)
            prefix_letters.pop()
            prefix_vertices.pop()

    for v in range(g.n_vertices):
        for letters, vertices in walk([], [v]):
            yield v, letters, vertices


def centered_path_count(g, half_length, budgets=None):
    """Exhaustive count of undirected centered non-backtracking paths
    of length 2*half_length (each direction-reversal pair counted
    once)."""
    if half_length < 1:
        raise PreconditionError("half_length must be >= 1")
    count = 0
    for start, letters, vertices in enumerate_nb_paths(g, 2 * half_length, budgets):
        rev_start = vertices[-1]
        rev_letters = tuple(w ^ 1 for w in reversed(letters))
        key = (start, letters)
        rev_key = (rev_start, rev_letters)
        if key == rev_key:
            raise AssertionError("a reduced word cannot be its own reversal")
        if key < rev_key:
            count += 1
    return count


def sample_nb_walk(g, length, seed, walk_index=0):
    """One uniformly sampled marked non-backtracking path: uniform
    start, uniform first letter, uniform non-inverse continuations;
    deterministic in (seed, walk_index)."""
    key = stream_key(seed, walk_index)
    n = g.n_vertices
    v = draw(key, 0) % n
    vertices = [int(v)]
    letters = []
    if length > 0:
        w = draw(key, 1) % 6
        letters.append(int(w))
        vertices.append(int(g.letter_target[w, v]))
        for t in range(2, length + 1):
            banned = letters[-1] ^ 1
            allowed = [u for u in range(6) if u != banned]
            w = allowed[draw(key, t) % 5]
            letters.append(int(w))
            vertices.append(int(g.letter_target[w, vertices[-1]]))
    return vertices[0], tuple(letters), tuple(vertices)


@dataclass(frozen=True)
class LargeDeviationReport:
    """Outcome of one large-deviation experiment, self-describing."""

    label: str
    d: int | None
    q: int | None
    half_length: int
    epsilon: float
    n_vertices: int
    target_size: int
    mu: float
    mode: str  # "exhaustive" | "sampled"
    n_samples: int | None
    seed: int | None
    violating_count: int
    total_count: int
    fraction_violating: float

    def to_json_dict(self):
        return {
            "label": self.label,
            "d": self.d,
            "q": self.q,
            "half_length": self.half_length,
            "epsilon": self.epsilon,
            "n_vertices": self.n_vertices,
            "target_size": self.target_size,
            "mu": self.mu,
            "mode": self.mode,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "violating_count": self.violating_count,
            "total_count": self.total_count,
            "fraction_violating": self.fraction_violating,
        }


def _target_mask(g, target):
    mask = np.zeros(g.n_vertices, dtype=np.uint8)
    for t in target:
        if isinstance(t, (int, np.integer)):
            mask[int(t)] = 1
        else:
            mask[g.vertices.index(tuple(t))] = 1
    return mask


def random_target(g, density, seed):
    """Deterministic pseudo-random vertex subset of the given density
    (at least one vertex, never all of them)."""
    key = stream_key(seed, 0)
    n = g.n_vertices
    size = min(max(1, round(density * n)), n - 1)
    scores = sorted(range(n), key=lambda v: (draw(key, v), v))
    return sorted(scores[:size])


def large_deviation_stats(
    g, target, half_length, epsilon, mode="exhaustive",
    n_samples=None, seed=None, budgets=None,
):
    """Fraction of centered non-backtracking paths of length
    2*half_length whose time in the target set deviates from its
    density by at least epsilon.

    Exhaustive mode aggregates all directed realizations exactly (per
    arc and visit count, which equals full enumeration); sampled mode
    draws n_samples walks from the (seed)-keyed stream.
    """
    budgets = budgets or default_budgets()
    mask = _target_mask(g, target)
    size = int(mask.sum())
    if size == 0:
        raise PreconditionError("target must be nonempty")
    mu = size / g.n_vertices
    steps = 2 * half_length
    n_path_vertices = steps + 1
    ag = arc_graph(g) if steps > 0 else None

    if mode == "exhaustive":
        total = nominal_path_count(g.n_vertices, steps)
        if total > budgets.path_budget:
            raise BudgetError(
                f"{total} paths exceed the path budget {budgets.path_budget}"
            )
        if steps == 0:
            hist = _kernels.nb_visit_hist(None, None, None, mask, 0)
        else:
            hist = _kernels.nb_visit_hist(
                ag.next_arc, ag.src, ag.tgt, mask, steps
            )
        violating = 0
        for visits, count in enumerate(hist.tolist()):
            if abs(visits / n_path_vertices - mu) >= epsilon:
                violating += int(count)
        samples = None
        denominator = int(hist.sum())
        fraction = violating / denominator
    elif mode == "sampled":
        if n_samples is None or seed is None:
            raise PreconditionError("sampled mode needs n_samples and seed")
        if steps == 0:
            raise PreconditionError("sampled mode needs half_length >= 1")
        visits = _kernels.nb_visit_samples(
            ag.next_arc, ag.src, ag.tgt, mask, steps, n_samples, seed
        )
        deviation = np.abs(visits / n_path_vertices - mu)
        violating = int((deviation >= epsilon).sum())
        samples = n_samples
        denominator = n_samples
        fraction = violating / denominator
    else:
        raise PreconditionError(f"unknown mode {mode!r}")

    return LargeDeviationReport(
        label=g.label,
        d=g.d,
        q=g.q,
        half_length=half_length,
        epsilon=epsilon,
        n_vertices=g.n_vertices,
        target_size=size,
        mu=mu,
        mode=mode,
        n_samples=samples,
        seed=seed,
        violating_count=violating,
        total_count=denominator,
        fraction_violating=fraction,
    )


def qi_bound(mus, op_norm):
    """Product bound for the probability that an ordinary random walk
    is in the i-th set at step i: prod_i sqrt(mu_i mu_{i+1}) + |T|."""
    mus = list(mus)
    if any(not 0.0 <= m <= 1.0 for m in mus):
        raise PreconditionError("densities must lie in [0, 1]")
    if not 0.0 <= op_norm < 1.0:
        raise PreconditionError("op_norm must lie in [0, 1)")
    bound = 1.0
    for m1, m2 in zip(mus, mus[1:]):
        bound *= math.sqrt(m1 * m2) + op_norm
    return bound


def walk_in_sets_probability(g, target_sets):
    """Exact probability (a Fraction) that an ordinary random walk
    (uniform start, per-edge probability 1/6 with multiplicities) lies
    in target_sets[i] at step i+1 for every i."""
    n = g.n_vertices
    dist = [Fraction(1, n)] * n
    for target in target_sets:
        mask = _target_mask(g, target)
        nxt = [Fraction(0)] * n
        for v in range(n):
            if dist[v] == 0:
                continue
            share = dist[v] / 6
            for w in range(6):
                u = int(g.letter_target[w, v])
                if mask[u]:
                    nxt[u] += share
        dist = nxt
    return sum(dist, Fraction(0))
