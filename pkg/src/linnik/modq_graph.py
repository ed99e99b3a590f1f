"""The sphere mod q as a 6-regular multigraph, and its spectrum.

Vertices are residue triples with x^2+y^2+z^2 = d mod q; each letter
acts through its matrix with 1/5 replaced by the inverse of 5 mod q.
Undirected edge multiplicities are the directed counts (the letter set
is inverse-closed, so the adjacency matrix is automatically symmetric);
a letter fixing a vertex contributes, together with its inverse, 2 to
the diagonal, keeping every row sum at 6.

Synthetic six-letter graphs (tori, circulants, covers) share the same
structure and feed the spectral test machinery.
"""

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .config import default_budgets
from .errors import DimensionCapError, PreconditionError
from .quaternion import LETTER_MATRICES_X5

RAMANUJAN_BOUND = 2 * math.sqrt(5)
RAMANUJAN_TOL = 1e-8


def enumerate_hdq(d, q):
    """Residue triples of norm d mod q, lexicographic, as int64 rows."""
    if q < 2:
        raise PreconditionError("q must be at least 2")
    if math.gcd(q, 30) != 1:
        raise PreconditionError(f"q = {q} must be coprime to 30")
    if math.gcd(q, d) != 1:
        raise PreconditionError(f"q = {q} must be coprime to d = {d}")
    squares = [[] for _ in range(q)]
    for z in range(q):
        squares[z * z % q].append(z)
    rows = []
    for x in range(q):
        x2 = x * x
        for y in range(q):
            r = (d - x2 - y * y) % q
            for z in squares[r]:
                rows.append((x, y, z))
    out = np.array(sorted(rows), dtype=np.int64)
    return out.reshape(-1, 3)


def letter_matrices_mod(q):
    """The six letter matrices over Z/q (1/5 realized as 5^-1 mod q)."""
    inv5 = pow(5, -1, q)
    return np.array(
        [[[inv5 * e % q for e in row] for row in m] for m in LETTER_MATRICES_X5],
        dtype=np.int64,
    )


@dataclass(eq=False)
class SphereModQGraph:
    """A 6-regular multigraph given by six letter actions on a vertex
    list; mod-q sphere graphs carry their (d, q)."""

    vertices: tuple
    letter_target: np.ndarray  # (6, n) int32
    d: int | None = None
    q: int | None = None
    label: str = ""
    _adjacency: np.ndarray | None = field(default=None, repr=False)

    @property
    def n_vertices(self):
        return len(self.vertices)

    def adjacency(self):
        if self._adjacency is None:
            n = self.n_vertices
            adj = np.zeros((n, n), dtype=np.int64)
            idx = np.arange(n)
            for w in range(6):
                np.add.at(adj, (idx, self.letter_target[w]), 1)
            self._adjacency = adj
        return self._adjacency

    def neighbors(self, v):
        return [int(self.letter_target[w, v]) for w in range(6)]


def build_graph(d, q):
    """The sphere mod q with the six-letter action."""
    verts = enumerate_hdq(d, q)
    n = len(verts)
    codes = verts[:, 0] * q * q + verts[:, 1] * q + verts[:, 2]
    mats = letter_matrices_mod(q)
    targets = np.empty((6, n), dtype=np.int32)
    for w in range(6):
        imgs = verts @ mats[w].T % q
        img_codes = imgs[:, 0] * q * q + imgs[:, 1] * q + imgs[:, 2]
        pos = np.searchsorted(codes, img_codes)
        if not (codes[pos] == img_codes).all():
            raise AssertionError("letter action left the sphere mod q")
        targets[w] = pos
    return SphereModQGraph(
        vertices=tuple(map(tuple, verts.tolist())),
        letter_target=targets,
        d=d,
        q=q,
        label=f"H_{d}({q})",
    )


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: tuple  # descending
    gap: float
    ramanujan: bool
    connected: bool
    bipartite: bool

    @property
    def second_largest_abs(self):
        return 6.0 - self.gap


def _is_connected(g):
    n = g.n_vertices
    if n == 0:
        return False
    seen = np.zeros(n, dtype=bool)
    queue = deque([0])
    seen[0] = True
    count = 1
    while queue:
        v = queue.popleft()
        for w in range(6):
            u = int(g.letter_target[w, v])
            if not seen[u]:
                seen[u] = True
                count += 1
                queue.append(u)
    return count == n


def _is_bipartite(g):
    # loops force odd cycles
    for w in range(6):
        if (g.letter_target[w] == np.arange(g.n_vertices)).any():
            return False
    color = np.full(g.n_vertices, -1, dtype=np.int8)
    for start in range(g.n_vertices):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in range(6):
                u = int(g.letter_target[w, v])
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return False
    return True


def adjacency_spectrum(g, budgets=None):
    """Dense symmetric eigendecomposition of the adjacency matrix plus
    connectivity and bipartiteness of the support."""
    budgets = budgets or default_budgets()
    n = g.n_vertices
    if n > budgets.dense_cap:
        raise DimensionCapError(
            f"{n} vertices exceed the dense-solver cap {budgets.dense_cap}"
        )
    adj = g.adjacency()
    eigs = np.linalg.eigvalsh(adj.astype(np.float64))[::-1]
    connected = _is_connected(g)
    bipartite = _is_bipartite(g)
    rest = np.abs(eigs[1:]) if n > 1 else np.array([0.0])
    second = float(rest.max()) if rest.size else 0.0
    report = SpectralReport(
        eigenvalues=tuple(float(e) for e in eigs),
        gap=6.0 - second,
        ramanujan=(
            connected
            and not bipartite
            and second <= RAMANUJAN_BOUND + RAMANUJAN_TOL
        ),
        connected=connected,
        bipartite=bipartite,
    )
    return report


def check_ramanujan(report):
    """Connected, non-bipartite, and all nontrivial |eigenvalues| at
    most 2*sqrt(5) (within 1e-8)."""
    return (
        report.connected
        and not report.bipartite
        and report.second_largest_abs <= RAMANUJAN_BOUND + RAMANUJAN_TOL
    )


def graph_json_dict(g):
    """Adjacency-list export: vertices as [x, y, z], edges as
    [i, j, multiplicity] with i <= j; a diagonal entry counts the
    directed loop arcs at that vertex."""
    if g.d is None or g.q is None:
        raise PreconditionError("only sphere-mod-q graphs are exported")
    adj = g.adjacency()
    edges = []
    n = g.n_vertices
    for i in range(n):
        for j in range(i, n):
            m = int(adj[i, j])
            if m:
                edges.append([i, j, m])
    return {
        "d": g.d,
        "q": g.q,
        "vertices": [list(v) for v in g.vertices],
        "edges": edges,
    }


# -- synthetic six-letter graphs (test instrumentation) -------------------

def circulant_graph(n, shifts):
    """Cyclic group Z_n with letters +-s for the three given shifts."""
    if len(shifts) != 3:
        raise PreconditionError("exactly three shifts are required")
    targets = np.empty((6, n), dtype=np.int32)
    idx = np.arange(n, dtype=np.int32)
    for i, s in enumerate(shifts):
        targets[2 * i] = (idx + s) % n
        targets[2 * i + 1] = (idx - s) % n
    return SphereModQGraph(
        vertices=tuple((int(v), 0, 0) for v in range(n)),
        letter_target=targets,
        label=f"circulant({n}; {tuple(shifts)})",
    )


def complete_graph_k7():
    """K_7 as the circulant on Z_7 with shifts 1, 2, 3 (6-regular)."""
    return circulant_graph(7, (1, 2, 3))


def tripled_cycle(n):
    """The n-cycle with every edge tripled (shifts 1, 1, 1)."""
    return circulant_graph(n, (1, 1, 1))


def torus_graph(a, b, c):
    """Z_a x Z_b x Z_c with letters +-e_i; small dims give loops and
    doubled edges, stressing the multigraph conventions."""
    dims = (a, b, c)
    verts = [(x, y, z) for x in range(a) for y in range(b) for z in range(c)]
    index = {v: i for i, v in enumerate(verts)}
    targets = np.empty((6, len(verts)), dtype=np.int32)
    for i in range(3):
        for sign, w in ((1, 2 * i), (-1, 2 * i + 1)):
            for j, v in enumerate(verts):
                u = list(v)
                u[i] = (u[i] + sign) % dims[i]
                targets[w, j] = index[tuple(u)]
    return SphereModQGraph(
        vertices=tuple(verts),
        letter_target=targets,
        label=f"torus{dims}",
    )


def double_cover(g):
    """Bipartite double cover: letters cross between the two sheets."""
    n = g.n_vertices
    targets = np.empty((6, 2 * n), dtype=np.int32)
    for w in range(6):
        base = g.letter_target[w]
        targets[w, :n] = base + n
        targets[w, n:] = base
    verts = tuple((*v, 0) for v in g.vertices) + tuple((*v, 1) for v in g.vertices)
    return SphereModQGraph(
        vertices=verts, letter_target=targets, label=f"double_cover({g.label})"
    )


def disjoint_double(g):
    """Two disjoint copies (a disconnected control graph)."""
    n = g.n_vertices
    targets = np.empty((6, 2 * n), dtype=np.int32)
    for w in range(6):
        base = g.letter_target[w]
        targets[w, :n] = base
        targets[w, n:] = base + n
    verts = tuple((*v, 0) for v in g.vertices) + tuple((*v, 1) for v in g.vertices)
    return SphereModQGraph(
        vertices=verts, letter_target=targets, label=f"disjoint_double({g.label})"
    )
