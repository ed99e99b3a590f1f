"""Trajectories driven by the two-of-six step.

For admissible d (squarefree, prime to 5, d = +-1 mod 5) exactly two of
the six letter images of any point of norm d are integral.  Repeating
the step in both directions yields a bi-infinite reduced word through
each point, unique up to direction reversal; truncations of that word
are the objects compared by the shadowing congruence and the
trajectory-pair count sigma.

Orientation convention: the forward letter w_1 at the base point is the
earliest of the two candidates in the enum order A, A^-1, B, B^-1, C,
C^-1.  Word comparisons are performed over both alignments, so the
arbitrary choice never produces false negatives.
"""

from dataclasses import dataclass

from .config import default_budgets
from .errors import BudgetError, PreconditionError, StepCountError
from .lattice import LatticePoint, apply_matrix, norm, orbit_key, SO3Z
from .quaternion import Letter, apply_letter_x5


def linnik_step(x, d):
    """The exactly-two letters with integral image at x, in enum order,
    each with its image.  Raises StepCountError when the count is not 2
    (an ambient-precondition failure, e.g. 5 | d)."""
    x = LatticePoint(*x)
    if norm(x) != d:
        raise PreconditionError(f"{x} does not lie on the sphere of norm {d}")
    hits = []
    for w in Letter:
        u = apply_letter_x5(w, x)
        if u[0] % 5 == 0 and u[1] % 5 == 0 and u[2] % 5 == 0:
            hits.append((w, LatticePoint(u[0] // 5, u[1] // 5, u[2] // 5)))
    if len(hits) != 2:
        raise StepCountError(x, len(hits), hits)
    return hits


def _step_from(x, incoming, d):
    """Unique continuation letter at x excluding the inverse of the
    letter that produced x."""
    hits = linnik_step(x, d)
    banned = incoming.inverse()
    out = [hw for hw in hits if hw[0] != banned]
    if len(out) != 1:
        # the reverse of the incoming letter is always integral, so
        # linnik_step must already have raised
        raise AssertionError(f"continuation at {x} is not unique: {hits}")
    return out[0]


@dataclass(frozen=True)
class TrajectorySegment:
    """Truncated trajectory x_{-l} .. x_l with letters w_{-l+1} .. w_l;
    points[center] is the marked base point x_0."""

    points: tuple
    letters: tuple
    center: int

    @property
    def half_length(self):
        return self.center

    def reversed(self):
        """The switch-directions companion: x_i -> x_{-i},
        w_i -> w_{1-i}^{-1}."""
        return TrajectorySegment(
            points=tuple(reversed(self.points)),
            letters=tuple(w.inverse() for w in reversed(self.letters)),
            center=self.center,
        )

    def validate(self):
        """Recompute every transition exactly; True iff consistent and
        the word is reduced."""
        for i, w in enumerate(self.letters):
            u = apply_letter_x5(w, self.points[i])
            if any(c % 5 for c in u):
                return False
            if tuple(c // 5 for c in u) != tuple(self.points[i + 1]):
                return False
        return all(
            self.letters[i + 1] != self.letters[i].inverse()
            for i in range(len(self.letters) - 1)
        )

    def reduce_mod(self, q):
        """Vertex residues (componentwise, in [0, q)) of the marked
        path this segment traces on the sphere mod q."""
        return tuple(tuple(c % q for c in p) for p in self.points)


def extend_trajectory(x, half_length, d):
    """The centered segment of the trajectory through x with
    2*half_length + 1 points, oriented canonically."""
    x = LatticePoint(*x)
    if half_length == 0:
        if norm(x) != d:
            raise PreconditionError(f"{x} does not lie on the sphere of norm {d}")
        return TrajectorySegment(points=(x,), letters=(), center=0)
    (w1, x1), (other, xm1) = linnik_step(x, d)
    forward_pts, forward_ws = [x1], [w1]
    for _ in range(half_length - 1):
        w, nxt = _step_from(forward_pts[-1], forward_ws[-1], d)
        forward_pts.append(nxt)
        forward_ws.append(w)
    # x_{-1} = other . x, so w_0 = other^{-1}
    backward_pts, backward_ws = [xm1], [other.inverse()]
    for _ in range(half_length - 1):
        # at x_{-i}, the step letter toward x_{-i-1} is the candidate
        # other than w_{-i+1}
        w, nxt = _step_from(backward_pts[-1], backward_ws[-1].inverse(), d)
        backward_pts.append(nxt)
        backward_ws.append(w.inverse())
    points = tuple(reversed(backward_pts)) + (x,) + tuple(forward_pts)
    letters = tuple(reversed(backward_ws)) + tuple(forward_ws)
    return TrajectorySegment(points=points, letters=letters, center=half_length)


def orbit_period(x, d, budgets=None):
    """Minimal n >= 1 with x_n in the SO3(Z)-orbit of x_0 along the
    forward trajectory."""
    budgets = budgets or default_budgets()
    x = LatticePoint(*x)
    key0 = orbit_key(x)
    from .lattice import count_hd

    bound = 24 * count_hd(d, budgets)
    (w, cur), _ = linnik_step(x, d)
    n = 1
    while orbit_key(cur) != key0:
        w, cur = _step_from(cur, w, d)
        n += 1
        if n > bound:
            raise BudgetError(
                f"no return to the SO3(Z)-orbit within 24*|H_d| = {bound} steps"
            )
    return n


_HD_CACHE = {}


def _hd_points_cached(d, budgets):
    if d not in _HD_CACHE:
        from .lattice import enumerate_hd

        _HD_CACHE[d] = enumerate_hd(d, budgets)
    return _HD_CACHE[d]


def word_window(x, half_length, d):
    """The letter window w_{-l+1} .. w_l of the canonical orientation."""
    return extend_trajectory(x, half_length, d).letters


def _window_alignments(letters):
    rev = tuple(w.inverse() for w in reversed(letters))
    return letters, rev


def canonical_word_window(letters):
    return min(_window_alignments(letters))


def shadowing_check(x, x2, half_length, d):
    """(words_agree, congruent): whether the letter windows of length
    2*half_length coincide under the best direction alignment, and
    whether x = +-x2 mod 5^half_length.  The shadowing property asserts
    these always match."""
    if half_length < 1:
        raise PreconditionError("half_length must be >= 1")
    wx = canonical_word_window(word_window(x, half_length, d))
    wy = canonical_word_window(word_window(x2, half_length, d))
    words_agree = wx == wy
    mod = 5**half_length
    plus = all((a - b) % mod == 0 for a, b in zip(x, x2))
    minus = all((a + b) % mod == 0 for a, b in zip(x, x2))
    return words_agree, (plus or minus)


def _segment_key_mod(segment, q):
    return (segment.reduce_mod(q), tuple(segment.letters))


def canonical_segment_key(segment, q):
    """Orientation-free key of the marked mod-q path: vertices and
    letters of the better-aligned direction."""
    return min(_segment_key_mod(segment, q), _segment_key_mod(segment.reversed(), q))


def sigma_count(d, half_length, q, budgets=None):
    """Number of ordered pairs (x, x') of norm-d points whose truncated
    marked trajectories mod q coincide (vertices and letters, under
    direction alignment)."""
    budgets = budgets or default_budgets()
    if half_length < 1:
        raise PreconditionError("half_length must be >= 1")
    import math

    if math.gcd(q, 30 * d) != 1:
        raise PreconditionError(f"q={q} must be coprime to 30*d")
    points = _hd_points_cached(d, budgets)
    if len(points) ** 2 > budgets.pair_budget:
        raise BudgetError(
            f"|H_d|^2 = {len(points)**2} exceeds the pair budget "
            f"{budgets.pair_budget}"
        )
    groups = {}
    for p in points:
        key = canonical_segment_key(extend_trajectory(p, half_length, d), q)
        groups[key] = groups.get(key, 0) + 1
    return sum(m * m for m in groups.values())


def trajectory_groups(d, half_length, q, budgets=None):
    """Points of H_d grouped by canonical truncated mod-q trajectory;
    used by the consistency checks of the pair count."""
    budgets = budgets or default_budgets()
    points = _hd_points_cached(d, budgets)
    groups = {}
    for p in points:
        key = canonical_segment_key(extend_trajectory(p, half_length, d), q)
        groups.setdefault(key, []).append(p)
    return groups
