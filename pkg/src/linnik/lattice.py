"""Exact enumeration of integer points on spheres and their finite
orthogonal symmetries.

The group SO3(Z) of signed permutation matrices with determinant +1 has
24 elements; its even-permutation subgroup SO3(Z)+ has 12.  Enumeration
iterates x, then y, and solves for z^2 with an integer square-root
check; no floating point decides membership.
"""

import itertools
import math
from typing import NamedTuple

import numpy as np

from . import _kernels
from .config import default_budgets
from .errors import BudgetError


class LatticePoint(NamedTuple):
    x: int
    y: int
    z: int

    def norm(self):
        return self.x * self.x + self.y * self.y + self.z * self.z


def norm(p):
    return p[0] * p[0] + p[1] * p[1] + p[2] * p[2]


def legendre_representable(d):
    """True iff d is a sum of three squares, i.e. not of the form
    4^a(8b-1)."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    while d % 4 == 0:
        d //= 4
    return d % 8 != 7


def enumerate_hd_array(d, budgets=None):
    """All solutions of x^2+y^2+z^2 = d as an (n, 3) int64 array in
    lexicographic order."""
    budgets = budgets or default_budgets()
    if d < 1:
        raise ValueError("d must be a positive integer")
    if d > budgets.enum_cap:
        raise BudgetError(
            f"d={d} exceeds the enumeration cap {budgets.enum_cap} "
            f"(raise LINNIK_BUDGET_ENUM to allow)"
        )
    return _kernels.sweep_points(d)


def enumerate_hd(d, budgets=None):
    """Like :func:`enumerate_hd_array` but as LatticePoint tuples."""
    arr = enumerate_hd_array(d, budgets)
    return [LatticePoint(int(a), int(b), int(c)) for a, b, c in arr]


def count_hd(d, budgets=None):
    budgets = budgets or default_budgets()
    if d < 1:
        raise ValueError("d must be a positive integer")
    if d > budgets.enum_cap:
        raise BudgetError(
            f"d={d} exceeds the enumeration cap {budgets.enum_cap}"
        )
    return _kernels.sweep_count(d)


def is_primitive(p):
    return math.gcd(math.gcd(abs(p[0]), abs(p[1])), abs(p[2])) == 1


def _permutation_sign(perm):
    sign = 1
    for i in range(3):
        for j in range(i + 1, 3):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _signed_permutation_matrices():
    for perm in itertools.permutations(range(3)):
        psign = _permutation_sign(perm)
        for signs in itertools.product((1, -1), repeat=3):
            det = psign * signs[0] * signs[1] * signs[2]
            rows = []
            for i in range(3):
                row = [0, 0, 0]
                row[perm[i]] = signs[i]
                rows.append(tuple(row))
            yield tuple(rows), det, psign


def so3z_group(even_only=False):
    """SO3(Z) (24 matrices), or its even-permutation subgroup (12)."""
    out = []
    for m, det, psign in _signed_permutation_matrices():
        if det != 1:
            continue
        if even_only and psign != 1:
            continue
        out.append(m)
    out.sort()
    return tuple(out)


SO3Z = so3z_group()
SO3Z_EVEN = so3z_group(even_only=True)


def apply_matrix(m, p):
    return LatticePoint(
        m[0][0] * p[0] + m[0][1] * p[1] + m[0][2] * p[2],
        m[1][0] * p[0] + m[1][1] * p[1] + m[1][2] * p[2],
        m[2][0] * p[0] + m[2][1] * p[1] + m[2][2] * p[2],
    )


def orbit_of(p, even_only=False):
    group = SO3Z_EVEN if even_only else SO3Z
    return {apply_matrix(m, p) for m in group}


def orbit_key(p, even_only=False):
    """Canonical representative: lexicographic minimum of the orbit."""
    return min(orbit_of(p, even_only))


def so3z_orbits(points, even_only=False):
    """Partition points into orbits, sorted by their lex-min
    representative; each orbit is itself a sorted tuple."""
    buckets = {}
    for p in points:
        p = LatticePoint(*p)
        buckets.setdefault(orbit_key(p, even_only), []).append(p)
    return [tuple(sorted(buckets[k])) for k in sorted(buckets)]


def signed_permutations_closure_ok(points):
    """True iff the point set is closed under all 48 signed
    permutations (hence under SO3(Z))."""
    pts = {tuple(p) for p in points}
    for p in pts:
        for perm in itertools.permutations(p):
            for signs in itertools.product((1, -1), repeat=3):
                q = (signs[0] * perm[0], signs[1] * perm[1], signs[2] * perm[2])
                if q not in pts:
                    return False
    return True


def reduce_points_mod(points, q):
    """Componentwise reduction into [0, q) as an int64 array."""
    arr = np.asarray(points, dtype=np.int64)
    return np.mod(arr, q)
