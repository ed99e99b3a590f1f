"""Binary quadratic forms, class groups, the orthogonal-complement map,
and the counting identities tying sphere points to class numbers.

Composition is Gauss composition in the "united forms" formulation:
bring the second form to a representative whose leading coefficient is
coprime to the first, lift both middle coefficients to a common B by
CRT, and multiply leading coefficients.  Every composition result is
reduced immediately.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import default_budgets
from .errors import BudgetError, PreconditionError
from .lattice import enumerate_hd_array, count_hd, norm


class BinaryForm(NamedTuple):
    a: int
    b: int
    c: int

    def discriminant(self):
        return self.b * self.b - 4 * self.a * self.c

    def value(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def is_positive_definite(f):
    return f.discriminant() < 0 and f.a > 0


def is_reduced(f):
    a, b, c = f
    if not (abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def is_primitive_form(f):
    return math.gcd(math.gcd(f.a, f.b), f.c) == 1


def reduce_form(f):
    """The unique reduced representative of a positive definite class."""
    f = BinaryForm(*f)
    if not is_positive_definite(f):
        raise PreconditionError(f"{f} is not positive definite")
    a, b, c = f
    while True:
        # normalize: b into (-a, a]
        if b > a or b <= -a:
            r = (a - b) // (2 * a)
            b2 = b + 2 * r * a
            c = a * r * r + b * r + c
            b = b2
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        break
    return BinaryForm(a, b, c)


def reduced_forms(disc, primitive_only=True):
    """All reduced (by default primitive) forms of a negative
    discriminant, sorted."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise PreconditionError(f"{disc} is not a negative discriminant")
    out = []
    b = disc & 1
    while b * b <= -disc // 3:
        m4 = b * b - disc
        # 4ac = m4
        m = m4 // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                cand = [BinaryForm(a, b, c)]
                if 0 < b < a < c:
                    cand.append(BinaryForm(a, -b, c))
                for f in cand:
                    if primitive_only and not is_primitive_form(f):
                        continue
                    out.append(f)
            a += 1
        b += 2
    return sorted(out)


def principal_form(disc):
    k = disc & 1
    return BinaryForm(1, k, (k * k - disc) // 4)


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _crt(r1, m1, r2, m2):
    """x = r1 mod m1, x = r2 mod m2 (moduli need not be coprime)."""
    g, u, _ = _xgcd(m1, m2)
    if (r2 - r1) % g:
        raise ArithmeticError("incompatible congruences")
    lcm = m1 // g * m2
    x = r1 + (r2 - r1) // g * u % (m2 // g) * m1
    return x % lcm


def _transform(f, x, y, r, s):
    """Form in the basis (x,y), (r,s); the matrix must be unimodular."""
    a, b, c = f
    a2 = f.value(x, y)
    c2 = f.value(r, s)
    b2 = 2 * a * x * r + b * (x * s + y * r) + 2 * c * y * s
    return BinaryForm(a2, b2, c2)


def _with_leading_coprime_to(f, n):
    """An equivalent form whose leading coefficient is coprime to n."""
    if math.gcd(f.a, n) == 1:
        return f
    for span in range(1, 40):
        for x in range(span + 1):
            y = span - x
            if math.gcd(x, y) != 1:
                continue
            for sx in (1, -1):
                v = f.value(sx * x, y)
                if v > 0 and math.gcd(v, n) == 1:
                    g, u, t = _xgcd(sx * x, y)
                    # (sx*x)*s - y*r = 1 with s = u, r = -t
                    return _transform(f, sx * x, y, -t, u)
    raise ArithmeticError(f"no representative of {f} coprime to {n} found")


def compose(f1, f2):
    """Gauss composition followed by reduction."""
    f1, f2 = BinaryForm(*f1), BinaryForm(*f2)
    disc = f1.discriminant()
    if f2.discriminant() != disc:
        raise PreconditionError("forms must share a discriminant")
    g2 = _with_leading_coprime_to(f2, f1.a)
    a1, b1 = f1.a, f1.b
    a2, b2 = g2.a, g2.b
    B = _crt(b1, 2 * a1, b2, 2 * a2)
    a3 = a1 * a2
    c3 = (B * B - disc) // (4 * a3)
    return reduce_form(BinaryForm(a3, B, c3))


def inverse_form(f):
    return reduce_form(BinaryForm(f.a, -f.b, f.c))


def form_power(f, n):
    disc = BinaryForm(*f).discriminant()
    result = reduce_form(principal_form(disc))
    base = reduce_form(BinaryForm(*f))
    if n < 0:
        base = inverse_form(base)
        n = -n
    while n:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return result


@dataclass(frozen=True)
class ClassGroup:
    """The form class group of a negative discriminant: reduced
    primitive forms under composition."""

    disc: int
    forms: tuple

    @property
    def order(self):
        return len(self.forms)

    @property
    def identity(self):
        return reduce_form(principal_form(self.disc))

    def compose(self, f, g):
        return compose(f, g)

    def inverse(self, f):
        return inverse_form(f)

    def element_order(self, f):
        return element_order(self, f)

    def is_cyclic(self):
        return any(element_order(self, f) == self.order for f in self.forms)

    def two_torsion(self):
        return tuple(
            f for f in self.forms if compose(f, f) == self.identity
        )

    def square_roots(self, f):
        return tuple(g for g in self.forms if compose(g, g) == f)


def class_group(disc):
    """All reduced primitive forms of the discriminant; h = their count."""
    forms = reduced_forms(disc, primitive_only=True)
    return ClassGroup(disc=disc, forms=tuple(forms))


def class_number(disc):
    return len(reduced_forms(disc, primitive_only=True))


def element_order(group, f):
    f = reduce_form(BinaryForm(*f))
    if f not in group.forms:
        raise PreconditionError(f"{f} is not a reduced form of disc {group.disc}")
    identity = group.identity
    cur = f
    n = 1
    while cur != identity:
        cur = compose(cur, f)
        n += 1
        if n > group.order:
            raise AssertionError("element order exceeded group order")
    return n


def prime_above_form(group, p):
    """Reduced form representing a prime ideal class above p: the class
    of (p, b, .) with b^2 = disc mod 4p, b minimal nonnegative."""
    disc = group.disc
    for b in range(0, 2 * p + 1):
        if (b * b - disc) % (4 * p) == 0:
            c = (b * b - disc) // (4 * p)
            return reduce_form(BinaryForm(p, b, c))
    raise PreconditionError(f"{p} is inert for discriminant {disc}")


def ambiguous_class_count(disc):
    """Number of reduced primitive ambiguous forms (b = 0, a = b, or
    a = c): an independent route to |Pic[2]|."""
    count = 0
    for f in reduced_forms(disc, primitive_only=True):
        a, b, c = f
        if b == 0 or a == b or a == c:
            count += 1
    return count


# -- orthogonal complement ------------------------------------------------

def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _det3(r0, r1, r2):
    return (
        r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
        - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
    )


def _lattice_basis_2d(rows):
    """Basis of the rank-2 lattice generated by integer rows, via
    unimodular row operations (a small Hermite reduction)."""
    rows = [list(r) for r in rows]
    pivot_row = 0
    for col in range(3):
        idx = [i for i in range(pivot_row, len(rows)) if rows[i][col] != 0]
        if not idx:
            continue
        i0 = idx[0]
        rows[pivot_row], rows[i0] = rows[i0], rows[pivot_row]
        for i in idx[1:]:
            if i == i0:
                i = pivot_row
            while rows[i][col] != 0:
                q = rows[pivot_row][col] // rows[i][col]
                rows[pivot_row] = [
                    x - q * y for x, y in zip(rows[pivot_row], rows[i])
                ]
                rows[pivot_row], rows[i] = rows[i], rows[pivot_row]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    basis = [r for r in rows if any(r)]
    return basis


def perp_form(x, d):
    """Reduced oriented form on the sublattice of Z^3 orthogonal to x
    (scaled by 1/2 when d = 3 mod 8); discriminant -d or -4d."""
    if norm(x) != d:
        raise PreconditionError(f"{tuple(x)} does not have norm {d}")
    rows = [_cross(e, x) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    basis = _lattice_basis_2d(rows)
    if len(basis) != 2:
        raise PreconditionError(f"orthogonal lattice of {tuple(x)} is degenerate")
    lam, lam2 = basis
    det = _det3(lam, lam2, x)
    if det < 0:
        lam, lam2 = lam2, lam
        det = -det
    if det != d:
        raise PreconditionError(
            f"orthogonal basis of {tuple(x)} has covolume {det}, expected {d}"
        )
    a = sum(v * v for v in lam)
    b = 2 * sum(u * v for u, v in zip(lam, lam2))
    c = sum(v * v for v in lam2)
    if b * b - 4 * a * c != -4 * d:
        raise AssertionError("orthogonal form has wrong discriminant")
    if d % 8 == 3:
        if a % 2 or b % 2 or c % 2:
            raise AssertionError("expected even Gram entries for d = 3 mod 8")
        a, b, c = a // 2, b // 2, c // 2
    return reduce_form(BinaryForm(a, b, c))


def fundamental_disc_for(d):
    """disc(O_K) for K = Q(sqrt(-d)), d squarefree."""
    return -d if d % 4 == 3 else -4 * d


# -- counting -------------------------------------------------------------

def dot_pair_count(d, e, budgets=None):
    """Ordered pairs in H_d x H_d with dot product e."""
    budgets = budgets or default_budgets()
    if abs(e) > d:
        raise PreconditionError(f"|e| = {abs(e)} exceeds d = {d}")
    pts = enumerate_hd_array(d, budgets)
    n = len(pts)
    if n * n > budgets.pair_budget:
        raise BudgetError(f"|H_d|^2 = {n*n} exceeds the pair budget")
    if n == 0:
        return 0
    total = 0
    chunk = max(1, 10**7 // max(n, 1))
    for i in range(0, n, chunk):
        dots = pts[i : i + chunk] @ pts.T
        total += int((dots == e).sum())
    return total


def dot_histogram(d, budgets=None):
    """Counts of every dot value e in [-d, d] as an int64 array."""
    budgets = budgets or default_budgets()
    pts = enumerate_hd_array(d, budgets)
    n = len(pts)
    if n * n > budgets.pair_budget:
        raise BudgetError(f"|H_d|^2 = {n*n} exceeds the pair budget")
    hist = np.zeros(2 * d + 1, dtype=np.int64)
    chunk = max(1, 10**7 // max(n, 1))
    for i in range(0, n, chunk):
        dots = (pts[i : i + chunk] @ pts.T).ravel() + d
        hist += np.bincount(dots, minlength=2 * d + 1)
    return hist


def pall_count(a, b, c, budgets=None):
    """Number of isometric embeddings of ax^2+bxy+cy^2 into the sum of
    three squares: pairs (u, v) with u.u = a, v.v = c, 2 u.v = b."""
    budgets = budgets or default_budgets()
    f = BinaryForm(a, b, c)
    if f.discriminant() == 0:
        raise PreconditionError("degenerate (rank < 2) forms are excluded")
    if not is_positive_definite(f):
        raise PreconditionError(f"{f} is not positive definite")
    pa = enumerate_hd_array(a, budgets)
    pc = enumerate_hd_array(c, budgets)
    if len(pa) * len(pc) > budgets.pair_budget:
        raise BudgetError("embedding scan exceeds the pair budget")
    if len(pa) == 0 or len(pc) == 0:
        return 0
    dots = 2 * (pa @ pc.T)
    return int((dots == b).sum())


def is_squarefree(d):
    if d < 1:
        return False
    i = 2
    while i * i <= d:
        if d % (i * i) == 0:
            return False
        i += 1
    return True


def squarefree_sieve(limit):
    """Boolean list s with s[d] true iff d is squarefree, d <= limit."""
    flags = [True] * (limit + 1)
    flags[0] = False
    i = 2
    while i * i <= limit:
        step = i * i
        for m in range(step, limit + 1, step):
            flags[m] = False
        i += 1
    return flags


@dataclass(frozen=True)
class CardinalityCheck:
    d: int
    hd: int
    h: int
    multiplier: int
    relation_holds: bool


def verify_cardinality(d, budgets=None):
    """|H_d| against 24h (d = 3 mod 8) or 12h (d = 1,2 mod 4), the two
    sides computed independently (lattice sweep vs reduced forms)."""
    budgets = budgets or default_budgets()
    if d <= 3 or not is_squarefree(d) or d % 8 == 7:
        raise PreconditionError(
            f"d = {d} must be squarefree, > 3, and not 7 mod 8"
        )
    hd = count_hd(d, budgets)
    h = class_number(fundamental_disc_for(d))
    multiplier = 24 if d % 8 == 3 else 12
    return CardinalityCheck(
        d=d, hd=hd, h=h, multiplier=multiplier,
        relation_holds=(hd == multiplier * h),
    )
