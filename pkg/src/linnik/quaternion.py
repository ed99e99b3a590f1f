"""Hurwitz quaternion arithmetic and the six degree-5 rotation matrices.

The rotations A, B, C (and inverses) by angle acos(-4/5) around the
coordinate axes have entries in (1/5)Z; they are realized here both as
exact rational matrices and as conjugation by the six integral
quaternions of norm 10, namely 1 +- 3i, 1 +- 3j, 1 +- 3k.

Conjugation convention: a quaternion r of positive norm acts on pure
quaternions by v -> conj(r) v r / Nr(r).  With this convention the
action of 1+3i equals the matrix A below; the action of 1-3i equals its
transpose.  Downstream code pairs letters with matrices via
``letter_matrix`` only, never via a quaternion pairing.
"""

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction

from .errors import PreconditionError


class Letter(IntEnum):
    """The six-symbol rotation alphabet with its inverse involution."""

    A = 0
    A_INV = 1
    B = 2
    B_INV = 3
    C = 4
    C_INV = 5

    def inverse(self):
        return Letter(self.value ^ 1)

    def __str__(self):
        return LETTER_NAMES[self.value]


LETTER_NAMES = ("A", "A^-1", "B", "B^-1", "C", "C^-1")
LETTER_BY_NAME = {name: Letter(i) for i, name in enumerate(LETTER_NAMES)}

# 5x the rotation matrices, in Letter order.  Each is an integer matrix
# M with M^T M = 25 I and det M = 125.
LETTER_MATRICES_X5 = (
    ((5, 0, 0), (0, -4, 3), (0, -3, -4)),  # A
    ((5, 0, 0), (0, -4, -3), (0, 3, -4)),  # A^-1
    ((-4, 0, 3), (0, 5, 0), (-3, 0, -4)),  # B
    ((-4, 0, -3), (0, 5, 0), (3, 0, -4)),  # B^-1
    ((-4, -3, 0), (3, -4, 0), (0, 0, 5)),  # C
    ((-4, 3, 0), (-3, -4, 0), (0, 0, 5)),  # C^-1
)


def letter_matrix(w):
    """Exact rational matrix of a letter (entries in (1/5)Z)."""
    m5 = LETTER_MATRICES_X5[Letter(w).value]
    return tuple(tuple(Fraction(e, 5) for e in row) for row in m5)


def letter_matrix_x5(w):
    """The denominator-cleared integer matrix 5*letter_matrix(w)."""
    return LETTER_MATRICES_X5[Letter(w).value]


def apply_letter_x5(w, v):
    """5 * (letter w applied to integer vector v), exactly."""
    m = LETTER_MATRICES_X5[Letter(w).value]
    return (
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    )


@dataclass(frozen=True)
class HurwitzQuaternion:
    """Quaternion with all coordinates in (1/2)Z, stored as doubled
    numerators of equal parity (all even: Lipschitz; all odd:
    half-integral)."""

    n0: int
    n1: int
    n2: int
    n3: int

    def __post_init__(self):
        parity = self.n0 & 1
        if (self.n1 & 1) != parity or (self.n2 & 1) != parity or (self.n3 & 1) != parity:
            raise ValueError(
                f"doubled numerators must share parity: "
                f"({self.n0}, {self.n1}, {self.n2}, {self.n3})"
            )

    @classmethod
    def from_ints(cls, a, b, c, d):
        """Lipschitz quaternion a + bi + cj + dk."""
        return cls(2 * a, 2 * b, 2 * c, 2 * d)

    def __mul__(self, other):
        a1, b1, c1, d1 = self.n0, self.n1, self.n2, self.n3
        a2, b2, c2, d2 = other.n0, other.n1, other.n2, other.n3
        # numerators of the product are halves of these (exact: same
        # parity forces every combination below to be even)
        return HurwitzQuaternion(
            (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2) // 2,
            (a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2) // 2,
            (a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2) // 2,
            (a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2) // 2,
        )

    def __add__(self, other):
        return HurwitzQuaternion(
            self.n0 + other.n0, self.n1 + other.n1,
            self.n2 + other.n2, self.n3 + other.n3,
        )

    def __neg__(self):
        return HurwitzQuaternion(-self.n0, -self.n1, -self.n2, -self.n3)

    def conjugate(self):
        return HurwitzQuaternion(self.n0, -self.n1, -self.n2, -self.n3)

    def norm(self):
        """Reduced norm, always a nonnegative integer."""
        s = self.n0**2 + self.n1**2 + self.n2**2 + self.n3**2
        return s // 4

    def trace(self):
        """Reduced trace as an exact Fraction (n0 may be odd)."""
        return Fraction(self.n0, 1)

    def is_pure(self):
        return self.n0 == 0

    def __str__(self):
        if self.n0 % 2 == 0:
            parts = []
            for val, sym in zip(
                (self.n0 // 2, self.n1 // 2, self.n2 // 2, self.n3 // 2),
                ("", "i", "j", "k"),
            ):
                if val == 0:
                    continue
                sign = "-" if val < 0 else ("+" if parts else "")
                mag = abs(val)
                body = sym if (mag == 1 and sym) else f"{mag}{sym}"
                parts.append(f"{sign}{body}")
            return "".join(parts) or "0"
        return f"({self.n0}{self.n1:+}i{self.n2:+}j{self.n3:+}k)/2"


ONE = HurwitzQuaternion.from_ints(1, 0, 0, 0)
I = HurwitzQuaternion.from_ints(0, 1, 0, 0)
J = HurwitzQuaternion.from_ints(0, 0, 1, 0)
K = HurwitzQuaternion.from_ints(0, 0, 0, 1)


def multiply(p, q):
    """Exact quaternion product; Nr(pq) = Nr(p) Nr(q)."""
    return p * q


def a5_quaternions():
    """The six norm-10 quaternions 1 +- 3i, 1 +- 3j, 1 +- 3k.

    Listed in Letter order under the conjugation convention of this
    module (1+3i acts as the matrix A, 1-3i as A^-1, and so on).
    """
    return (
        HurwitzQuaternion.from_ints(1, 3, 0, 0),
        HurwitzQuaternion.from_ints(1, -3, 0, 0),
        HurwitzQuaternion.from_ints(1, 0, 3, 0),
        HurwitzQuaternion.from_ints(1, 0, -3, 0),
        HurwitzQuaternion.from_ints(1, 0, 0, 3),
        HurwitzQuaternion.from_ints(1, 0, 0, -3),
    )


def rotation_of(r):
    """Matrix of v -> conj(r) v r / Nr(r) on pure quaternions in basis
    (i, j, k), as exact Fractions.  Orthogonal with determinant +1."""
    nr = r.norm()
    if nr == 0:
        raise PreconditionError("rotation of a zero-norm quaternion")
    rbar = r.conjugate()
    cols = []
    for basis in (I, J, K):
        image = rbar * basis * r
        if image.n0 != 0:
            raise AssertionError("conjugation did not preserve pure quaternions")
        # doubled numerators over 2, then divided by Nr
        cols.append(
            (
                Fraction(image.n1, 2 * nr),
                Fraction(image.n2, 2 * nr),
                Fraction(image.n3, 2 * nr),
            )
        )
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


def matrix_multiply(m, n):
    return tuple(
        tuple(sum(m[i][k] * n[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def matrix_transpose(m):
    return tuple(tuple(m[j][i] for j in range(3)) for i in range(3))


def matrix_determinant(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def is_special_orthogonal(m):
    """Exact check that m^T m = I and det m = 1 (rational entries)."""
    identity = tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(3)) for i in range(3)
    )
    product = matrix_multiply(matrix_transpose(m), m)
    return product == identity and matrix_determinant(m) == 1
