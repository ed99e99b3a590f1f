from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from linnik.quaternion import (
    HurwitzQuaternion,
    I,
    J,
    K,
    ONE,
    Letter,
    a5_quaternions,
    apply_letter_x5,
    is_special_orthogonal,
    letter_matrix,
    letter_matrix_x5,
    matrix_multiply,
    matrix_transpose,
    rotation_of,
)


def hurwitz(max_num=50):
    parity = st.integers(0, 1)
    return parity.flatmap(
        lambda p: st.tuples(
            *[st.integers(-max_num, max_num).map(lambda n, p=p: 2 * n + p)] * 4
        )
    ).map(lambda t: HurwitzQuaternion(*t))


class TestLetter:
    def test_inverse_involution(self):
        for w in Letter:
            assert w.inverse().inverse() == w
            assert w.inverse() != w
        assert Letter.A.inverse() == Letter.A_INV
        assert Letter.C_INV.inverse() == Letter.C

    def test_six_letters(self):
        assert len(list(Letter)) == 6


class TestHurwitz:
    def test_parity_enforced(self):
        with pytest.raises(ValueError):
            HurwitzQuaternion(1, 2, 2, 2)
        HurwitzQuaternion(1, 1, 1, 1)
        HurwitzQuaternion(2, 0, 0, 0)

    def test_hamilton_relations(self):
        assert I * J == K
        assert J * K == I
        assert K * I == J
        assert I * I == -ONE
        minus_k = K.conjugate()
        assert J * I == minus_k

    def test_norm_ten_product(self):
        p = HurwitzQuaternion.from_ints(1, 3, 0, 0)
        q = HurwitzQuaternion.from_ints(1, -3, 0, 0)
        assert (p * q) == HurwitzQuaternion.from_ints(10, 0, 0, 0)
        assert p.norm() == 10

    def test_identity(self):
        q = HurwitzQuaternion(1, 3, -1, 5)
        assert q * ONE == q
        assert ONE * q == q

    @given(hurwitz(), hurwitz())
    def test_norm_multiplicative(self, p, q):
        assert (p * q).norm() == p.norm() * q.norm()

    @given(hurwitz(10), hurwitz(10), hurwitz(10))
    def test_associative(self, p, q, r):
        assert (p * q) * r == p * (q * r)

    @given(hurwitz())
    def test_conjugation_norm_trace(self, q):
        assert q.conjugate().conjugate() == q
        prod = q * q.conjugate()
        assert prod == HurwitzQuaternion(2 * q.norm(), 0, 0, 0)


class TestA5:
    def test_exactly_the_six_norm_ten_elements(self):
        qs = a5_quaternions()
        assert len(qs) == 6
        assert all(q.norm() == 10 for q in qs)
        assert all(q.trace() == 2 for q in qs)
        assert HurwitzQuaternion.from_ints(1, -3, 0, 0) in qs
        for q in qs:
            assert q.conjugate() in qs

    def test_rotations_cover_the_letter_matrices(self):
        rotations = {rotation_of(q) for q in a5_quaternions()}
        matrices = {letter_matrix(w) for w in Letter}
        assert rotations == matrices

    def test_conjugation_rule_for_1_minus_3i(self):
        m = rotation_of(HurwitzQuaternion.from_ints(1, -3, 0, 0))
        f = Fraction
        # columns (1,0,0), (0,-4/5,3/5), (0,-3/5,-4/5)
        assert m == (
            (f(1), f(0), f(0)),
            (f(0), f(-4, 5), f(-3, 5)),
            (f(0), f(3, 5), f(-4, 5)),
        )

    def test_rotation_of_identity(self):
        identity = tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(3)) for i in range(3)
        )
        assert rotation_of(ONE) == identity

    def test_rotation_zero_norm_rejected(self):
        from linnik.errors import PreconditionError

        with pytest.raises(PreconditionError):
            rotation_of(HurwitzQuaternion(0, 0, 0, 0))

    @given(hurwitz(6))
    def test_rotation_exactly_special_orthogonal(self, q):
        if q.norm() == 0:
            return
        assert is_special_orthogonal(rotation_of(q))


class TestLetterMatrices:
    def test_entries_in_fifth_integers(self):
        for w in Letter:
            for row in letter_matrix(w):
                for e in row:
                    assert (e * 5).denominator == 1

    def test_exactly_orthogonal_det_one(self):
        for w in Letter:
            assert is_special_orthogonal(letter_matrix(w))

    def test_inverse_is_transpose(self):
        for w in Letter:
            assert letter_matrix(w.inverse()) == matrix_transpose(letter_matrix(w))
            prod = matrix_multiply(letter_matrix(w), letter_matrix(w.inverse()))
            assert prod == tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(3))
                for i in range(3)
            )

    def test_a_image_of_10_1_0_is_fractional(self):
        m = letter_matrix(Letter.A)
        v = (10, 1, 0)
        image = tuple(sum(m[i][j] * v[j] for j in range(3)) for i in range(3))
        assert image == (10, Fraction(-4, 5), Fraction(-3, 5))

    def test_b_image_of_10_1_0(self):
        assert apply_letter_x5(Letter.B, (10, 1, 0)) == (-40, 5, -30)
        m = letter_matrix_x5(Letter.B)
        assert m == ((-4, 0, 3), (0, 5, 0), (-3, 0, -4))
