import math

import pytest

from linnik.errors import PreconditionError, StepCountError
from linnik.lattice import LatticePoint, enumerate_hd, orbit_key
from linnik.quaternion import Letter
from linnik.walk import (
    canonical_segment_key,
    extend_trajectory,
    linnik_step,
    orbit_period,
    shadowing_check,
    sigma_count,
    trajectory_groups,
    word_window,
)

L = Letter


class TestStep:
    def test_example_10_1_0(self):
        assert linnik_step((10, 1, 0), 101) == [
            (L.B, LatticePoint(-8, 1, -6)),
            (L.B_INV, LatticePoint(-8, 1, 6)),
        ]

    def test_example_7_4_m6(self):
        hits = linnik_step((7, 4, -6), 101)
        assert (L.B_INV, LatticePoint(-2, 4, 9)) in hits

    def test_violation_when_5_divides_d(self):
        # d = 5: some points have fewer than two integral images
        with pytest.raises(StepCountError) as err:
            for p in enumerate_hd(5):
                linnik_step(p, 5)
        assert err.value.count != 2

    def test_norm_checked(self):
        with pytest.raises(PreconditionError):
            linnik_step((1, 1, 1), 101)

    def test_two_of_six_small_range(self):
        from linnik.arith import is_squarefree

        for d in range(1, 400):
            if d % 5 not in (1, 4) or not is_squarefree(d):
                continue
            for p in enumerate_hd(d):
                assert len(linnik_step(p, d)) == 2

    def test_d1_fixed_point(self):
        hits = linnik_step((1, 0, 0), 1)
        assert [w for w, _ in hits] == [L.A, L.A_INV]
        assert all(img == (1, 0, 0) for _, img in hits)


PAPER_POINTS = [
    (10, 1, 0), (-8, 1, -6), (7, 4, -6), (-2, 4, 9),
    (4, -2, 9), (4, 7, -6), (1, -8, -6), (1, 10, 0),
]
PAPER_WORD = [L.B, L.C_INV, L.B_INV, L.C_INV, L.A, L.C_INV, L.A_INV]


class TestTrajectory:
    def test_paper_forward_segment(self):
        seg = extend_trajectory((10, 1, 0), 7, 101)
        assert [tuple(p) for p in seg.points[seg.center:]] == PAPER_POINTS
        assert list(seg.letters[seg.center:]) == PAPER_WORD

    def test_segment_shape_and_validity(self):
        seg = extend_trajectory((7, 4, -6), 3, 101)
        assert len(seg.points) == 7
        assert len(seg.letters) == 6
        assert seg.points[seg.center] == (7, 4, -6)
        assert seg.validate()

    def test_zero_length(self):
        seg = extend_trajectory((10, 1, 0), 0, 101)
        assert seg.points == (LatticePoint(10, 1, 0),)
        assert seg.letters == ()

    def test_reversal_is_the_other_orientation(self):
        seg = extend_trajectory((10, 1, 0), 4, 101)
        rev = seg.reversed()
        assert rev.validate()
        assert rev.points[rev.center] == seg.points[seg.center]
        # the reversed forward letter is the second step candidate
        hits = linnik_step((10, 1, 0), 101)
        assert rev.letters[rev.center] == hits[1][0]
        assert rev.reversed() == seg

    def test_word_reduced(self):
        seg = extend_trajectory((9, 4, 2), 6, 101)
        for w1, w2 in zip(seg.letters, seg.letters[1:]):
            assert w2 != w1.inverse()

    def test_all_points_on_sphere(self):
        seg = extend_trajectory((6, 1, 8), 5, 101)
        assert all(p.norm() == 101 for p in seg.points)


class TestPeriod:
    def test_paper_period_7(self):
        assert orbit_period((10, 1, 0), 101) == 7

    def test_second_trajectory_frozen(self):
        # second trajectory displayed for d = 101; frozen by forward run
        assert orbit_period((6, 1, 8), 101) == 7

    def test_d1_frozen(self):
        # d = 1 is formally admissible (1 = 1 mod 5); the constant
        # trajectory returns immediately
        assert orbit_period((1, 0, 0), 1) == 1

    def test_class_group_orders_match(self):
        # order of the prime class above 5 (mod the ramified 2-class
        # for d = 1,2 mod 4) equals the orbit period
        from linnik.arith import (
            class_group, element_order, fundamental_disc_for, prime_above_form,
        )

        for d in (19, 59, 131, 51, 101, 21, 29):
            if d % 5 not in (1, 4):
                continue
            group = class_group(fundamental_disc_for(d))
            p5 = prime_above_form(group, 5)
            start = enumerate_hd(d)[0]
            period = orbit_period(start, d)
            if d % 8 == 3:
                assert period == element_order(group, p5), d
            else:
                q2 = prime_above_form(group, 2)
                cur = p5
                quotient_order = 1
                while cur != group.identity and cur != q2:
                    cur = group.compose(cur, p5)
                    quotient_order += 1
                assert period == quotient_order, d


class TestShadowing:
    def test_equal_points(self):
        assert shadowing_check((10, 1, 0), (10, 1, 0), 2, 101) == (True, True)

    def test_antipodal(self):
        assert shadowing_check((10, 1, 0), (-10, -1, 0), 2, 101) == (True, True)

    def test_exhaustive_small(self, h101):
        window = {p: word_window(p, 1, 101) for p in h101}
        mod = 5
        for x in h101[::7]:
            for y in h101:
                agree, cong = shadowing_check(x, y, 1, 101)
                assert agree == cong, (x, y)

    def test_words_and_congruence_disagreeing_points(self):
        # two points in distinct residue classes mod 5 must differ
        x, y = (10, 1, 0), (9, 4, 2)
        agree, cong = shadowing_check(x, y, 1, 101)
        assert agree == cong


class TestSigma:
    def test_diagonal_lower_bound(self, h101):
        assert sigma_count(101, 1, 7) >= len(h101)

    @pytest.mark.parametrize(
        "d,ell,q,frozen",
        [
            (101, 3, 7, 168),   # diagonal only: q^2 5^(2l) >> d
            (1011, 1, 7, 384),  # genuine off-diagonal coincidences
        ],
    )
    def test_frozen_value_and_oracle(self, d, ell, q, frozen):
        # independent oracle: all-pairs comparison with explicit
        # two-alignment matching
        points = enumerate_hd(d)
        segs = {p: extend_trajectory(p, ell, d) for p in points}

        def key(seg):
            return (seg.reduce_mod(q), tuple(seg.letters))

        keys = {p: (key(s), key(s.reversed())) for p, s in segs.items()}
        brute = 0
        for x in points:
            for y in points:
                kx, _ = keys[x]
                ky, ky_rev = keys[y]
                if kx == ky or kx == ky_rev:
                    brute += 1
        production = sigma_count(d, ell, q)
        assert production == brute == frozen

    def test_counted_pairs_satisfy_dot_congruence(self):
        ell, q = 2, 7
        modulus = q * q * 5 ** (2 * ell)
        groups = trajectory_groups(101, ell, q)
        for members in groups.values():
            for x in members:
                for y in members:
                    dot = 2 * (x[0] * y[0] + x[1] * y[1] + x[2] * y[2])
                    assert dot % modulus in (
                        (2 * 101) % modulus,
                        (-2 * 101) % modulus,
                    )

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            sigma_count(101, 0, 7)
        with pytest.raises(PreconditionError):
            sigma_count(101, 2, 35)

    def test_mean_square_style_bound(self, h101):
        # sigma <= |H_d| + sum over admissible e of dot-pair counts
        from linnik.arith import dot_pair_count

        ell, q = 1, 7
        modulus = q * q * 5 ** (2 * ell)
        sigma = sigma_count(101, ell, q)
        bound = len(h101)
        d = 101
        for e in range(-d, d + 1):
            if e == d:
                continue
            if (2 * e - 2 * d) % modulus == 0 or (2 * e + 2 * d) % modulus == 0:
                bound += dot_pair_count(d, e)
        assert sigma <= bound


def test_canonical_key_is_orientation_free():
    seg = extend_trajectory((10, 1, 0), 2, 101)
    assert canonical_segment_key(seg, 7) == canonical_segment_key(seg.reversed(), 7)
