import numpy as np
import pytest

from linnik.config import Budgets
from linnik.errors import BudgetError
from linnik.lattice import (
    LatticePoint,
    SO3Z,
    SO3Z_EVEN,
    apply_matrix,
    count_hd,
    enumerate_hd,
    enumerate_hd_array,
    is_primitive,
    legendre_representable,
    orbit_of,
    signed_permutations_closure_ok,
    so3z_orbits,
)


class TestLegendre:
    def test_seven_excluded(self):
        assert not legendre_representable(7)

    def test_101_representable(self):
        assert legendre_representable(101)

    def test_28_excluded(self):
        assert not legendre_representable(28)  # 4 * 7

    def test_matches_enumeration_up_to_10000(self):
        for d in range(1, 10001):
            assert (count_hd(d) > 0) == legendre_representable(d), d


class TestEnumeration:
    def test_d1(self):
        assert enumerate_hd(1) == sorted(
            [
                (1, 0, 0), (-1, 0, 0), (0, 1, 0),
                (0, -1, 0), (0, 0, 1), (0, 0, -1),
            ]
        )

    def test_d101_count(self, h101):
        assert len(h101) == 168

    def test_golden_8011(self):
        # frozen from this enumeration (cross-checked by 24*h(-8011))
        assert count_hd(8011) == 600

    def test_lexicographic_and_deduplicated(self, h101):
        assert h101 == sorted(set(h101))

    def test_norms_exact(self, h101):
        assert all(p.norm() == 101 for p in h101)

    def test_closed_under_signed_permutations(self, h101):
        assert signed_permutations_closure_ok(h101)
        assert signed_permutations_closure_ok(enumerate_hd(59))

    def test_enumeration_cap_is_an_error(self):
        tight = Budgets(enum_cap=100)
        with pytest.raises(BudgetError):
            enumerate_hd(101, tight)
        with pytest.raises(BudgetError):
            count_hd(101, tight)

    def test_wide_norms(self):
        # intermediates must not overflow for large coordinates
        p = LatticePoint(2**31 - 1, 2**30, 5)
        assert p.norm() == (2**31 - 1) ** 2 + 2**60 + 25


class TestGroups:
    def test_group_sizes(self):
        assert len(SO3Z) == 24
        assert len(SO3Z_EVEN) == 12

    def test_special_orthogonal(self):
        for m in SO3Z:
            arr = np.array(m)
            assert (arr @ arr.T == np.eye(3, dtype=int)).all()
            assert round(np.linalg.det(arr)) == 1

    def test_even_subgroup_closed(self):
        even = set(SO3Z_EVEN)
        for m in SO3Z_EVEN:
            for n in SO3Z_EVEN:
                prod = tuple(
                    tuple(
                        sum(m[i][k] * n[k][j] for k in range(3)) for j in range(3)
                    )
                    for i in range(3)
                )
                assert prod in even


class TestOrbits:
    def test_paper_representatives_d101(self, h101):
        orbits = so3z_orbits(h101)
        assert len(orbits) == 7
        listed = [
            (10, 1, 0),
            (9, 4, 2), (-9, -4, -2),
            (8, 6, 1), (-8, -6, -1),
            (7, 6, 4), (-7, -6, -4),
        ]
        orbit_index = {}
        for i, orbit in enumerate(orbits):
            for p in orbit:
                orbit_index[p] = i
        hit = {orbit_index[LatticePoint(*p)] for p in listed}
        assert hit == set(range(7))

    def test_even_orbit_count_is_class_number(self, h101):
        # |Pic(-404)| = 14 = number of SO3(Z)+ orbits
        assert len(so3z_orbits(h101, even_only=True)) == 14

    def test_h1_single_orbit(self):
        assert len(so3z_orbits(enumerate_hd(1))) == 1

    def test_orbit_stabilizer(self, h101):
        for orbit in so3z_orbits(h101):
            rep = orbit[0]
            stab = sum(1 for m in SO3Z if apply_matrix(m, rep) == rep)
            assert len(orbit) * stab == 24
        for orbit in so3z_orbits(enumerate_hd(1), even_only=True):
            rep = orbit[0]
            stab = sum(1 for m in SO3Z_EVEN if apply_matrix(m, rep) == rep)
            assert len(orbit) * stab == 12

    def test_orbits_partition(self, h101):
        orbits = so3z_orbits(h101)
        assert sum(len(o) for o in orbits) == len(h101)
        assert orbit_of(LatticePoint(10, 1, 0)) == set(
            next(o for o in orbits if LatticePoint(10, 1, 0) in o)
        )


class TestPrimitivity:
    def test_unit_coordinate(self):
        assert is_primitive((10, 1, 0))

    def test_common_factor(self):
        assert not is_primitive((2, 2, 0))

    def test_squarefree_d_all_primitive(self):
        for d in (101, 389, 59):
            assert all(is_primitive(p) for p in enumerate_hd(d))

    def test_non_squarefree_exceptions_exist(self):
        # d = 4: (2,0,0) = 2*(1,0,0) is imprimitive
        assert any(not is_primitive(p) for p in enumerate_hd(4))


def test_array_and_list_agree(h101):
    arr = enumerate_hd_array(101)
    assert [tuple(r) for r in arr.tolist()] == [tuple(p) for p in h101]
