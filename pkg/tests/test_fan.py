"""Fan validation, primitive collections/relations, positivity, effective cone."""

import random

import pytest
from hypothesis import given, strategies as st

from conftest import brute_force_primitive_collections, random_smooth_2d_fan
from toricmirror.errors import (
    BadFaceIntersection,
    IncompleteFan,
    NonPrimitiveRay,
    NonUnimodularCone,
)
from toricmirror.fan import (
    Positivity,
    chern_degree,
    classify_positivity,
    effective_classes_up_to,
    forced_divisors,
    validate_fan,
)

F2_H = (1, 0, 0, 1)
F2_ALPHA = (-2, 1, 1, 0)


class TestValidation:
    def test_plane_fan_valid(self, p2):
        assert p2.nrays == 3
        assert p2.maximal_cones == ((0, 1), (0, 2), (1, 2))

    def test_f2_cones_inferred_from_angular_order(self, f2):
        assert f2.maximal_cones == ((0, 1), (0, 2), (1, 3), (2, 3))

    def test_two_opposite_rays_incomplete(self):
        with pytest.raises(IncompleteFan):
            validate_fan(2, [(1, 0), (-1, 0)])

    def test_half_plane_gap_incomplete(self):
        with pytest.raises(IncompleteFan):
            validate_fan(2, [(1, 0), (1, 1), (0, 1)])

    def test_non_primitive_ray(self):
        with pytest.raises(NonPrimitiveRay):
            validate_fan(2, [(2, 4), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])

    def test_duplicate_ray(self):
        with pytest.raises(NonPrimitiveRay):
            validate_fan(2, [(1, 0), (1, 0), (0, 1)], [(0, 1), (1, 2), (0, 2)])

    def test_non_unimodular_cone(self):
        # explicit cone spanning with determinant 2
        with pytest.raises(NonUnimodularCone):
            validate_fan(2, [(1, 0), (1, 2), (0, 1), (-1, -1)],
                         [(0, 1), (1, 2), (2, 3), (0, 3)])

    def test_overlapping_cones_rejected(self):
        # cone {0,1} (first quadrant) overlaps cone {4,2} through (1,1)
        with pytest.raises(BadFaceIntersection):
            validate_fan(2, [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)],
                         [(0, 1), (2, 4), (2, 3), (0, 3)])

    def test_missing_cone_incomplete(self):
        with pytest.raises(IncompleteFan):
            validate_fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2)])

    def test_cones_required_above_dim_2(self):
        with pytest.raises(IncompleteFan):
            validate_fan(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)])

    def test_random_fans_validate(self):
        rng = random.Random(99)
        for _ in range(15):
            fan = random_smooth_2d_fan(rng)
            assert fan.nrays <= 10


class TestHomology:
    def test_f2_spans_h_and_alpha(self, f2):
        basis = f2.homology_basis
        assert len(basis) == 2
        from test_lattice import same_lattice

        assert same_lattice(basis, [F2_H, F2_ALPHA])

    def test_p1xp1(self, p1xp1):
        from test_lattice import same_lattice

        assert same_lattice(p1xp1.homology_basis, [(1, 1, 0, 0), (0, 0, 1, 1)])

    def test_plane(self, p2):
        assert p2.homology_basis == ((1, 1, 1),)

    def test_every_class_in_kernel(self, f2):
        for b in f2.homology_basis:
            assert f2.is_homology_class(b)


class TestPrimitiveCollections:
    def test_plane(self, p2):
        assert p2.primitive_collections == ((0, 1, 2),)

    def test_f2(self, f2):
        assert f2.primitive_collections == ((0, 3), (1, 2))

    def test_p1xp1(self, p1xp1):
        assert p1xp1.primitive_collections == ((0, 1), (2, 3))

    def test_definition_holds(self, f2, p2, p1xp1):
        for fan in (f2, p2, p1xp1):
            for coll in fan.primitive_collections:
                assert not fan.spans_cone(coll)
                for i in range(len(coll)):
                    assert fan.spans_cone(coll[:i] + coll[i + 1:])

    def test_matches_brute_force_on_random_fans(self):
        rng = random.Random(5)
        for _ in range(10):
            fan = random_smooth_2d_fan(rng)
            pruned = sorted(fan.primitive_collections, key=lambda s: (len(s), s))
            assert pruned == brute_force_primitive_collections(fan)


class TestPrimitiveRelations:
    def test_f2_base_relation(self, f2):
        rel = f2.primitive_relation((1, 2))
        assert rel.focus == (0,)
        assert rel.multiplicities == (2,)
        assert rel.coords == F2_ALPHA
        assert rel.degree == 0

    def test_f2_fiber_relation(self, f2):
        rel = f2.primitive_relation((0, 3))
        assert rel.focus == ()
        assert rel.coords == F2_H
        assert rel.degree == 2

    def test_plane_relation(self, p2):
        rel = p2.primitive_relation((0, 1, 2))
        assert rel.focus == ()
        assert rel.coords == (1, 1, 1)
        assert rel.degree == 3

    def test_collection_focus_disjoint_on_random_fans(self):
        rng = random.Random(17)
        for _ in range(10):
            fan = random_smooth_2d_fan(rng)
            for rel in fan.primitive_relations:
                assert not set(rel.collection) & set(rel.focus)
                assert all(m > 0 for m in rel.multiplicities)
                assert fan.is_homology_class(rel.coords)
                assert rel.degree == sum(rel.coords)


class TestChernDegree:
    def test_examples(self):
        assert chern_degree(F2_H) == 2
        assert chern_degree(F2_ALPHA) == 0
        assert chern_degree((0, 0, 0, 0)) == 0

    @given(st.lists(st.integers(-9, 9), min_size=4, max_size=4),
           st.lists(st.integers(-9, 9), min_size=4, max_size=4))
    def test_additive(self, a, b):
        total = [x + y for x, y in zip(a, b)]
        assert chern_degree(total) == chern_degree(a) + chern_degree(b)


class TestPositivity:
    def test_battery(self, p1, p2, p1xp1, f2, f3):
        assert classify_positivity(p1) is Positivity.FANO
        assert classify_positivity(p2) is Positivity.FANO
        assert classify_positivity(p1xp1) is Positivity.FANO
        assert classify_positivity(f2) is Positivity.SEMI_FANO_NOT_FANO
        assert classify_positivity(f3) is Positivity.NOT_NEF

    def test_f3_bad_relation_degree(self, f3):
        degrees = sorted(r.degree for r in f3.primitive_relations)
        assert degrees == [-1, 2]

    def test_fano_implies_positive_effective_degrees(self, p1, p2, p1xp1):
        for fan in (p1, p2, p1xp1):
            for cutoff in range(5):
                for cls in effective_classes_up_to(fan, cutoff):
                    if any(cls):
                        assert chern_degree(cls) > 0


class TestEffectiveClasses:
    def test_f2_cutoffs(self, f2):
        zero = (0, 0, 0, 0)
        assert effective_classes_up_to(f2, 0) == [zero]
        assert set(effective_classes_up_to(f2, 1)) == {zero, F2_H, F2_ALPHA}
        expect2 = {
            zero, F2_H, F2_ALPHA,
            tuple(2 * x for x in F2_H),
            tuple(2 * x for x in F2_ALPHA),
            tuple(h + a for h, a in zip(F2_H, F2_ALPHA)),
        }
        assert set(effective_classes_up_to(f2, 2)) == expect2

    def test_monotone_in_cutoff(self, f2, p2):
        for fan in (f2, p2):
            prev = set()
            for cutoff in range(5):
                cur = set(effective_classes_up_to(fan, cutoff))
                assert prev <= cur
                prev = cur

    def test_every_class_is_a_kernel_vector(self, f2):
        for cls in effective_classes_up_to(f2, 3):
            assert f2.is_homology_class(cls)


class TestForcedDivisors:
    def test_examples(self):
        assert forced_divisors((-1, 1, 1, 1)) == (0,)
        assert forced_divisors(F2_ALPHA) == (0,)
        assert forced_divisors(F2_H) == ()
