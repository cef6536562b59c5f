"""Integer lattice algebra against sympy oracles and brute force."""

import random
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from toricmirror.errors import (
    DependentGenerators,
    DimensionMismatch,
    NotFullRank,
    ZeroVector,
)
from toricmirror.lattice import (
    cone_coefficients,
    elementary_divisors,
    hermite_normal_form,
    is_primitive,
    kernel_basis,
    matrix_det,
    solve_unique,
    unimodular_map_search,
)

F2_RAY_MATRIX = [[0, 1, -1, 0], [-1, 0, -2, 1]]  # columns are the F2 rays


def in_lattice(vec, basis):
    """Exact test that vec is an integer combination of the basis rows."""
    if not basis:
        return all(x == 0 for x in vec)
    cols = [[b[i] for b in basis] for i in range(len(vec))]
    sol = solve_unique(cols, list(vec))
    return sol is not None and all(c.denominator == 1 for c in sol)


def same_lattice(basis_a, basis_b):
    return all(in_lattice(v, basis_b) for v in basis_a) and all(
        in_lattice(v, basis_a) for v in basis_b
    )


class TestKernelBasis:
    def test_f2_spans_fiber_and_base_classes(self):
        basis = kernel_basis(F2_RAY_MATRIX)
        assert len(basis) == 2
        assert same_lattice(basis, [(1, 0, 0, 1), (-2, 1, 1, 0)])

    def test_plane_and_line(self):
        assert kernel_basis([[1, 0, -1], [0, 1, -1]]) == [(1, 1, 1)]
        assert kernel_basis([[1, -1]]) == [(1, 1)]

    def test_dependent_rows_rejected(self):
        with pytest.raises(NotFullRank):
            kernel_basis([[1, 2, 3], [2, 4, 6]])

    def test_exactness_and_rank_on_random_matrices(self):
        rng = random.Random(7)
        for _ in range(40):
            rows = rng.randint(1, 3)
            cols = rng.randint(rows, 5)
            mat = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
            if sympy.Matrix(mat).rank() < rows:
                with pytest.raises(NotFullRank):
                    kernel_basis(mat)
                continue
            basis = kernel_basis(mat)
            assert len(basis) == cols - rows
            for b in basis:
                assert all(sum(r[j] * b[j] for j in range(cols)) == 0 for r in mat)

    def test_saturation_by_brute_force(self):
        # every small integer kernel vector must be an integer combination
        # of the returned basis
        rng = random.Random(21)
        for _ in range(10):
            cols = rng.randint(2, 4)
            mat = [[rng.randint(-3, 3) for _ in range(cols)]]
            if all(x == 0 for x in mat[0]):
                continue
            basis = kernel_basis(mat)
            for cand in product(range(-3, 4), repeat=cols):
                if sum(a * b for a, b in zip(mat[0], cand)) == 0:
                    assert in_lattice(cand, basis), (mat, cand, basis)


class TestHermiteSmith:
    def test_hnf_transform_is_unimodular(self):
        rng = random.Random(11)
        for _ in range(25):
            m = rng.randint(1, 4)
            n = rng.randint(1, 4)
            mat = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
            H, U = hermite_normal_form(mat)
            assert abs(matrix_det(U)) == 1
            for i in range(m):
                for j in range(n):
                    assert sum(U[i][k] * mat[k][j] for k in range(m)) == H[i][j]

    def test_elementary_divisors_match_sympy(self):
        from sympy.matrices.normalforms import smith_normal_form

        rng = random.Random(13)
        for _ in range(25):
            m = rng.randint(1, 4)
            n = rng.randint(1, 4)
            mat = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
            snf = smith_normal_form(sympy.Matrix(mat))
            expected = [abs(int(snf[i, i])) for i in range(min(m, n)) if snf[i, i] != 0]
            assert elementary_divisors(mat) == expected


class TestPrimitive:
    def test_examples(self):
        assert is_primitive((-1, -2))
        assert not is_primitive((2, 4))
        assert is_primitive((0, 1))

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            is_primitive((0, 0, 0))

    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=5))
    def test_matches_gcd(self, vec):
        import math

        if not any(vec):
            with pytest.raises(ZeroVector):
                is_primitive(vec)
        else:
            assert is_primitive(vec) == (math.gcd(*(abs(x) for x in vec)) == 1)


class TestConeCoefficients:
    def test_base_relation_direction(self):
        assert cone_coefficients((0, -2), [(0, -1)]) == (Fraction(2),)

    def test_origin_in_zero_cone(self):
        assert cone_coefficients((0, 0), []) == ()
        assert cone_coefficients((1, 0), []) is None

    def test_outside_span(self):
        assert cone_coefficients((1, 1), [(1, 0)]) is None

    def test_negative_coefficient_rejected(self):
        assert cone_coefficients((-1, 0), [(1, 0), (0, 1)]) is None

    def test_dependent_generators(self):
        with pytest.raises(DependentGenerators):
            cone_coefficients((1, 1), [(1, 0), (2, 0)])

    def test_reconstruction_is_exact(self):
        rng = random.Random(3)
        for _ in range(30):
            gens = [(1, 0, 0), (0, 1, 1), (0, 0, 2)]
            coeffs = [Fraction(rng.randint(0, 8), rng.randint(1, 4)) for _ in gens]
            point = [
                sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(3)
            ]
            got = cone_coefficients(point, gens)
            assert got == tuple(coeffs)


class TestUnimodularSearch:
    BUNDLE = ([(0, 1), (1, 1), (-1, 1), (0, -1)],
              [(0, 1), (0, 2), (1, 3), (2, 3)])
    PAPERF2 = ([(0, -1), (1, 0), (-1, -2), (0, 1)],
               [(0, 1), (0, 2), (1, 3), (2, 3)])

    def test_two_f2_conventions(self):
        T = unimodular_map_search(*self.BUNDLE, *self.PAPERF2)
        assert T is not None
        assert abs(matrix_det(T)) == 1
        rays_a, cones_a = self.BUNDLE
        rays_b, cones_b = self.PAPERF2
        images = [
            tuple(sum(T[i][j] * r[j] for j in range(2)) for i in range(2))
            for r in rays_a
        ]
        assert sorted(images) == sorted(rays_b)
        lookup = {r: i for i, r in enumerate(rays_b)}
        mapped = {frozenset(lookup[images[i]] for i in c) for c in cones_a}
        assert mapped == {frozenset(c) for c in cones_b}

    def test_identity_on_self(self):
        rays, cones = self.PAPERF2
        assert unimodular_map_search(rays, cones, rays, cones) == ((1, 0), (0, 1))

    def test_ray_count_mismatch(self):
        plane = ([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])
        assert unimodular_map_search(*plane, *self.PAPERF2) is None

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            unimodular_map_search([(1,), (-1,)], [(0,), (1,)], *self.PAPERF2)

    def test_caps(self):
        rays = [(1, 0)] * 20
        with pytest.raises(ValueError):
            unimodular_map_search(rays, [], rays, [])
