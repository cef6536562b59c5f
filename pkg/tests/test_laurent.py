"""Exact Laurent arithmetic, serialization order, numeric evaluation."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toricmirror.errors import ZeroCoordinate
from toricmirror.laurent import LaurentPoly, QPoly, evaluate

# random small polynomials in 2 z-variables and 2 q-variables
q_polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    max_size=3,
).map(lambda d: QPoly(2, d))

laurent_polys = st.dictionaries(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    q_polys,
    max_size=4,
).map(lambda d: LaurentPoly(2, 2, d))


class TestQPoly:
    def test_zero_terms_dropped(self):
        p = QPoly(1, {(0,): Fraction(1), (1,): Fraction(0)})
        assert p.terms == {(0,): Fraction(1)}

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            QPoly(1, {(-1,): Fraction(1)})

    def test_str(self):
        one_plus_q1 = QPoly.constant(2, 1) + QPoly.monomial((1, 0))
        assert str(one_plus_q1) == "1 + q1"
        assert str(QPoly.monomial((1, 2), Fraction(3, 2))) == "3/2*q1*q2^2"

    @given(q_polys, q_polys, q_polys)
    @settings(max_examples=60)
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + QPoly.zero(2) == a
        assert a * QPoly.constant(2, 1) == a


class TestLaurentPoly:
    @given(laurent_polys, laurent_polys, laurent_polys)
    @settings(max_examples=40)
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c

    def test_serialization_order(self):
        p = (LaurentPoly.monomial((1, 0), QPoly.constant(2, 1))
             + LaurentPoly.monomial((-1, -2), QPoly.monomial((1, 2)))
             + LaurentPoly.monomial((0, -1),
                                    QPoly.monomial((0, 1)) + QPoly.monomial((1, 1))))
        zexps = [z for z, _ in p.sorted_terms()]
        assert zexps == sorted(zexps)
        for _, coeff in p.sorted_terms():
            degrees = [sum(e) for e, _ in coeff.sorted_terms()]
            assert degrees == sorted(degrees)

    def test_str_matches_display_form(self):
        p = (LaurentPoly.monomial((1, 0), QPoly.constant(2, 1))
             + LaurentPoly.monomial((0, 1), QPoly.constant(2, 1))
             + LaurentPoly.monomial((-1, -2), QPoly.monomial((1, 2)))
             + LaurentPoly.monomial((0, -1),
                                    QPoly.monomial((0, 1)) + QPoly.monomial((1, 1))))
        assert str(p) == "q1*q2^2/(z1*z2^2) + (q2 + q1*q2)/z2 + z2 + z1"

    def test_log_derivative(self):
        # z + q/z: z d/dz = z - q/z
        p = (LaurentPoly.monomial((1,), QPoly.constant(1, 1))
             + LaurentPoly.monomial((-1,), QPoly.monomial((1,))))
        d = p.log_derivative(0)
        assert d == (LaurentPoly.monomial((1,), QPoly.constant(1, 1))
                     + LaurentPoly.monomial((-1,), QPoly.monomial((1,), -1)))


class TestEvaluate:
    def test_line_potential(self):
        p = (LaurentPoly.monomial((1,), QPoly.constant(1, 1))
             + LaurentPoly.monomial((-1,), QPoly.monomial((1,))))
        t = math.log(100.0)  # q = 0.01
        assert evaluate(p, [0.1], [t]) == pytest.approx(0.2)

    def test_constant(self):
        p = LaurentPoly.monomial((0, 0), QPoly.constant(0, 1))
        assert evaluate(p, [3.0, -2.0], []) == 1.0

    def test_zero_coordinate(self):
        p = LaurentPoly.monomial((1,), QPoly.constant(0, 1))
        with pytest.raises(ZeroCoordinate):
            evaluate(p, [0.0], [])

    @given(laurent_polys,
           st.tuples(st.floats(0.2, 3.0), st.floats(0.2, 3.0)),
           st.tuples(st.floats(-0.5, 3.0), st.floats(-0.5, 3.0)))
    @settings(max_examples=50)
    def test_matches_naive_summation(self, poly, zmag, t):
        # naive oracle: plain repeated-multiplication sum of every term
        z = [complex(m, 0.3) for m in zmag]
        q = [math.exp(-v) for v in t]

        def naive():
            total = 0j
            for zexp, coeff in poly.terms.items():
                for qexp, frac in coeff.terms.items():
                    term = complex(float(frac))
                    for base, e in zip(q, qexp):
                        for _ in range(e):
                            term *= base
                    for base, e in zip(z, zexp):
                        if e >= 0:
                            for _ in range(e):
                                term *= base
                        else:
                            for _ in range(-e):
                                term /= base
                    total += term
            return total

        got = evaluate(poly, z, t)
        expected = naive()
        assert got == pytest.approx(expected, rel=1e-12, abs=1e-12)
