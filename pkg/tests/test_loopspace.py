from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as strat

from loopalg.errors import (
    NonInvertibleLeadingTermError,
    PrecisionExhaustedError,
    ZeroPolynomialError,
)
from loopalg.exactpoly import Poly, const, parse_poly, xvar, yvar
from loopalg.laurent import TruncSeries
from loopalg.localized import LocalizedCoef
from loopalg.loopspace import (
    complement_relations,
    compose,
    ev_series,
    f_min,
    invert_series,
    relations,
    substitute_y,
)


def x(i, j):
    return xvar(i, j)


class TestEvSeries:
    def test_window(self):
        (s,) = ev_series(1, 1, 2)
        assert s.coeffs == {-1: x(1, -1), 0: x(1, 0), 1: x(1, 1)}
        assert s.cap == 2 and s.floor == -1

    def test_two_coordinates_level_zero(self):
        s1, s2 = ev_series(2, 0, 1)
        assert s1.coeffs == {0: x(1, 0)} and s2.coeffs == {0: x(2, 0)}

    def test_empty_window_rejected(self):
        with pytest.raises(ValueError):
            ev_series(1, 0, 0)


class TestCompose:
    def test_square(self):
        out = compose(parse_poly("x1^2", 1), ev_series(1, 1, 2))
        assert out.cap == 1 and out.floor == -2
        assert out.coeffs == {
            -2: x(1, -1) ** 2,
            -1: 2 * x(1, -1) * x(1, 0),
            0: x(1, 0) ** 2 + 2 * x(1, -1) * x(1, 1),
        }

    def test_constant_is_exact(self):
        out = compose(parse_poly("1", 1), ev_series(1, 1, 2))
        assert out.is_exact() and out.coeffs == {0: Poly.const(1)}

    def test_product_plus_one(self):
        out = compose(parse_poly("x1*x2 + 1", 2), ev_series(2, 1, 2))
        assert out.coeffs == {
            -2: x(1, -1) * x(2, -1),
            -1: x(1, -1) * x(2, 0) + x(1, 0) * x(2, -1),
            0: x(1, -1) * x(2, 1) + x(1, 0) * x(2, 0) + x(1, 1) * x(2, -1) + const(1),
        }
        assert out.cap == 1

    def test_matches_naive_substitution(self):
        # Independent oracle: expand f(x(z)) monomial by monomial with plain
        # dict convolutions, no TruncSeries involved.
        f = parse_poly("x1^2 + 2*x1 - 3", 1)
        level, cap = 1, 3
        window = {j: x(1, j) for j in range(-level, cap)}
        naive = {}

        def accumulate(scale, exps):
            for m, c in exps.items():
                naive[m] = naive.get(m, Poly.zero()) + scale * c

        square = {}
        for a, ca in window.items():
            for b, cb in window.items():
                square[a + b] = square.get(a + b, Poly.zero()) + ca * cb
        accumulate(Fraction(1), square)
        accumulate(Fraction(2), window)
        naive[0] = naive.get(0, Poly.zero()) + const(-3)
        out = compose(f, ev_series(1, level, cap))
        for m in range(out.floor, out.cap):
            assert out.coeffs.get(m, Poly.zero()) == naive.get(m, Poly.zero())

    def test_rejects_indexed_input(self):
        with pytest.raises(ValueError):
            compose(x(1, 0), ev_series(1, 1, 2))

    def test_rejects_missing_coordinate(self):
        with pytest.raises(ValueError):
            compose(parse_poly("x2", 2), ev_series(1, 1, 2))


class TestRelations:
    def test_line_through_origin(self):
        rels = relations([parse_poly("x1", 1)], 1, 1, 2)
        assert [(r.exponent, r.generator) for r in rels] == [
            (-1, x(1, -1)),
            (0, x(1, 0)),
            (1, x(1, 1)),
        ]

    def test_double_point(self):
        rels = relations([parse_poly("x1^2", 1)], 1, 1, 1)
        assert [(r.exponent, r.generator) for r in rels] == [
            (-2, x(1, -1) ** 2),
            (-1, 2 * x(1, -1) * x(1, 0)),
            (0, x(1, 0) ** 2 + 2 * x(1, -1) * x(1, 1)),
        ]

    def test_hyperbola(self):
        rels = relations([parse_poly("x1*x2 - 1", 2)], 2, 1, 1)
        assert [(r.exponent, r.generator) for r in rels] == [
            (-2, x(1, -1) * x(2, -1)),
            (-1, x(1, -1) * x(2, 0) + x(1, 0) * x(2, -1)),
            (0, x(1, -1) * x(2, 1) + x(1, 0) * x(2, 0) + x(1, 1) * x(2, -1) - const(1)),
        ]

    def test_window_growth_appends(self):
        f = parse_poly("x1^2", 1)
        small = relations([f], 1, 1, 2)
        large = relations([f], 1, 1, 5)
        assert large[: len(small)] == small

    def test_multiple_sources(self):
        rels = relations([parse_poly("x1", 2), parse_poly("x2", 2)], 2, 0, 1)
        assert [(r.source, r.generator) for r in rels] == [(0, x(1, 0)), (1, x(2, 0))]


class TestComplementRelations:
    def test_coordinate_complement(self):
        rels = complement_relations(parse_poly("x1", 1), 1, 1, 1)
        assert [(r.exponent, r.generator) for r in rels] == [
            (-2, x(1, -1) * yvar(-1)),
            (-1, x(1, 0) * yvar(-1) + x(1, -1) * yvar(0)),
            (0, x(1, 1) * yvar(-1) + x(1, 0) * yvar(0) + x(1, -1) * yvar(1) - const(1)),
        ]

    def test_unit_hypersurface_forces_y_equal_one(self):
        rels = complement_relations(parse_poly("1", 1), 1, 1, 2)
        assert [(r.exponent, r.generator) for r in rels] == [
            (-1, yvar(-1)),
            (0, yvar(0) - const(1)),
            (1, yvar(1)),
        ]

    def test_square_lowest_relation(self):
        rels = complement_relations(parse_poly("x1^2", 1), 1, 1, 1)
        assert rels[0].exponent == -3
        assert rels[0].generator == x(1, -1) ** 2 * yvar(-1)


class TestFMin:
    def test_coordinate(self):
        assert f_min(parse_poly("x1", 1), 1, 1) == (-1, x(1, -1))

    def test_square(self):
        assert f_min(parse_poly("x1^2", 1), 1, 1) == (-2, x(1, -1) ** 2)

    def test_product_plus_one(self):
        assert f_min(parse_poly("x1*x2 + 1", 2), 2, 1) == (-2, x(1, -1) * x(2, -1))

    def test_level_zero_keeps_all_terms(self):
        assert f_min(parse_poly("x1 - 1", 1), 1, 0) == (0, x(1, 0) - const(1))

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            f_min(Poly.zero(), 1, 1)

    @given(
        strat.sampled_from(["x1", "x1^2", "x1*x2 + 1", "x1*x2 - 1", "x1 + x2"]),
        strat.integers(min_value=0, max_value=3),
    )
    def test_lead_is_never_zero(self, text, level):
        _, lead = f_min(parse_poly(text, 2), 2, level)
        assert lead


class TestInvert:
    def test_coordinate_inverse(self):
        s = compose(parse_poly("x1", 1), ev_series(1, 1, 2))
        t = invert_series(s, 1)
        lead = x(1, -1)
        assert t.cap == 4 and t.floor == 1
        assert t.coeffs[1] == LocalizedCoef(Poly.const(1), 1, lead)
        assert t.coeffs[2] == LocalizedCoef(-x(1, 0), 2, lead)
        assert t.coeffs[3] == LocalizedCoef(
            x(1, 0) ** 2 - x(1, -1) * x(1, 1), 3, lead
        )

    def test_one(self):
        t = invert_series(TruncSeries.constant(Poly.const(1)), 1)
        assert t.is_exact() and t.coeffs[0] == 1

    def test_monomial(self):
        s = TruncSeries.exact({3: const(2)})
        t = invert_series(s, 0)
        assert t.is_exact() and t.coeffs == {-3: LocalizedCoef(Poly.const(1), 1, const(2))}
        assert t.coeffs[-3] == Fraction(1, 2)

    def test_zero_window_rejected(self):
        with pytest.raises(NonInvertibleLeadingTermError):
            invert_series(TruncSeries.zero(), 1)

    def test_exact_multi_term_rejected(self):
        s = TruncSeries.exact({0: const(1), 1: x(1, 0)})
        with pytest.raises(PrecisionExhaustedError):
            invert_series(s, 1)

    def test_dead_leading_term_rejected(self):
        s = TruncSeries({-2: x(1, -2)}, 2, floor=-2)
        with pytest.raises(NonInvertibleLeadingTermError):
            invert_series(s, 1)

    @given(
        strat.sampled_from(["x1", "x1^2", "x1*x2 + 1", "2*x1 + x2^2"]),
        strat.integers(min_value=1, max_value=2),
        strat.integers(min_value=3, max_value=6),
    )
    def test_roundtrip(self, text, level, cap):
        f = parse_poly(text, 2)
        s = compose(f, ev_series(2, level, cap))
        t = invert_series(s, level)
        product = s * t
        assert product.cap > 0
        for m, c in product.coeffs.items():
            assert c == 1 if m == 0 else not c
        assert product.coeffs[0] == 1


class TestFactoringWitness:
    @given(
        strat.sampled_from(["x1", "x1^2", "x1*x2 + 1"]),
        strat.integers(min_value=1, max_value=2),
    )
    def test_substitution_annihilates_generators(self, text, level):
        f = parse_poly(text, 2)
        s = compose(f, ev_series(2, level, 6))
        t = invert_series(s, level)
        lead = s.coeffs[min(s.coeffs)]
        window = (s.cap - min(s.coeffs)) - f.total_degree() * level
        for relation in complement_relations(f, 2, level, window):
            assert not substitute_y(relation.generator, t, lead)

    def test_unknown_coefficient_raises(self):
        f = parse_poly("x1", 1)
        s = compose(f, ev_series(1, 1, 3))
        t = invert_series(s, 1)
        generator = yvar(t.cap) * x(1, -1)
        with pytest.raises(PrecisionExhaustedError):
            substitute_y(generator, t, s.coeffs[-1])
