import json
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from germsum.errors import (DimensionMismatchError, InsufficientTruncationError,
                            ZeroSeriesError)
from germsum.scalars import QQi, parse_scalar
from germsum.series import (MonomialOrder, TruncatedSeries, majorant_norm,
                            series_from_json, series_to_json, substitute, v_ell)

from helpers import random_series

TS = TruncatedSeries


def S(dim, trunc, terms):
    return TS(dim, trunc, terms)


class TestAdd:
    def test_additive_inverse(self):
        x1 = TS.variable(0, 2, 5)
        assert (x1 + (-x1)).is_zero

    def test_disjoint_supports(self):
        a = S(2, 5, {(0, 0): 1, (1, 1): 1})
        b = S(2, 5, {(0, 2): 1})
        assert (a + b).terms == {(0, 0): 1, (1, 1): 1, (0, 2): 1}

    def test_truncation_contract(self):
        a = S(2, 3, {(1, 0): 1})
        b = S(2, 5, {(0, 1): 1})
        assert (a + b).trunc == 3

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            S(2, 3, {}) + S(3, 3, {})


class TestMul:
    def test_difference_of_squares(self):
        one = TS.one(2, 4)
        x1 = TS.variable(0, 2, 4)
        assert ((one + x1) * (one - x1)).terms == {(0, 0): 1, (2, 0): -1}

    def test_cusp_product(self):
        # (x2^2 - x1^3)(-x1^3 - x2^2) = x1^6 - x2^4
        a = S(2, 10, {(0, 2): 1, (3, 0): -1})
        b = S(2, 10, {(3, 0): -1, (0, 2): -1})
        assert (a * b).terms == {(6, 0): 1, (0, 4): -1}

    def test_mul_zero(self):
        p = S(2, 8, {(1, 1): 3, (0, 2): -2})
        assert (p * TS.zero(2, 8)).is_zero

    def test_trunc_min_rule(self):
        a = S(2, 3, {(1, 0): 1})
        b = S(2, 7, {(1, 0): 1})
        prod = a * b
        assert prod.trunc == 3 and prod.terms == {(2, 0): 1}


class TestSubstitute:
    def test_blowup_style(self):
        f = S(2, 6, {(1, 1): 1})
        images = [TS.variable(1, 2, 6), S(2, 6, {(1, 1): 1, (0, 1): 1})]
        assert substitute(f, images).terms == {(0, 2): 1, (1, 2): 1}

    def test_ramification_style(self):
        f = S(2, 6, {(1, 0): 1, (0, 1): 1})
        images = [S(2, 12, {(2, 0): 1}), TS.variable(1, 2, 12)]
        out = substitute(f, images)
        assert out.terms == {(2, 0): 1, (0, 1): 1}

    def test_factorial_family(self):
        # sum n! x2^(2n) (x1 x2)^n under (x1,x2) -> (v2, v1 v2)
        fact = 1
        terms = {}
        for n in range(11):
            terms[(n, 3 * n)] = fact
            fact *= n + 1
        f = S(2, 70, terms)
        images = [TS.variable(1, 2, 70), S(2, 70, {(1, 1): 1})]
        out = substitute(f, images)
        fact = 1
        for n in range(11):
            assert out.terms[(3 * n, 4 * n)] == fact
            fact *= n + 1

    def test_image_count_and_dimension_checks(self):
        f = S(2, 5, {(1, 1): 1})
        with pytest.raises(DimensionMismatchError):
            substitute(f, [TS.variable(0, 2, 5)])
        with pytest.raises(DimensionMismatchError):
            substitute(f, [TS.variable(0, 2, 5), TS.variable(0, 3, 5)])

    def test_unit_image_requires_override(self):
        f = S(1, 5, {(2,): 1})
        unit = S(1, 5, {(0,): 1, (1,): 1})
        with pytest.raises(InsufficientTruncationError):
            substitute(f, [unit])
        out = substitute(f, [unit], out_trunc=5)
        assert out.terms == {(0,): 1, (1,): 2, (2,): 1}

    def test_homomorphism_on_sample(self):
        rng = random.Random(7)
        images = [S(2, 12, {(1, 0): 1, (1, 1): 2}),
                  S(2, 12, {(0, 1): Fraction(1, 2)})]
        for _ in range(25):
            f = random_series(rng, 2, 6)
            g = random_series(rng, 2, 6)
            sf, sg = substitute(f, images), substitute(g, images)
            assert substitute(f * g, images).agrees_with(sf * sg)
            assert substitute(f + g, images).agrees_with(sf + sg)


class TestVEll:
    def test_weighted(self):
        f = S(2, 10, {(0, 2): 1, (3, 0): -1})
        assert v_ell(f, MonomialOrder((1, 2))) == (3, 0)

    def test_divisibility_forced(self):
        f = S(2, 10, {(1, 1): 1, (2, 1): 1})
        for order in (MonomialOrder((1, 1)), MonomialOrder((3, 1), "revlex")):
            assert v_ell(f, order) == (1, 1)

    def test_tiebreak(self):
        f = S(2, 10, {(1, 0): 1, (0, 1): 1})
        assert v_ell(f, MonomialOrder((1, 1), "lex")) == (1, 0)
        assert v_ell(f, MonomialOrder((1, 1), "revlex")) == (0, 1)

    def test_zero_series(self):
        with pytest.raises(ZeroSeriesError):
            v_ell(TS.zero(2, 5), MonomialOrder((1, 1)))

    def test_multiplicativity(self):
        rng = random.Random(3)
        order = MonomialOrder((Fraction(2, 3), Fraction(1)))
        for _ in range(50):
            f = random_series(rng, 2, 12, nonzero=True, max_terms=5)
            g = random_series(rng, 2, 12, nonzero=True, max_terms=5)
            prod = f * g
            if prod.is_zero:
                continue
            assert v_ell(prod, order) == tuple(
                a + b for a, b in zip(v_ell(f, order), v_ell(g, order)))


class TestMajorantNorm:
    def test_zero(self):
        assert majorant_norm(TS.zero(2, 4), 0.5) == 0.0

    def test_single_term(self):
        import math
        for n in (1, 3, 7):
            f = S(2, 40, {(0, 2 * n): math.factorial(n)})
            assert majorant_norm(f, Fraction(1, 2)) == pytest.approx(
                math.factorial(n) / 4 ** n)

    def test_three_terms(self):
        f = S(2, 4, {(0, 0): 1, (1, 0): 1, (0, 1): 1})
        assert majorant_norm(f, 1) == pytest.approx(3.0)

    def test_sub_additive_multiplicative(self):
        rng = random.Random(11)
        for _ in range(40):
            f = random_series(rng, 2, 8, complex_coeffs=True)
            g = random_series(rng, 2, 8, complex_coeffs=True)
            rho = rng.choice([Fraction(1, 2), Fraction(1, 3), 1])
            nf, ng = majorant_norm(f, rho), majorant_norm(g, rho)
            assert majorant_norm(f + g, rho) <= nf + ng + 1e-12
            assert majorant_norm(f * g, rho) <= nf * ng + 1e-12


small_series = st.builds(
    lambda entries, trunc: TS(2, trunc, dict(entries)),
    st.lists(st.tuples(
        st.tuples(st.integers(0, 4), st.integers(0, 4)),
        st.fractions(min_value=-5, max_value=5, max_denominator=4)),
        max_size=6),
    st.integers(4, 8))


class TestRingAxioms:
    @given(small_series, small_series, small_series)
    @settings(max_examples=60, deadline=None)
    def test_associativity_distributivity(self, a, b, c):
        assert ((a * b) * c).agrees_with(a * (b * c))
        assert (a * (b + c)).agrees_with(a * b + a * c)

    @given(small_series, small_series)
    @settings(max_examples=60, deadline=None)
    def test_commutativity(self, a, b):
        assert (a * b) == (b * a)
        assert (a + b) == (b + a)


class TestOrderKey:
    @given(st.tuples(st.integers(0, 6), st.integers(0, 6)),
           st.tuples(st.integers(0, 6), st.integers(0, 6)),
           st.tuples(st.integers(0, 3), st.integers(0, 3)))
    @settings(max_examples=100, deadline=None)
    def test_translation_invariance(self, a, b, c):
        order = MonomialOrder((Fraction(2, 3), Fraction(3, 2)))
        shift = lambda e: tuple(x + y for x, y in zip(e, c))
        assert (order.key(a) < order.key(b)) == (
            order.key(shift(a)) < order.key(shift(b)))

    def test_total_order(self):
        order = MonomialOrder((1, 2))
        exps = [(i, j) for i in range(5) for j in range(5)]
        keys = {order.key(e) for e in exps}
        assert len(keys) == len(exps)

    def test_positive_weights_required(self):
        with pytest.raises(ValueError):
            MonomialOrder((1, 0))


class TestScalarsAndPruning:
    def test_mixed_exact_complex(self):
        a = S(2, 4, {(1, 0): QQi(1, 1)})
        b = S(2, 4, {(1, 0): QQi(0, -1)})
        assert (a + b).terms == {(1, 0): QQi(1)}
        assert (a + b).terms[(1, 0)] == Fraction(1)

    def test_exact_float_promotion(self):
        a = S(2, 4, {(1, 0): Fraction(1, 3)})
        b = S(2, 4, {(1, 0): mpmath.mpf("0.25")})
        c = (a * b).terms[(2, 0)]
        assert isinstance(c, (mpmath.mpf, mpmath.mpc))
        with mpmath.mp.workprec(128):
            assert abs(c - mpmath.mpf(1) / 12) < 1e-30

    def test_float_pruning_relative_per_degree(self):
        big = mpmath.mpf("1e30")
        tiny = big * mpmath.mpf(2) ** (-80)
        f = S(2, 4, {(1, 0): big, (0, 1): tiny, (0, 2): tiny})
        assert (0, 1) not in f.terms          # same degree as the big term
        assert (0, 2) in f.terms              # its own degree scale

    def test_exact_zero_never_stored(self):
        f = S(2, 4, {(1, 0): Fraction(0), (0, 1): QQi(0, 0)})
        assert f.is_zero

    def test_parse_scalar(self):
        assert parse_scalar("3/4") == Fraction(3, 4)
        assert parse_scalar("1/2+1/3j") == QQi(Fraction(1, 2), Fraction(1, 3))
        z = parse_scalar("0.5-0.25j")
        assert isinstance(z, QQi) and z.im == Fraction(-1, 4)


class TestJson:
    def test_round_trip_exact(self):
        f = S(2, 6, {(1, 2): Fraction(-3, 7), (0, 0): QQi(1, Fraction(1, 2))})
        assert series_from_json(json.loads(json.dumps(series_to_json(f)))) == f

    def test_round_trip_float(self):
        f = S(2, 6, {(1, 1): mpmath.mpc("0.125", "-2.5")})
        g = series_from_json(json.loads(json.dumps(series_to_json(f))))
        assert g.terms[(1, 1)] == mpmath.mpc("0.125", "-2.5")

    def test_sorted_exponents_byte_stable(self):
        f = S(2, 6, {(2, 0): 1, (0, 1): 2, (1, 1): 3})
        blob1 = json.dumps(series_to_json(f))
        g = TS(2, 6, dict(reversed(list(f.terms.items()))))
        assert json.dumps(series_to_json(g)) == blob1

    def test_malformed(self):
        with pytest.raises(ValueError):
            series_from_json({"dim": 2, "terms": []})
        with pytest.raises(ValueError):
            series_from_json({"dim": 2, "trunc": 4, "terms": [{"exp": [1], "coeff": "?"}]})

    def test_no_information_trunc_round_trips(self):
        f = S(2, -1, {})
        g = series_from_json(json.loads(json.dumps(series_to_json(f))))
        assert g.trunc == -1 and g.is_zero


class TestCalculus:
    def test_differentiate(self):
        f = S(2, 6, {(3, 1): 2, (0, 2): 1})
        assert f.differentiate(0).terms == {(2, 1): 6}
        assert f.differentiate(0).trunc == 5
        assert f.differentiate(1).terms == {(3, 0): 2, (0, 1): 2}

    def test_eval_exact(self):
        f = S(2, 6, {(2, 1): Fraction(1, 2), (0, 0): 3})
        assert f.eval_at((Fraction(2), Fraction(3))) == Fraction(9)

    def test_eval_complex(self):
        f = S(2, 6, {(1, 1): 1})
        v = f.eval_at((mpmath.mpc(0, 1), mpmath.mpc(2)))
        assert v == mpmath.mpc(0, 2)

    def test_pow(self):
        p = S(2, 12, {(0, 2): 1, (3, 0): -1})
        assert (p ** 3).agrees_with(p * p * p)
        assert (p ** 0) == TS.one(2, 12)
