import math
from fractions import Fraction
from math import factorial

import mpmath
import pytest
from mpmath import mp

from germsum.borel import (BorelSeries, OneVarSeries, borel_transform,
                           build_approximant, continue_on_ray, laplace_sum,
                           p_k_sum, singular_directions)
from germsum.errors import ContinuationError, SectorError, SingularRayError
from germsum.harness import euler_borel_series, gen_example
from germsum.series import MonomialOrder, TruncatedSeries
from germsum.weierstrass import Germ, PExpansion, p_expand

TS = TruncatedSeries


def euler_series(n=40):
    return OneVarSeries([(-1) ** m * factorial(m) for m in range(n)])


def euler_oracle(t, prec=250):
    """Independent high-precision quadrature of the Borel integral."""
    with mp.workprec(prec):
        tt = mpmath.mpf(t)
        return mpmath.quad(lambda u: mpmath.exp(-u) / (1 + tt * u),
                           [0, mpmath.inf])


class TestBorelTransform:
    def test_alternating_factorials(self):
        b = borel_transform(euler_series(12), 1)
        for n, c in enumerate(b.coeffs):
            assert c == (-1) ** n

    def test_log_series(self):
        b = borel_transform(euler_borel_series(12), 1)
        assert b.coeffs[0] == 0
        with mp.workprec(128):
            for m in range(1, 12):
                assert abs(b.coeffs[m] - mpmath.mpf(1) / m) < 1e-30

    def test_exponential(self):
        b = borel_transform(OneVarSeries([1] * 10), 1)
        with mp.workprec(128):
            for n, c in enumerate(b.coeffs):
                assert abs(c - 1 / mpmath.gamma(n + 1)) < 1e-30

    def test_k_validation(self):
        with pytest.raises(ValueError):
            borel_transform(OneVarSeries([1]), 0)


class TestContinuation:
    def test_euler_geometric_exact(self):
        b = borel_transform(euler_series(), 1)
        rc = continue_on_ray(b, 0.0, [1.0, 3.0])
        assert abs(rc.values[1] - mpmath.mpf(1) / 4) < 1e-8
        assert rc.errors[1] < 1e-8

    def test_log_on_opposite_ray(self):
        b = borel_transform(euler_borel_series(48), 1)
        rc = continue_on_ray(b, math.pi, [1.0, 2.0])
        # the direction is the double-precision pi, which off-sets the ray
        # from the real axis by ~1e-16; tolerance reflects that
        with mp.workprec(128):
            assert abs(rc.values[1] - (-mpmath.log(3))) < 1e-15

    def test_singular_ray(self):
        b = borel_transform(euler_borel_series(48), 1)
        with pytest.raises(SingularRayError) as err:
            continue_on_ray(b, 0.0, [0.5, 2.0])
        assert abs(err.value.pole - 1) < 0.05

    def test_radii_validation(self):
        b = borel_transform(euler_series(), 1)
        with pytest.raises(ValueError):
            continue_on_ray(b, 0.0, [2.0, 1.0])
        with pytest.raises(ValueError):
            continue_on_ray(BorelSeries(1.0, (mpmath.mpc(1),) * 4), 0.0, [1.0])

    def test_taylor_method_agrees(self):
        b = borel_transform(euler_series(48), 1)
        rc_p = continue_on_ray(b, math.pi / 2, [0.5, 1.0])
        rc_t = continue_on_ray(b, math.pi / 2, [0.5, 1.0], method="taylor")
        assert abs(rc_p.values[0] - rc_t.values[0]) < 1e-12
        assert rc_t.method == "taylor"

    def test_degenerate_pade_reduces(self):
        # exactly geometric coefficients make the full Toeplitz system
        # singular; the builder must fall back to a lower degree
        appr = build_approximant([mpmath.mpc((-1) ** n) for n in range(20)])
        assert appr.order[1] < 9
        assert abs(appr(mpmath.mpc(2)) - Fraction(1, 3)) < 1e-30


class TestLaplace:
    def test_constant_is_one(self):
        rc = continue_on_ray(borel_transform(OneVarSeries([1] + [0] * 9), 1),
                             0.3, [1.0, 2.0])
        for t in (0.2, mpmath.mpc(0.1, 0.02)):
            res = laplace_sum(rc, 1, t)
            assert abs(res.value - 1) < 1e-15

    def test_linear_is_t(self):
        rc = continue_on_ray(borel_transform(OneVarSeries([0, 1] + [0] * 8), 1),
                             0.0, [1.0, 2.0])
        res = laplace_sum(rc, 1, 0.25)
        assert abs(res.value - mpmath.mpf("0.25")) < 1e-15

    def test_euler_against_oracle(self):
        b = borel_transform(euler_series(), 1)
        rc = continue_on_ray(b, 0.0, [1.0, 2.0])
        res = laplace_sum(rc, 1, mpmath.mpf("0.1"))
        assert abs(res.value - euler_oracle("0.1")) < 1e-9
        assert res.quadrature_error < 1e-12
        assert res.continuation_error < 1e-12

    def test_continuation_tolerance_gate(self):
        # few coefficients of a branchy transform + a far evaluation point:
        # the two approximant orders disagree and the gate refuses the value
        rc = continue_on_ray(borel_transform(euler_borel_series(10), 1),
                             math.pi / 2, [1.0, 2.0])
        big_t = mpmath.mpc(0, 4)
        res = laplace_sum(rc, 1, big_t)
        assert res.continuation_error > 1e-3
        with pytest.raises(ContinuationError):
            laplace_sum(rc, 1, big_t, max_continuation_error=1e-6)

    def test_incompatible_direction(self):
        rc = continue_on_ray(borel_transform(euler_series(), 1), 0.0, [1.0])
        with pytest.raises(SectorError):
            laplace_sum(rc, 1, mpmath.mpc(-0.1))

    def test_k2_monomial_identity(self):
        # order-2 kernel reproduces a_n t^n termwise: test on 1 + t^2/2
        a = OneVarSeries([1, 0, Fraction(1, 2)] + [0] * 7)
        b = borel_transform(a, 2)
        rc = continue_on_ray(b, 0.1, [1.0, 2.0])
        with mp.workprec(160):
            t = mpmath.mpf("0.3") * mpmath.expjpi(mpmath.mpf("0.1") / mpmath.pi)
            res = laplace_sum(rc, 2, t)
            assert abs(res.value - (1 + t * t / 2)) < 1e-12

    def test_convergent_series_reproduced(self):
        # sum t^n/2^n = 1/(1 - t/2), convergent: the sum equals the value
        a = OneVarSeries([Fraction(1, 2 ** n) for n in range(32)])
        rc = continue_on_ray(borel_transform(a, 1), 0.0, [1.0, 2.0])
        with mp.workprec(160):
            res = laplace_sum(rc, 1, mpmath.mpf("0.3"))
            diff = abs(res.value - 1 / (1 - mpmath.mpf("0.3") / 2))
            assert diff < 1e-9
            assert diff <= 50 * res.total_error + 1e-12

    def test_derivative_flag(self):
        # compare differentiation under the integral against a central
        # difference of the regular sum (all arithmetic at high precision)
        b = borel_transform(euler_series(48), 1)
        rc = continue_on_ray(b, 0.0, [1.0, 2.0])
        with mp.workprec(200):
            t = mpmath.mpf("0.2")
            h = mpmath.mpf("1e-12")
            fp = laplace_sum(rc, 1, t, derivative=True, prec=200)
            f1 = laplace_sum(rc, 1, t + h, prec=200)
            f2 = laplace_sum(rc, 1, t - h, prec=200)
            assert abs(fp.value - (f1.value - f2.value) / (2 * h)) < 1e-6


class TestPKSum:
    def test_constant_coefficient_only(self):
        germ = Germ(TS(2, 10, {(1, 1): 1}), MonomialOrder((1, 1)))
        g0 = TS(2, 10, {(0, 0): 3, (1, 0): 2})
        coeffs = [g0] + [TS.zero(2, 10) for _ in range(9)]
        exp = PExpansion(germ, coeffs, 10)
        x0 = (Fraction(1, 10), Fraction(1, 5))
        res = p_k_sum(exp, x0, 1, 0.0)
        assert abs(res.value - (3 + 2 * mpmath.mpf("0.1"))) < 1e-12

    def test_point_outside_sector(self):
        germ = Germ(TS(2, 10, {(1, 1): 1}), MonomialOrder((1, 1)))
        exp = PExpansion(germ, [TS.one(2, 10)] * 10, 10)
        with pytest.raises(SectorError):
            p_k_sum(exp, (Fraction(-1, 10), Fraction(1, 10)), 1, 0.0)

    def test_ode_expansion_at_negative_germ_value(self):
        # y = sum m! P^(m+1) with P = x^2 - eps^2, evaluated where P < 0:
        # summing along theta = pi succeeds and matches the one-variable sum
        ex = gen_example("ode-euler", 40)
        exp = p_expand(ex.f, Germ(ex.p, ex.order), 20)
        x0 = (Fraction(1, 10), Fraction(1, 2))
        t = ex.p.eval_at(x0)
        assert t == Fraction(1, 100) - Fraction(1, 4)
        res = p_k_sum(exp, x0, 1, math.pi)
        assert res.total_error < 1e-10
        from germsum.borel import continue_on_ray, laplace_sum
        b = borel_transform(euler_borel_series(20), 1)
        rc = continue_on_ray(b, math.pi, [0.5, 1.0])
        direct = laplace_sum(rc, 1, mpmath.mpf(t.numerator) / t.denominator)
        assert abs(res.value - direct.value) < 1e-10

    def test_factorial_expansion_pole_direction(self):
        # coefficients n! x2^(2n): Borel pole at 1/x2^2, singular direction
        # -2*arg(x2); summing along it fails, rotating by pi/4 succeeds
        ex = gen_example("remark79", 120)
        exp = p_expand(ex.f, Germ(ex.p, ex.order), 30)
        theta_bad = 0.0     # x2 real: pole on the positive axis
        x0 = (Fraction(1, 5), Fraction(1, 4))
        with pytest.raises(SingularRayError):
            p_k_sum(exp, x0, 1, theta_bad)
        res = p_k_sum(exp, x0, 1, theta_bad + math.pi / 4)
        assert res.continuation_error < 1e-10
        # value should be close to the Borel sum of the specialized series:
        # cross-check first coefficients dominate at this small t
        t = mpmath.mpf(1) / 20
        partial = sum(factorial(n) * mpmath.mpf(0.25) ** (2 * n) * t ** n
                      for n in range(4))
        assert abs(res.value - partial) < 0.01


class TestSingularDirections:
    def test_euler_pole_at_pi(self):
        report = singular_directions(borel_transform(euler_series(32), 1), 1)
        close = [d for d in report.directions if abs(d - math.pi) < 0.05]
        assert len(close) == 1
        assert all(c.hits >= 3 for c in report.clusters)

    def test_log_branch_at_zero(self):
        report = singular_directions(
            borel_transform(euler_borel_series(40), 1), 1)
        assert any(abs(d) < 0.05 for d in report.directions)

    def test_entire_function_empty(self):
        a = OneVarSeries([Fraction(1, factorial(n)) for n in range(32)])
        report = singular_directions(borel_transform(a, 1), 1)
        assert report.directions == ()

    def test_minimum_coefficients(self):
        with pytest.raises(ValueError):
            singular_directions(borel_transform(OneVarSeries([1] * 8), 1), 1)


class TestInvariants:
    def test_direction_consistency_same_side(self):
        # two rays on the same side of the singular direction agree within
        # the combined error estimates
        b = borel_transform(euler_series(48), 1)
        t = mpmath.mpf("0.15")
        r1 = laplace_sum(continue_on_ray(b, 0.3, [1.0, 2.0]), 1, t)
        r2 = laplace_sum(continue_on_ray(b, -0.25, [1.0, 2.0]), 1, t)
        tol = r1.total_error + r2.total_error + 1e-25
        assert abs(r1.value - r2.value) <= tol * 10

    def test_asymptotic_recovery(self):
        # |sum - partial sums| <= K A^N Gamma(N+1) |t|^N for the euler series
        b = borel_transform(euler_series(48), 1)
        rc = continue_on_ray(b, 0.0, [1.0, 2.0])
        t = mpmath.mpf("0.05")
        res = laplace_sum(rc, 1, t)
        a = euler_series(48).coeffs
        for N in range(2, 9):
            partial = sum(a[n] * t ** n for n in range(N))
            bound = 2 * mpmath.gamma(N + 1) * t ** N
            assert abs(res.value - partial) <= bound
