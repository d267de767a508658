"""Tests for the special-function routines.

Frozen reference values were computed with independent oracles noted
inline (adaptive quadrature of the defining integral, an erfc power
series, exact polynomial expansions).  Property sweeps cross-check
against mpmath at high precision.
"""

import math
import random

import mpmath
import pytest

from leimkuhler import specfun


mpmath.mp.dps = 40


def mp_gamma(a, x):
    return float(mpmath.gammainc(a, x, mpmath.inf))


class TestUpperIncompleteGamma:
    def test_positive_shape_series_pin(self):
        # sqrt(pi)*erfc(1), erfc from an independent power series: 0.2788055852806621
        res = specfun.upper_incomplete_gamma(0.5, 1.0)
        assert res.value == pytest.approx(0.2788055852806621, rel=1e-12)
        assert res.method == "series"

    def test_negative_shape_pin(self):
        # adaptive quadrature of t**-1.5 * exp(-t) on (1, inf): 0.17814771178156
        res = specfun.upper_incomplete_gamma(-0.5, 1.0)
        assert res.value == pytest.approx(0.17814771178156, rel=1e-11)
        assert res.method == "continued_fraction"

    def test_shape_one_is_exp(self):
        res = specfun.upper_incomplete_gamma(1.0, 1.0)
        assert res.value == pytest.approx(math.exp(-1.0), rel=1e-13)

    def test_zero_shape_is_e1(self):
        # E1(1) = 0.21938393439552026 (series pin)
        res = specfun.upper_incomplete_gamma(0.0, 1.0)
        assert res.value == pytest.approx(0.21938393439552026, rel=1e-12)

    def test_small_x_recurrence_route(self):
        res = specfun.upper_incomplete_gamma(-2.5, 0.1)
        assert res.method == "recurrence"
        assert res.value == pytest.approx(mp_gamma(-2.5, 0.1), rel=1e-11)

    def test_recurrence_identity_sweep(self):
        # a*Gamma(a,x) + x**a*exp(-x) == Gamma(a+1,x)
        rng = random.Random(42)
        for _ in range(300):
            a = rng.uniform(-10.0, 10.0)
            if abs(a) < 1e-3:
                continue
            x = rng.uniform(0.1, 50.0)
            g = specfun.upper_incomplete_gamma(a, x).value
            g1 = specfun.upper_incomplete_gamma(a + 1.0, x).value
            lhs = a * g + x**a * math.exp(-x)
            assert abs(lhs - g1) <= 1e-10 * abs(g1)

    def test_against_mpmath_sweep(self):
        rng = random.Random(3)
        for _ in range(200):
            a = rng.uniform(-20.0, 20.0)
            if abs(a) < 1e-4:
                continue
            x = math.exp(rng.uniform(math.log(1e-6), math.log(200.0)))
            res = specfun.upper_incomplete_gamma(a, x)
            ref = mp_gamma(a, x)
            if ref == 0.0:
                continue
            assert abs(res.value - ref) <= 1e-11 * abs(ref)

    def test_integer_shapes(self):
        for a in (-7, -3, -1, 2, 6):
            for x in (0.05, 0.8, 12.0):
                res = specfun.upper_incomplete_gamma(float(a), x)
                assert res.value == pytest.approx(mp_gamma(a, x), rel=5e-12)

    def test_error_estimate_is_sane(self):
        res = specfun.upper_incomplete_gamma(-3.3, 2.0)
        assert res.abs_error_estimate < 1e-10 * abs(res.value) + 1e-300
        assert abs(res.value - mp_gamma(-3.3, 2.0)) <= 10 * res.abs_error_estimate + 1e-16 * abs(res.value)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            specfun.upper_incomplete_gamma(1.0, 0.0)
        with pytest.raises(ValueError):
            specfun.upper_incomplete_gamma(1.0, -2.0)
        with pytest.raises(ValueError):
            specfun.upper_incomplete_gamma(math.nan, 1.0)

    def test_overflow_is_reported(self):
        with pytest.raises(OverflowError):
            specfun.upper_incomplete_gamma(-200.0, 1e-8)


class TestRegularizedIncompleteBeta:
    def test_exact_polynomial_pin(self):
        # I_x(2,3) = x^2 (6 - 8x + 3x^2), exact at x = 1/4: 0.26171875
        res = specfun.regularized_incomplete_beta(2.0, 3.0, 0.25)
        assert res.value == pytest.approx(0.26171875, abs=1e-14)
        assert res.method == "continued_fraction"

    def test_uniform_case(self):
        for x in (0.0, 0.125, 0.5, 0.9, 1.0):
            assert specfun.regularized_incomplete_beta(1.0, 1.0, x).value == pytest.approx(x, abs=1e-14)

    def test_symmetric_midpoint(self):
        assert specfun.regularized_incomplete_beta(2.0, 2.0, 0.5).value == pytest.approx(0.5, abs=1e-14)

    def test_symmetry_identity_sweep(self):
        # I_x(a,b) + I_{1-x}(b,a) == 1
        rng = random.Random(11)
        for _ in range(300):
            a = rng.uniform(0.1, 30.0)
            b = rng.uniform(0.1, 30.0)
            x = rng.random()
            s = (
                specfun.regularized_incomplete_beta(a, b, x).value
                + specfun.regularized_incomplete_beta(b, a, 1.0 - x).value
            )
            assert abs(s - 1.0) <= 1e-12

    def test_against_mpmath(self):
        rng = random.Random(5)
        for _ in range(100):
            a = rng.uniform(0.2, 20.0)
            b = rng.uniform(0.2, 20.0)
            x = rng.random()
            res = specfun.regularized_incomplete_beta(a, b, x)
            ref = float(mpmath.betainc(a, b, 0, x, regularized=True))
            assert abs(res.value - ref) <= 1e-12

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            specfun.regularized_incomplete_beta(-1.0, 2.0, 0.5)
        with pytest.raises(ValueError):
            specfun.regularized_incomplete_beta(1.0, 2.0, 1.5)


class TestKummer1F1:
    def test_exponential_pin(self):
        # 1F1(1;2;z) = (e^z - 1)/z; at z=1 that is e - 1
        res = specfun.kummer_1f1(1.0, 2.0, 1.0)
        assert res.value == pytest.approx(math.e - 1.0, rel=1e-13)
        assert res.method == "series"

    def test_a_equals_b_is_exp(self):
        for z in (-30.0, -2.5, 0.7, 40.0):
            assert specfun.kummer_1f1(3.3, 3.3, z).value == pytest.approx(math.exp(z), rel=1e-12)

    def test_unit_at_zero(self):
        res = specfun.kummer_1f1(4.2, 1.7, 0.0)
        assert res.value == 1.0

    def test_negative_argument_uses_transform(self):
        res = specfun.kummer_1f1(2.5, 3.5, -4.0)
        assert res.method == "transform"
        # mpmath pin
        assert res.value == pytest.approx(0.08762891080996535, rel=1e-12)

    def test_transform_self_consistency(self):
        # 1F1(a;b;z) == e^z * 1F1(b-a;b;-z)
        rng = random.Random(9)
        for _ in range(200):
            a = rng.uniform(0.5, 20.0)
            b = rng.uniform(0.5, 20.0)
            z = rng.uniform(-50.0, 50.0)
            lhs = specfun.kummer_1f1(a, b, z).value
            rhs = math.exp(z) * specfun.kummer_1f1(b - a, b, -z).value
            assert abs(lhs - rhs) <= 1e-9 * abs(lhs)

    def test_against_mpmath_sweep(self):
        # value must sit within a small multiple of its own error estimate
        rng = random.Random(13)
        for _ in range(150):
            a = rng.uniform(0.5, 30.0)
            b = rng.uniform(0.5, 30.0)
            z = rng.uniform(-80.0, 80.0)
            res = specfun.kummer_1f1(a, b, z)
            ref = float(mpmath.hyp1f1(a, b, z))
            assert abs(res.value - ref) <= max(10 * res.abs_error_estimate, 1e-10 * abs(ref))

    def test_strong_domain_accuracy(self):
        # direct positive series (z >= 0) and positive transformed series
        # (z < 0 with b >= a) carry full relative accuracy
        rng = random.Random(17)
        for _ in range(150):
            b = rng.uniform(0.5, 30.0)
            if rng.random() < 0.5:
                a, z = rng.uniform(0.5, 30.0), rng.uniform(0.0, 80.0)
            else:
                a, z = rng.uniform(0.1, 1.0) * b, rng.uniform(-80.0, 0.0)
            res = specfun.kummer_1f1(a, b, z)
            ref = float(mpmath.hyp1f1(a, b, z))
            assert abs(res.value - ref) <= 1e-10 * abs(ref)

    def test_deep_negative_argument(self):
        # the regime that appears in fitted hypergeometric-mixture curves
        res = specfun.kummer_1f1(14.0, 25.1, -34.7)
        ref = float(mpmath.hyp1f1(14.0, 25.1, -34.7))
        assert res.value == pytest.approx(ref, rel=1e-10)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            specfun.kummer_1f1(1.0, -2.0, 1.0)
        with pytest.raises(ValueError):
            specfun.kummer_1f1(1.0, 2.0, math.inf)


class TestLogGamma:
    def test_half_integer(self):
        assert specfun.log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-14)

    def test_factorial(self):
        assert specfun.log_gamma(6.0) == pytest.approx(math.log(120.0), rel=1e-14)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            specfun.log_gamma(0.0)
        with pytest.raises(ValueError):
            specfun.log_gamma(-1.5)
