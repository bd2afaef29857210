"""Foundation module: special functions, quadrature, bisection."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hw_staffing.errors import BracketError, DomainError, NumericalError
from hw_staffing.numerics import (
    DEFAULT_QUADRATURE,
    BracketedRoot,
    QuadratureConfig,
    bisect_monotone,
    integrate_semi_infinite,
    log_gamma,
    normal_cdf,
    normal_pdf,
    upper_gamma_regularized,
)

import oracles


class TestNormalPdf:
    def test_at_zero(self):
        assert normal_pdf(0.0) == pytest.approx(oracles.PDF_AT_0, rel=1e-15)

    def test_at_one(self):
        assert normal_pdf(1.0) == pytest.approx(oracles.PDF_AT_1, rel=1e-15)

    @given(st.floats(min_value=-30, max_value=30, allow_nan=False))
    def test_symmetry(self, x):
        assert normal_pdf(x) == normal_pdf(-x)

    @given(st.floats(min_value=-30, max_value=30, allow_nan=False))
    def test_positive(self, x):
        assert normal_pdf(x) > 0.0

    @pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(DomainError):
            normal_pdf(bad)


class TestNormalCdf:
    def test_at_zero(self):
        assert normal_cdf(0.0) == 0.5

    def test_high_precision_table(self):
        for x, expected in oracles.PHI_TABLE:
            assert normal_cdf(x) == pytest.approx(expected, rel=1e-15), x

    @given(st.floats(min_value=-8, max_value=8, allow_nan=False))
    def test_reflection(self, x):
        assert normal_cdf(x) + normal_cdf(-x) == pytest.approx(1.0, abs=1e-15)

    def test_nondecreasing_on_grid(self):
        xs = [-8 + 0.05 * i for i in range(321)]
        values = [normal_cdf(x) for x in xs]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_pdf_is_cdf_derivative(self):
        step = 1e-4
        for i in range(-50, 51):
            x = i / 10.0
            diff = (normal_cdf(x + step) - normal_cdf(x - step)) / (2 * step)
            assert diff == pytest.approx(normal_pdf(x), abs=1e-6)

    @pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(DomainError):
            normal_cdf(bad)


class TestLogGamma:
    def test_at_one_and_two(self):
        assert log_gamma(1.0) == 0.0
        assert log_gamma(2.0) == 0.0

    def test_matches_ten_factorial(self):
        assert log_gamma(11.0) == pytest.approx(math.log(3628800), rel=1e-15)

    def test_factorials_up_to_18(self):
        for n in range(1, 19):
            assert math.exp(log_gamma(n + 1.0)) == pytest.approx(
                math.factorial(n), rel=1e-13
            )

    def test_log_factorials_to_large_n(self):
        # math.log of an exact big int is the independent reference
        for n in (25, 60, 170, 300):
            assert log_gamma(n + 1.0) == pytest.approx(
                math.log(math.factorial(n)), rel=1e-13
            )

    def test_half_integer_and_large(self):
        assert log_gamma(0.5) == pytest.approx(oracles.LOG_GAMMA_HALF, rel=1e-13)
        assert log_gamma(1e6) == pytest.approx(oracles.LOG_GAMMA_1E6, rel=1e-13)

    @given(st.floats(min_value=0.5, max_value=1e6))
    def test_recursion(self, x):
        assert log_gamma(x + 1.0) == pytest.approx(
            math.log(x) + log_gamma(x), rel=1e-13, abs=1e-13
        )

    @pytest.mark.parametrize("bad", [0.0, -1.0, -0.5])
    def test_rejects_nonpositive(self, bad):
        with pytest.raises(DomainError):
            log_gamma(bad)


class TestUpperGammaRegularized:
    def test_exponential_special_case(self):
        for x in (0.1, 1.0, 2.5, 7.0):
            assert upper_gamma_regularized(1.0, x) == pytest.approx(
                math.exp(-x), rel=1e-14
            )

    def test_full_mass_at_zero(self):
        for s in (0.3, 1.0, 4.5, 200.0):
            assert upper_gamma_regularized(s, 0.0) == 1.0

    def test_frozen_spot_values(self):
        assert upper_gamma_regularized(5.0, 5.0) == pytest.approx(oracles.Q_5_5, rel=1e-12)
        assert upper_gamma_regularized(0.5, 0.3) == pytest.approx(oracles.Q_HALF_03, rel=1e-12)
        assert upper_gamma_regularized(3.7, 9.2) == pytest.approx(oracles.Q_37_92, rel=1e-12)
        assert upper_gamma_regularized(250.0, 240.0) == pytest.approx(
            oracles.Q_250_240, rel=1e-12
        )

    def test_against_quadrature_definition(self):
        # Q(s, x) = integral_x^inf t**(s-1) e**-t dt / Gamma(s)
        for s in (0.7, 2.0, 5.0, 11.5, 40.0):
            for x in (0.2, 1.0, 5.0, 12.0, 60.0):
                lg = log_gamma(s)

                def log_integrand(u, s=s, x=x, lg=lg):
                    t = x + u
                    if t <= 0.0:
                        return -math.inf
                    return (s - 1.0) * math.log(t) - t - lg

                reference = integrate_semi_infinite(log_integrand)
                assert upper_gamma_regularized(s, x) == pytest.approx(
                    reference, rel=1e-12, abs=1e-300
                ), (s, x)

    def test_monotone_in_x(self):
        for s in (0.5, 3.0, 50.0):
            values = [upper_gamma_regularized(s, 0.25 * k) for k in range(60)]
            assert all(b <= a for a, b in zip(values, values[1:]))

    def test_monotone_in_s(self):
        for x in (0.5, 4.0, 20.0):
            values = [upper_gamma_regularized(0.5 + 0.5 * k, x) for k in range(60)]
            assert all(b >= a for a, b in zip(values, values[1:]))

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            upper_gamma_regularized(0.0, 1.0)
        with pytest.raises(DomainError):
            upper_gamma_regularized(2.0, -0.5)


class TestIntegrateSemiInfinite:
    def test_unit_exponential(self):
        assert integrate_semi_infinite(lambda t: -t) == pytest.approx(1.0, rel=1e-12)

    def test_gamma_two(self):
        value = integrate_semi_infinite(lambda t: math.log(t) - t if t > 0 else -math.inf)
        assert value == pytest.approx(1.0, rel=1e-12)

    def test_gamma_family(self):
        for k in range(1, 11):
            def log_integrand(t, k=k):
                if t <= 0.0:
                    return -math.inf if k > 1 else 0.0
                return (k - 1) * math.log(t) - t

            value = integrate_semi_infinite(log_integrand)
            assert value == pytest.approx(
                math.factorial(k - 1), rel=DEFAULT_QUADRATURE.rel_tol * 10
            ), k

    def test_delay_integrand_spot_value(self):
        # a*t*(1+t)**(s-1)*e**(-a*t) at s=2, a=1 integrates to 3 = 1/C(2,1)
        def log_integrand(t):
            if t <= 0.0:
                return -math.inf
            return math.log(t) + math.log1p(t) - t

        assert integrate_semi_infinite(log_integrand) == pytest.approx(3.0, rel=1e-12)

    def test_extreme_positive_shift(self):
        value = integrate_semi_infinite(lambda t: 600.0 + math.log(t) - t if t > 0 else -math.inf)
        assert value == pytest.approx(math.exp(600.0), rel=1e-11)

    def test_extreme_negative_shift(self):
        value = integrate_semi_infinite(lambda t: -600.0 - t)
        assert value == pytest.approx(math.exp(-600.0), rel=1e-11)

    def test_refinement_cap_raises_with_estimate(self):
        cfg = QuadratureConfig(rel_tol=1e-15, abs_tol=1e-300, max_refinements=1)

        def kinked(t):  # corner at t = 3 defeats one refinement round
            return -abs(t - 3.0) * 7.0

        with pytest.raises(NumericalError) as excinfo:
            integrate_semi_infinite(kinked, cfg)
        err = excinfo.value
        assert err.estimate is not None
        assert err.error_bound is not None and err.error_bound > 0.0

    def test_identically_zero_integrand(self):
        assert integrate_semi_infinite(lambda t: -math.inf) == 0.0


class TestQuadratureConfig:
    def test_defaults_valid(self):
        cfg = QuadratureConfig()
        assert cfg.rel_tol == 1e-12
        assert cfg.max_refinements == 60

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"rel_tol": 0.0},
            {"rel_tol": -1e-3},
            {"abs_tol": 0.0},
            {"max_refinements": 0},
            {"truncation_log_cutoff": 29.9},
        ],
    )
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(DomainError):
            QuadratureConfig(**kwargs)


class TestBisectMonotone:
    def test_identity(self):
        root = bisect_monotone(lambda x: x, 0.0, 1.0, 0.5, 1e-12)
        assert root.value == pytest.approx(0.5, abs=1e-12)
        assert root.lo <= root.value <= root.hi

    def test_square(self):
        root = bisect_monotone(lambda x: x * x, 0.0, 10.0, 4.0, 1e-10)
        assert root.value == pytest.approx(2.0, abs=1e-9)

    def test_normal_cdf_inverse(self):
        root = bisect_monotone(normal_cdf, 0.0, 8.0, oracles.CDF_AT_1, 1e-11)
        assert root.value == pytest.approx(1.0, abs=1e-10)

    def test_decreasing_function(self):
        root = bisect_monotone(lambda x: -x, 0.0, 4.0, -1.5, 1e-12)
        assert root.value == pytest.approx(1.5, abs=1e-11)

    def test_bracket_width_bound(self):
        root = bisect_monotone(lambda x: x ** 3, 0.0, 9.0, 20.0, 1e-6)
        assert root.hi - root.lo <= 1e-6

    def test_missing_bracket_names_endpoints(self):
        with pytest.raises(BracketError) as excinfo:
            bisect_monotone(lambda x: x, 0.0, 1.0, 5.0, 1e-9)
        message = str(excinfo.value)
        assert "0.0" in message and "1.0" in message

    def test_result_type(self):
        root = bisect_monotone(lambda x: x, 0.0, 1.0, 0.25, 1e-9)
        assert isinstance(root, BracketedRoot)
        assert abs(root.residual) <= 1e-9
