"""Poisson terms, exponential and Erlang densities, Erlang CDF."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from backlog_lab.distributions import (
    UNDERFLOW_FLOOR,
    ModelParams,
    erlang_cdf,
    erlang_density,
    exp_density,
    poisson_term,
)
from backlog_lab.errors import DomainError
from backlog_lab.quadrature import adaptive_simpson


class TestModelParams:
    def test_accepts_positive_rate_and_integer_stock(self):
        p = ModelParams(2.5, 3)
        assert p.lam == 2.5
        assert p.production == 3

    def test_coerces_rate_to_float(self):
        assert isinstance(ModelParams(2, 0).lam, float)

    @pytest.mark.parametrize("lam", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_bad_rate(self, lam):
        with pytest.raises(DomainError):
            ModelParams(lam, 1)

    @pytest.mark.parametrize("production", [-1, 0.5, "3"])
    def test_rejects_bad_stock(self, production):
        with pytest.raises(DomainError):
            ModelParams(1.0, production)

    def test_frozen(self):
        p = ModelParams(1.0, 1)
        with pytest.raises(Exception):
            p.lam = 2.0


class TestPoissonTerm:
    """Regularized terms e^{-x} x^n / n!."""

    def test_empty_process_certainty(self):
        assert poisson_term(0.0, 0) == 1.0

    def test_zero_mean_higher_terms_vanish(self):
        assert poisson_term(0.0, 3) == 0.0

    def test_first_term_is_plain_exponential(self):
        assert poisson_term(1.0, 0) == pytest.approx(math.exp(-1.0), rel=1e-15)

    def test_known_value(self):
        # e^{-2} 2^3 / 3!, cross-checked through the log-gamma route.
        assert poisson_term(2.0, 3) == pytest.approx(0.18044704431548358, rel=1e-14)

    @pytest.mark.parametrize("args", [(-1.0, 0), (1.0, -1), (math.nan, 0)])
    def test_rejects_bad_arguments(self, args):
        with pytest.raises(DomainError):
            poisson_term(*args)

    def test_no_overflow_at_extreme_arguments(self):
        # x up to 1e4 and n up to 1e5 must stay finite and inside [0, 1].
        for x, n in [(1e4, 10_000), (1e4, 100_000), (5e3, 1), (700.0, 0)]:
            v = poisson_term(x, n)
            assert math.isfinite(v)
            assert 0.0 <= v <= 1.0

    def test_underflow_floor_returns_exact_zero(self):
        # e^{-800} is far below the representable floor used here.
        assert poisson_term(800.0, 0) == 0.0

    def test_floor_constant_is_subnormal_cutoff(self):
        assert UNDERFLOW_FLOOR == 1e-320

    @given(
        x=st.floats(min_value=1e-3, max_value=1e3),
        n=st.integers(min_value=1, max_value=300),
    )
    @settings(max_examples=300)
    def test_one_step_recurrence(self, x, n):
        """p_n = p_{n-1} x / n wherever both terms carry real mass."""
        prev = poisson_term(x, n - 1)
        cur = poisson_term(x, n)
        if prev > 1e-300 and cur > 1e-300:
            assert cur == pytest.approx(prev * x / n, rel=1e-13)

    @given(x=st.floats(min_value=0.0, max_value=2e3))
    @settings(max_examples=60, deadline=None)
    def test_partial_sums_approach_one(self, x):
        n_top = int(x + 20.0 * math.sqrt(x) + 20.0)
        total = math.fsum(poisson_term(x, n) for n in range(n_top + 1))
        assert total > 1.0 - 1e-10
        # Above the log-space switch each term carries its own ~1e-15
        # relative error, so a thousand-term sum may overshoot 1 slightly.
        assert total <= 1.0 + 1e-11

    def test_mass_window_at_large_mean(self):
        x = 1e4
        lo = int(x - 20 * math.sqrt(x))
        hi = int(x + 20 * math.sqrt(x))
        total = math.fsum(poisson_term(x, n) for n in range(lo, hi + 1))
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_anchor_switch_is_seamless(self):
        # The recurrence route just below the switch and the log-space route
        # just above it must agree with the direct log-space formula.
        for x in (699.5, 700.0, 700.5):
            n = 700
            direct = poisson_term(x, n)
            ref = math.exp(n * math.log(x) - x - math.lgamma(n + 1))
            assert direct == pytest.approx(ref, rel=1e-11)

    def test_log_gamma_against_exact_factorials(self):
        """The accuracy budget of the log-space route rests on lgamma."""
        for n in range(1, 21):
            exact = math.log(math.factorial(n))
            assert math.lgamma(n + 1) == pytest.approx(exact, rel=1e-13)


class TestExpDensity:
    def test_density_at_origin_equals_rate(self):
        assert exp_density(1.0, 0.0) == 1.0
        assert exp_density(2.0, 0.0) == 2.0

    def test_unit_rate_unit_time(self):
        assert exp_density(1.0, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-15)

    def test_rejects_non_positive_rate(self):
        with pytest.raises(DomainError):
            exp_density(0.0, 1.0)

    def test_rejects_negative_time(self):
        with pytest.raises(DomainError):
            exp_density(1.0, -0.1)


class TestErlangDensity:
    @pytest.mark.parametrize("lam,t", [(0.5, 0.0), (1.0, 0.7), (3.0, 2.0)])
    def test_order_one_reduces_to_exponential(self, lam, t):
        assert erlang_density(lam, 1, t) == pytest.approx(exp_density(lam, t), rel=1e-15)

    def test_second_order_unit_point(self):
        assert erlang_density(1.0, 2, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-14)

    def test_known_value(self):
        # 2^3 (0.5)^2 e^{-1} / 2! collapses to e^{-1} as well.
        assert erlang_density(2.0, 3, 0.5) == pytest.approx(0.36787944117144233, rel=1e-14)

    def test_rejects_order_zero(self):
        with pytest.raises(DomainError):
            erlang_density(1.0, 0, 1.0)

    def test_zero_time(self):
        assert erlang_density(1.0, 1, 0.0) == 1.0
        assert erlang_density(1.0, 2, 0.0) == 0.0

    def test_overflow_safe_at_large_order(self):
        v = erlang_density(1000.0, 100_000, 100.0)
        assert math.isfinite(v)
        assert v >= 0.0


class TestErlangCdf:
    def test_zero_time_is_zero(self):
        for lam, n in [(0.5, 1), (1.0, 3), (7.0, 40)]:
            assert erlang_cdf(lam, n, 0.0) == 0.0

    @pytest.mark.parametrize("t", [0.1, 0.5, 1.0, 3.0])
    def test_order_one_is_exponential_cdf(self, t):
        assert erlang_cdf(1.0, 1, t) == pytest.approx(-math.expm1(-t), rel=1e-14)

    def test_known_value(self):
        # 1 - 2 e^{-1}, confirmed by integrating the density over [0, 1].
        assert erlang_cdf(1.0, 2, 1.0) == pytest.approx(0.26424111765711533, rel=1e-14)

    @given(
        lam=st.floats(min_value=0.01, max_value=100.0),
        n=st.integers(min_value=1, max_value=200),
        t=st.floats(min_value=0.0, max_value=50.0),
    )
    @settings(max_examples=200)
    def test_stays_in_unit_interval(self, lam, n, t):
        v = erlang_cdf(lam, n, t)
        assert 0.0 <= v <= 1.0

    @given(
        lam=st.floats(min_value=0.1, max_value=20.0),
        n=st.integers(min_value=1, max_value=50),
    )
    @settings(max_examples=100)
    def test_monotone_in_time(self, lam, n):
        ts = [0.0, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0]
        vals = [erlang_cdf(lam, n, t) for t in ts]
        # The 1 - sum formulation leaves one-ulp noise in the deep lower tail.
        assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))

    @given(
        lam=st.floats(min_value=0.1, max_value=20.0),
        t=st.floats(min_value=0.0, max_value=20.0),
    )
    @settings(max_examples=100)
    def test_non_increasing_in_order(self, lam, t):
        # Waiting for more arrivals can only push the CDF down.
        vals = [erlang_cdf(lam, n, t) for n in range(1, 12)]
        assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))

    def test_matches_quadrature_of_density(self):
        """Spot check of the CDF against integrating the density; the
        randomized hundred-point version lives in the acceptance suite."""
        for lam, n, t in [(1.0, 2, 1.0), (0.5, 4, 6.0), (3.0, 10, 5.0), (10.0, 30, 4.0)]:
            mode = n / lam
            sd = math.sqrt(n) / lam
            knots = sorted(
                {min(t, max(0.0, mode + c * sd)) for c in (-3, -1, 0, 1, 3)}
                | {t * k / 8 for k in range(1, 8)}
            )
            knots = tuple(k for k in knots if 0.0 < k < t)
            val, bound, _ = adaptive_simpson(
                lambda u: erlang_density(lam, n, u), 0.0, t, 1e-10, knots=knots
            )
            assert abs(val - erlang_cdf(lam, n, t)) < 1e-8
