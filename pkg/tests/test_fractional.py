import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import erfc, gamma as sp_gamma

from windctl.errors import InvalidParameter, NumericRange
from windctl.fractional import (
    GlWindow,
    em_weights,
    gl_coefficients,
    mittag_leffler,
    oustaloup_design,
)


def gamma_ratio_coefficient(order, k):
    """Closed-form (-1)^k Gamma-ratio weight, the independent oracle."""
    return (-1.0) ** k * sp_gamma(order + 1) / (sp_gamma(k + 1) * sp_gamma(order - k + 1))


class TestGlCoefficients:
    def test_first_difference(self):
        np.testing.assert_allclose(gl_coefficients(1.0, 3), [1.0, -1.0, 0.0], atol=1e-15)

    def test_identity_operator(self):
        np.testing.assert_allclose(gl_coefficients(0.0, 3), [1.0, 0.0, 0.0], atol=1e-15)

    def test_half_order_recurrence(self):
        np.testing.assert_allclose(
            gl_coefficients(0.5, 4), [1.0, -0.5, -0.125, -0.0625], rtol=1e-14
        )

    @pytest.mark.parametrize("order", [0.25, 0.5, 0.9])
    def test_matches_gamma_ratio_closed_form(self, order):
        c = gl_coefficients(order, 21)
        for k in range(21):
            expected = gamma_ratio_coefficient(order, k)
            assert abs(c[k] - expected) <= 1e-10 * max(1.0, abs(expected))

    def test_rejects_non_finite_order(self):
        with pytest.raises(InvalidParameter):
            gl_coefficients(float("nan"), 4)
        with pytest.raises(InvalidParameter):
            gl_coefficients(float("inf"), 4)

    def test_rejects_zero_count(self):
        with pytest.raises(InvalidParameter):
            gl_coefficients(0.5, 0)


class TestGlWindow:
    def test_order_zero_is_identity(self):
        w = GlWindow(0.0, 0.1, 8)
        for x in [0.3, -1.2, 5.0, 0.0]:
            assert w.apply(x) == pytest.approx(x, abs=1e-15)

    def test_first_derivative_of_ramp(self):
        w = GlWindow(1.0, 1.0, 4)
        out = [w.apply(float(t)) for t in range(8)]
        # slope of the ramp once history is populated
        assert out[-1] == pytest.approx(1.0, abs=1e-12)

    def test_half_derivative_of_ramp_analytic(self):
        # Riemann-Liouville: D^0.5 t = 2 sqrt(t / pi)
        w = GlWindow(0.5, 1e-3, 1000)
        for k in range(1001):
            val = w.apply(k * 1e-3)
        assert val == pytest.approx(2.0 * math.sqrt(1.0 / math.pi), rel=0.02)

    def test_negative_order_integrates(self):
        # I^1 of a constant over [0, 1] with unit samples
        w = GlWindow(-1.0, 0.01, 200)
        for _ in range(101):
            val = w.apply(1.0)
        assert val == pytest.approx(1.01, rel=1e-9)  # includes the t=0 sample

    @given(
        alpha=st.floats(-3, 3, allow_nan=False),
        beta=st.floats(-3, 3, allow_nan=False),
        seed=st.integers(0, 2**31 - 1),
    )
    @settings(max_examples=30, deadline=None)
    def test_linearity(self, alpha, beta, seed):
        rng = np.random.default_rng(seed)
        x = rng.normal(size=40)
        y = rng.normal(size=40)
        wx, wy, wc = (GlWindow(0.6, 0.05, 16) for _ in range(3))
        for xi, yi in zip(x, y):
            vx = wx.apply(xi)
            vy = wy.apply(yi)
            vc = wc.apply(alpha * xi + beta * yi)
        assert vc == pytest.approx(alpha * vx + beta * vy, abs=1e-9 * (1 + abs(vc)))

    def test_composition_recovers_signal(self):
        # D^0.5 then D^-0.5 approximately restores a smooth signal
        dt = 1e-3
        n = 2000
        t = np.arange(n) * dt
        x = np.sin(2 * math.pi * t)
        fwd = GlWindow(0.5, dt, n)
        inv = GlWindow(-0.5, dt, n)
        rec = np.array([inv.apply(fwd.apply(xi)) for xi in x])
        rms = math.sqrt(float(np.mean((rec - x) ** 2)))
        ref = math.sqrt(float(np.mean(x**2)))
        assert rms <= 0.05 * ref

    def test_reset_clears_history(self):
        w = GlWindow(0.7, 0.1, 8)
        for x in [1.0, 2.0, 3.0]:
            w.apply(x)
        w.reset()
        assert w.apply(0.0) == 0.0

    def test_rejects_bad_construction(self):
        with pytest.raises(InvalidParameter):
            GlWindow(0.5, 0.0, 10)
        with pytest.raises(InvalidParameter):
            GlWindow(0.5, 0.1, 0)
        with pytest.raises(InvalidParameter):
            GlWindow(math.inf, 0.1, 10)

    def test_rejects_non_finite_sample(self):
        w = GlWindow(0.5, 0.1, 4)
        with pytest.raises(InvalidParameter):
            w.apply(math.nan)


class TestOustaloup:
    def test_count_and_band_placement(self):
        f = oustaloup_design(0.5, 0.01, 100.0, 2)
        assert len(f.zeros) == 5 and len(f.poles) == 5
        margin = 1.05
        assert np.all(f.zeros > 0.01 / margin) and np.all(f.zeros < 100.0 * margin)
        assert np.all(f.poles > 0.01 / margin) and np.all(f.poles < 100.0 * margin)
        assert np.all(f.poles > 0)

    def test_zeros_poles_interlace_and_increase(self):
        f = oustaloup_design(0.37, 0.01, 100.0, 3)
        corners = np.column_stack([f.zeros, f.poles]).ravel()
        assert np.all(np.diff(corners) > 0)

    def test_midband_slope(self):
        f = oustaloup_design(0.5, 0.01, 100.0, 2)
        w = np.logspace(-1, 1, 61)
        mag_db = 20 * np.log10(np.abs(f.response(w)))
        slope = np.polyfit(np.log10(w), mag_db, 1)[0]
        assert abs(slope - 20 * 0.5) <= 1.0

    def test_center_gain_matches_ideal(self):
        f = oustaloup_design(0.5, 0.01, 100.0, 2)
        wc = math.sqrt(0.01 * 100.0)
        ideal = abs((1j * wc) ** 0.5)
        assert abs(f.response(wc)) == pytest.approx(ideal, rel=0.10)

    @pytest.mark.parametrize("order", [0.25, 0.75])
    def test_slope_tracks_order(self, order):
        f = oustaloup_design(order, 1e-3, 1e3, 4)
        w = np.logspace(-1, 1, 61)
        mag_db = 20 * np.log10(np.abs(f.response(w)))
        slope = np.polyfit(np.log10(w), mag_db, 1)[0]
        assert abs(slope - 20 * order) <= 1.0

    def test_band_inversion_rejected(self):
        with pytest.raises(InvalidParameter):
            oustaloup_design(0.5, 100.0, 0.01, 2)

    def test_order_outside_unit_interval_rejected(self):
        with pytest.raises(InvalidParameter):
            oustaloup_design(1.5, 0.01, 100.0, 2)


class TestMittagLeffler:
    def test_integer_order_is_exponential(self):
        assert mittag_leffler(1.0, 1.0, 1.0) == pytest.approx(math.e, abs=1e-9)

    def test_value_at_zero(self):
        for g in [0.3, 0.5, 0.9, 1.0]:
            assert mittag_leffler(g, 1.0, 0.0) == pytest.approx(1.0, abs=1e-15)

    def test_half_order_erfc_identity(self):
        # E_{1/2}(t) = exp(t^2) erfc(-t); independent erfc evaluation
        expected = math.e * erfc(1.0)
        assert mittag_leffler(0.5, 1.0, -1.0) == pytest.approx(expected, abs=1e-6)

    def test_monotone_in_t(self):
        ts = np.linspace(0.0, 3.0, 31)
        vals = [mittag_leffler(0.6, 1.0, t) for t in ts]
        assert np.all(np.diff(vals) > 0)

    def test_divergence_guard(self):
        with pytest.raises(NumericRange):
            mittag_leffler(0.2, 1.0, 1e6)

    def test_parameter_validation(self):
        with pytest.raises(InvalidParameter):
            mittag_leffler(0.0, 1.0, 1.0)
        with pytest.raises(InvalidParameter):
            mittag_leffler(0.5, -1.0, 1.0)


class TestEmWeights:
    def test_full_memory_order(self):
        assert em_weights(1.0).as_tuple() == (1.0, 0.0, 0.0, 0.0)

    def test_zero_memory_order(self):
        assert em_weights(0.0).as_tuple() == (0.0, 0.0, 0.0, 0.0)

    def test_product_formula(self):
        w = em_weights(0.7)
        assert w.as_tuple() == pytest.approx((0.7, 0.105, 0.0455, 0.0261625), rel=1e-12)

    @given(g=st.floats(0.0, 1.0, allow_nan=False))
    @settings(max_examples=50, deadline=None)
    def test_weights_match_direct_products(self, g):
        w = em_weights(g)
        assert w.w1 == pytest.approx(g)
        assert w.w2 == pytest.approx(g * (1 - g) / 2)
        assert w.w3 == pytest.approx(g * (1 - g) * (2 - g) / 6)
        assert w.w4 == pytest.approx(g * (1 - g) * (2 - g) * (3 - g) / 24)

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidParameter):
            em_weights(1.2)
        with pytest.raises(InvalidParameter):
            em_weights(-0.1)
