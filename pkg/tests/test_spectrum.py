import time

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from degnagumo import ModelSpec, threshold_speed, stationary_alpha
from degnagumo.spectrum import (p_weight, weight_roots, fredholm_border,
                                consistent_splitting_bound, classify_and_threshold,
                                h_function, select_weight, asymptotic_matrix,
                                decaying_mode, absolute_spectrum_edge)

HALF = ModelSpec.shigesada_cubic(1.0, 0.5)
QUARTER = ModelSpec.shigesada_cubic(1.0, 0.25)


class TestBorders:
    @pytest.mark.parametrize("case", ["Nd", "Nn", "sN-decreasing"])
    def test_k0_unweighted(self, case):
        m = HALF if case != "sN-decreasing" else ModelSpec.shigesada_cubic(1.0, 0.625)
        c = 0.0 if case.startswith("sN") else 1.0
        for side in "-+":
            bc = fredholm_border(m, case, c, 0.0, 0.0, side, [0.0])
            u = {"Nd": (0.0, m.alpha), "Nn": (1.0, m.alpha),
                 "sN-decreasing": (1.0, 0.0)}[case][side == "+"]
            assert bc.lam[0] == m.f(u, 1)

    def test_nd_degenerate_side(self):
        bc = fredholm_border(HALF, "Nd", 1.0, 0.5, 0.0, "-", [0.0, 1.0])
        assert bc.lam[0] == -1.0
        # Im slope in k is c - 2 a D(0) = c
        assert bc.lam[1].imag - bc.lam[0].imag == 1.0

    def test_nn_alpha_side_unweighted(self):
        bc = fredholm_border(HALF, "Nn", 1.0, 0.0, 0.0, "+", [0.0])
        assert bc.lam[0] == 0.25

    def test_conjugate_symmetry(self):
        k = np.linspace(0, 5, 51)
        k = np.concatenate([-k[::-1], k[1:]])
        for a in (0.0, 0.4):
            lam = fredholm_border(HALF, "Nn", 1.0, a, 0.01, "+", k).lam
            assert np.allclose(lam[::-1], np.conj(lam), rtol=0, atol=1e-14)

    def test_max_at_k0(self):
        for side in "-+":
            bc = fredholm_border(HALF, "Nd", 1.0, 0.5, 0.0, side)
            assert bc.max_re == bc.lam[np.argmin(np.abs(bc.k))].real
            assert bc.max_re <= consistent_splitting_bound(HALF, "Nd", 1.0, 0.5)

    def test_negative_eps(self):
        with pytest.raises(ValueError):
            fredholm_border(HALF, "Nd", 1.0, 0.5, -1e-3, "+")


class TestSplittingBound:
    def test_stationary(self):
        m = ModelSpec.shigesada_cubic(1.0, 0.625)
        b = consistent_splitting_bound(m, "sN-decreasing", 0.0, 0.0)
        assert b == max(m.f(0.0, 1), m.f(1.0, 1)) and b < 0

    def test_nd(self):
        assert consistent_splitting_bound(HALF, "Nd", 1.0, 0.5) == -0.0625

    def test_eps_shift(self):
        a, eps = 0.5, 0.01
        b0 = consistent_splitting_bound(HALF, "Nn", 1.0, a)
        b1 = consistent_splitting_bound(HALF, "Nn", 1.0, a, eps)
        assert b1 - b0 == pytest.approx(eps * a * a, abs=1e-15)


class TestWeightRoots:
    def test_alpha(self):
        a1, a2 = weight_roots(HALF, 0.5, 1.0)
        assert a1 == pytest.approx(1 / 3, abs=1e-15) and a2 == pytest.approx(1.0, abs=1e-15)

    def test_one(self):
        a1, a2 = weight_roots(HALF, 1.0, 1.0)
        s5 = sp.sqrt(5)
        assert a1 == pytest.approx(float((1 - s5) / 4), abs=1e-15)
        assert a2 == pytest.approx(float((1 + s5) / 4), abs=1e-15)
        assert a1 < 0 < a2

    def test_threshold(self):
        c = threshold_speed(HALF)
        a1, a2 = weight_roots(HALF, 0.5, c)
        ref = c / (2 * HALF.D(0.5))
        assert a1 == pytest.approx(ref, rel=1e-7) and a2 == pytest.approx(ref, rel=1e-7)

    @given(st.floats(0.05, 0.95), st.floats(0.1, 4.0), st.floats(1.01, 5.0))
    @settings(max_examples=60, deadline=None)
    def test_roots_zero_p(self, alpha, b, k):
        m = ModelSpec.shigesada_cubic(b, alpha)
        c = k * threshold_speed(m)
        a1, a2 = weight_roots(m, alpha, c)
        assert abs(p_weight(m, a1, alpha, c)) <= 1e-12
        assert abs(p_weight(m, a2, alpha, c)) <= 1e-12
        assert p_weight(m, 0.5 * (a1 + a2), alpha, c) < 0


class TestClassify:
    def test_case_i(self):
        t = time.perf_counter()
        out = classify_and_threshold(HALF)
        assert out["classification"] == "case-i"
        assert out["rational_test"]["lhs"] == "3" and out["rational_test"]["rhs"] == "2"
        assert out["c0"] == threshold_speed(HALF)
        assert time.perf_counter() - t < 0.1

    def test_case_ii(self):
        out = classify_and_threshold(QUARTER)
        assert out["classification"] == "case-ii"
        assert out["rational_test"]["lhs"] == "15/8"
        assert out["c_hat"] > threshold_speed(QUARTER)
        assert out["c_hat_residual"] <= 1e-12

    def test_h_at_threshold(self):
        # closed form with alpha = 0.5, b = 1: rho = 3/8, th1 = 4, tha = 3/4
        c = sp.sqrt(sp.Rational(3, 4))
        ref = sp.Rational(3, 8) * sp.sqrt(1 + 4 / c**2) + 0
        assert h_function(HALF, float(c)) == pytest.approx(float(ref), abs=1e-7)
        assert float(ref) == pytest.approx(0.94373, abs=1e-5)


class TestSelectWeight:
    def test_nd(self):
        pl = select_weight(HALF, "Nd", 1.0)
        assert pl.interval[0] == pytest.approx(1 / 3, abs=1e-12)
        assert pl.interval[1] == pytest.approx(2 / 3, abs=1e-12)
        assert pl.a == pytest.approx(0.5, abs=1e-12)
        assert pl.mu0 == pytest.approx(0.0625, abs=1e-12)
        assert pl.feasible

    def test_stationary(self):
        m = ModelSpec.shigesada_cubic(1.0, stationary_alpha(1.0))
        pl = select_weight(m, "sN-decreasing")
        assert pl.a == 0.0 and pl.mu0 == pytest.approx(0.375, abs=1e-14)

    def test_nn_case_ii_near_threshold(self):
        c = threshold_speed(QUARTER) * (1 + 1e-4)
        assert not select_weight(QUARTER, "Nn", c).feasible

    def test_nn_case_i(self):
        pl = select_weight(HALF, "Nn", 1.0)
        assert pl.feasible and pl.mu0 > 0
        assert consistent_splitting_bound(HALF, "Nn", 1.0, pl.a) < 0

    @given(st.floats(0.1, 0.9), st.floats(0.2, 3.0), st.floats(1.05, 3.0))
    @settings(max_examples=40, deadline=None)
    def test_feasible_iff_negative_bound(self, alpha, b, k):
        m = ModelSpec.shigesada_cubic(b, alpha)
        c = k * threshold_speed(m)
        for case in ("Nd", "Nn"):
            pl = select_weight(m, case, c)
            if pl.feasible:
                assert consistent_splitting_bound(m, case, c, pl.a) < 0

    def test_below_threshold(self):
        assert not select_weight(HALF, "Nd", 0.5).feasible


class TestAsymptotics:
    def test_nd_plus(self):
        A, mu, split = asymptotic_matrix(HALF, "Nd", 1.0, 0.5, 0.0, 0.0, "+")
        assert mu[0].real == pytest.approx(-0.5, abs=1e-14)
        assert mu[1].real == pytest.approx(1 / 6, abs=1e-14)
        assert split

    def test_large_lambda(self):
        _, mu, split = asymptotic_matrix(HALF, "Nn", 1.0, 0.5, 0.0, 100.0, "-")
        assert split and mu[0].real < 0 < mu[1].real

    def test_on_border(self):
        k = 1.7
        lam = fredholm_border(HALF, "Nn", 1.0, 0.5, 0.0, "+", [k]).lam[0]
        _, mu, _ = asymptotic_matrix(HALF, "Nn", 1.0, 0.5, 0.0, lam, "+")
        assert np.min(np.abs(mu - 1j * k)) <= 1e-12

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError):
            asymptotic_matrix(HALF, "Nd", 1.0, 0.5, 0.0, 0.0, "-")

    def test_decaying_mode(self):
        mu, zeta = decaying_mode(HALF, 1.0, 0.5, 0.0)
        assert mu == pytest.approx(-0.5, abs=1e-14)
        assert zeta == pytest.approx(4 / 9, abs=1e-14)
        assert mu.imag == 0.0
        mu2, _ = decaying_mode(HALF, 1.0, 0.5, 0.1 + 0.2j)
        _, ev, _ = asymptotic_matrix(HALF, "Nd", 1.0, 0.5, 0.0, 0.1 + 0.2j, "+")
        assert mu2.real < 0 and np.min(np.abs(ev - mu2)) <= 1e-12

    def test_decaying_mode_random(self, rng):
        bound = consistent_splitting_bound(HALF, "Nd", 1.0, 0.5)
        lams = bound + rng.uniform(1e-3, 3.0, 100) + 1j * rng.uniform(-3, 3, 100)
        for lam in lams:
            mu, _ = decaying_mode(HALF, 1.0, 0.5, lam)
            _, ev, _ = asymptotic_matrix(HALF, "Nd", 1.0, 0.5, 0.0, lam, "+")
            assert np.min(np.abs(ev - mu)) <= 1e-12

    def test_outside_region(self):
        with pytest.raises(ValueError):
            decaying_mode(HALF, 1.0, 0.5, -0.5)

    def test_absolute_edge_independent_of_a(self):
        e = [absolute_spectrum_edge(HALF, "Nn", 1.0, a) for a in (0.0, 0.4, 0.6)]
        assert np.allclose(e, -1 / 12, atol=1e-15)
