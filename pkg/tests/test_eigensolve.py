import numpy as np
import pytest
import sympy as sp

from degnagumo import (GridConfig, solve_front, build_operator, compute_spectrum,
                       Window, translation_eigenpair_check, liouville_transform,
                       sturm_check, regularization_sweep, absolute_spectrum_edge)
from degnagumo.eigensolve import (DiscretizedOperator, assemble, trapz_weights,
                                  count_sign_changes, CERT_TOL)
from degnagumo.fronts import FrontProfile


def synthetic_front(c=1.0):
    # smooth decreasing profile from 1 to 1/2 with closed-form derivatives
    x = np.linspace(-15, 15, 1201)
    t = np.tanh(x)
    s2 = 1 - t * t
    phi = 0.75 - 0.25 * t
    return FrontProfile("Nn", c, x, phi, -0.25 * s2, 0.5 * t * s2, 1.0, 0.5, 15.0, 15.0,
                        dev=np.where(x < 0, phi - 1, phi - 0.5), alpha=0.5)


def conjugated_coefficients(model, c, a, x_vals):
    # oracle: expand e^{ax} L (e^{-ax} v) with L u = (D(phi) u)_xx + c u_x + f'(phi) u
    x = sp.symbols("x")
    v = sp.Function("v")(x)
    phi = sp.Rational(3, 4) - sp.tanh(x) / 4
    uu = sp.symbols("uu")
    D = sp.Poly(list(reversed(model.D_coef)), uu).as_expr().subs(uu, phi)
    fp = sp.diff(sp.Poly(list(reversed(model.f_coef)), uu).as_expr(), uu).subs(uu, phi)
    u = sp.exp(-a * x) * v
    expr = sp.expand(sp.exp(a * x) * (sp.diff(D * u, x, 2) + c * sp.diff(u, x) + fp * u))
    d2, d1 = sp.diff(v, x, 2), sp.diff(v, x)
    b2 = expr.coeff(d2)
    b1 = sp.expand(expr - b2 * d2).coeff(d1)
    b0 = sp.expand(expr - b2 * d2 - b1 * d1).coeff(v)
    return [sp.lambdify(x, sp.simplify(b), "numpy")(x_vals) * np.ones_like(x_vals)
            for b in (b2, b1, b0)]


class TestBuildOperator:
    def test_coefficients_against_conjugation(self, half_model):
        fr = synthetic_front()
        a = 0.4
        op = build_operator(fr, half_model, a)
        b2, b1, b0 = conjugated_coefficients(half_model, 1.0, a, fr.x)
        assert np.max(np.abs(op.b2 - b2)) <= 1e-12
        assert np.max(np.abs(op.b1 - b1)) <= 1e-12
        assert np.max(np.abs(op.b0 - b0)) <= 1e-12

    @pytest.mark.parametrize("name", ["nd_front", "nn_front"])
    def test_asymptotic_values(self, name, request, half_model):
        fr = request.getfixturevalue(name)
        op = build_operator(fr, half_model, 0.0, 0.0)
        for k, u in ((0, fr.u_minus), (-1, fr.u_plus)):
            assert op.b0[k] == pytest.approx(half_model.f(u, 1), abs=1e-5)
            assert op.b1[k] == pytest.approx(1.0, abs=1e-5)
            assert op.b2[k] == pytest.approx(half_model.D(u), abs=1e-5)

    def test_nd_weighted_drift(self, half_model, nd_front, nd_plan):
        op = build_operator(nd_front, half_model, nd_plan.a)
        assert op.b1[-1] == pytest.approx(0.25, abs=1e-6)

    def test_eps_shift(self, half_model, nd_front, nd_plan):
        op0 = build_operator(nd_front, half_model, nd_plan.a, 0.0)
        op1 = build_operator(nd_front, half_model, nd_plan.a, 1e-2)
        assert np.allclose(op1.b2 - op0.b2, 1e-2, rtol=0, atol=1e-15)
        assert np.all(op1.b2 >= 1e-2)
        # b1 and b0 move by -2a eps and a^2 eps
        a = nd_plan.a
        assert np.allclose(op1.b1 - op0.b1, -2 * a * 1e-2, rtol=0, atol=1e-14)
        assert np.allclose(op1.b0 - op0.b0, a * a * 1e-2, rtol=0, atol=1e-14)

    def test_rejects(self, half_model, nd_front):
        small = solve_front(half_model, "Nd", 1.0, GridConfig(N=150))
        with pytest.raises(ValueError):
            build_operator(small, half_model)
        with pytest.raises(ValueError):
            build_operator(nd_front, half_model, 0.5, -1e-3)


def laplacian_op(n=1001):
    x = np.linspace(0, np.pi, n)
    one, zero = np.ones(n), np.zeros(n)
    lo, di, up = assemble(x, one, zero, zero, zero)
    return DiscretizedOperator(x, one, zero, zero, zero, zero, lower=lo, diag=di,
                               upper=up, phase_index=n // 7)


class TestComputeSpectrum:
    def test_laplacian(self):
        pairs = compute_spectrum(laplacian_op(), 5)
        lam = np.array([p.lam.real for p in pairs])
        exact = -np.arange(1, 6) ** 2
        assert np.allclose(lam, exact, rtol=1e-4)
        assert [p.sign_changes for p in pairs] == [0, 1, 2, 3, 4]
        assert sturm_check(pairs)["passed"]

    def test_residual_certificate(self, half_model, nn_front, nn_plan):
        op = build_operator(nn_front, half_model, nn_plan.a)
        T = op.matrix
        for p in compute_spectrum(op, 8):
            v = p.u[1:-1]
            assert np.linalg.norm(T @ v - p.lam * v) <= CERT_TOL * np.linalg.norm(v)
            w = trapz_weights(op.x)
            assert np.sum(np.abs(p.u) ** 2 * w) == pytest.approx(1.0, rel=1e-12)

    def test_sorted_and_window(self, half_model, nn_front, nn_plan):
        op = build_operator(nn_front, half_model, nn_plan.a)
        pairs = compute_spectrum(op, 8, Window(re_min=-0.085))
        re = [p.lam.real for p in pairs]
        assert re == sorted(re, reverse=True)
        assert all(r > -0.085 for r in re)

    def test_nn_top_isolated(self, half_model, nn_front, nn_plan):
        op = build_operator(nn_front, half_model, nn_plan.a)
        pairs = [p for p in compute_spectrum(op, 8) if not p.flagged]
        edge = absolute_spectrum_edge(half_model, "Nn", 1.0, nn_plan.a)
        above = [p for p in pairs if p.lam.real > edge]
        # one isolated eigenvalue, strictly negative; the rest is continuum
        assert len(above) == 1
        assert above[0].lam.real == pytest.approx(-0.06098, abs=1e-4)
        assert above[0].sign_changes == 0

    def test_nd_nonpositive(self, half_model, nd_front, nd_plan):
        op = build_operator(nd_front, half_model, nd_plan.a)
        for p in compute_spectrum(op, 10):
            if not p.flagged:
                assert p.lam.real <= 1e-5

    def test_sn_translation(self, sn_model, sn_front):
        pairs = compute_spectrum(build_operator(sn_front, sn_model), 6)
        top = pairs[0]
        assert not top.flagged and abs(top.lam) < 1e-5
        # eigenfunction is proportional to phi_x
        k = top.u != 0
        r = top.u[1:-1] / sn_front.phi_x[1:-1]
        m = np.abs(sn_front.x[1:-1]) < 10
        assert np.std(r[m]) / abs(np.mean(r[m])) < 1e-3


class TestRefinement:
    def test_grid_doubling(self, half_model, sn_model):
        for model, case, c in ((half_model, "Nn", 1.0), (sn_model, "sN-decreasing", None)):
            tops = []
            for N in (4000, 8000):
                fr = solve_front(model, case, c, GridConfig(N=N))
                a = 0.0 if c is None else __import__("degnagumo").select_weight(model, case, c).a
                edge = absolute_spectrum_edge(model, case, fr.c, a)
                ps = [p for p in compute_spectrum(build_operator(fr, model, a), 6)
                      if not p.flagged and p.lam.real > edge]
                tops.append(np.array([p.lam.real for p in ps]))
            assert tops[0].size == tops[1].size > 0
            assert np.max(np.abs(tops[0] - tops[1])) <= 1e-4

    def test_truncation(self, half_model, nn_front, nn_plan):
        fr2 = solve_front(half_model, "Nn", 1.0,
                          GridConfig(N=5000, L_minus=1.25 * nn_front.L_minus,
                                     L_plus=1.25 * nn_front.L_plus))
        l1 = compute_spectrum(build_operator(nn_front, half_model, nn_plan.a), 3)[0].lam
        l2 = compute_spectrum(build_operator(fr2, half_model, nn_plan.a), 3)[0].lam
        assert abs(l1 - l2) <= 1e-5


class TestTranslation:
    def test_stationary(self, sn_model, sn_front):
        assert translation_eigenpair_check(sn_front, sn_model, 0.0) <= 1e-8

    def test_nd(self, half_model, nd_front):
        assert translation_eigenpair_check(nd_front, half_model, 0.5) <= 1e-6

    def test_nn(self, half_model, nn_front, nn_plan):
        assert translation_eigenpair_check(nn_front, half_model, nn_plan.a) <= 1e-6

    def test_discrete_is_stencil_error(self, half_model, nn_front, nn_plan):
        r = translation_eigenpair_check(nn_front, half_model, nn_plan.a, discrete=True)
        assert 0 < r < 1e-4


class TestLiouville:
    def test_constant_coefficients(self, half_model):
        # phi = 1 everywhere with eps = 2 gives b2 = D(1) + 2 = 4
        x = np.linspace(-10, 10, 401)
        fr = FrontProfile("Nn", 1.0, x, np.ones_like(x), np.zeros_like(x),
                          np.zeros_like(x), 1.0, 0.5, 10.0, 10.0, dev=np.zeros_like(x))
        op = build_operator(fr, half_model, 0.3, 2.0)
        assert np.allclose(op.b2, 4.0)
        L = liouville_transform(op)
        assert np.allclose(L.xi, (x - x[op.phase_index]) / 2, atol=1e-13)
        assert np.allclose(L.op.b1, op.b1 / 2, atol=1e-14)
        assert np.allclose(L.op.b0, op.b0, atol=1e-14)

    def test_coefficients_symbolic(self):
        # b1~, b0~ from substituting u = b2^{-1/4} v, d/dx = b2^{-1/2} d/dxi
        x = sp.symbols("x")
        b2, b1, b0 = (sp.Function(n)(x) for n in ("b2", "b1", "b0"))
        v = sp.Function("v")
        xi = sp.Function("xi")(x)
        u = b2 ** sp.Rational(-1, 4) * v(xi)
        Lu = b2 * sp.diff(u, x, 2) + b1 * sp.diff(u, x) + b0 * u
        Lu = Lu.subs(sp.Derivative(xi, x), b2 ** sp.Rational(-1, 2))
        Lu = sp.expand(sp.simplify(Lu.doit().subs(sp.Derivative(xi, x), b2 ** sp.Rational(-1, 2))))
        V = sp.symbols("V0 V1 V2")
        s = sp.symbols("s")
        repl = {sp.Subs(sp.Derivative(v(s), s, 2), s, xi): V[2],
                sp.Subs(sp.Derivative(v(s), s), s, xi): V[1],
                sp.Derivative(v(xi), xi, 2): V[2], sp.Derivative(v(xi), xi): V[1],
                v(xi): V[0]}
        Lv = sp.expand(sp.simplify(Lu * b2 ** sp.Rational(1, 4)).subs(repl))
        db2, d2b2 = sp.diff(b2, x), sp.diff(b2, x, 2)
        assert sp.simplify(Lv.coeff(V[2]) - 1) == 0
        assert sp.simplify(Lv.coeff(V[1]) - (b1 - db2) / sp.sqrt(b2)) == 0
        ref0 = sp.Rational(5, 16) * db2**2 / b2 - d2b2 / 4 - b1 * db2 / (4 * b2) + b0
        assert sp.simplify(Lv.coeff(V[0]) - ref0) == 0

    def test_spectral_equivalence(self, half_model, nn_front, nn_plan):
        op = build_operator(nn_front, half_model, nn_plan.a)
        L = liouville_transform(op)
        l1 = np.array([p.lam for p in compute_spectrum(op, 5)])
        l2 = np.array([p.lam for p in compute_spectrum(L.op, 5)])
        assert np.max(np.abs(l1 - l2)) <= 1e-6

    def test_eigenfunction_maps(self, half_model, nn_front, nn_plan):
        op = build_operator(nn_front, half_model, nn_plan.a)
        L = liouville_transform(op)
        p = compute_spectrum(L.op, 1)[0]
        u = L.to_u(p.u)
        assert np.allclose(L.to_v(u), p.u)
        r = op.apply(u) - p.lam * u[1:-1]
        assert np.linalg.norm(r) / np.linalg.norm(u) < 1e-3

    def test_weights_positive(self, half_model, nn_front, nn_plan):
        L = liouville_transform(build_operator(nn_front, half_model, nn_plan.a))
        for w in (L.omega, L.omega_bar, L.omega_x):
            assert np.all(w > 0) and np.all(np.isfinite(w))
        assert np.all(np.isfinite(L.b1_limits))

    def test_weighted_symmetry(self, half_model, nn_front, nn_plan, rng):
        L = liouville_transform(build_operator(nn_front, half_model, nn_plan.a))
        T = L.op.matrix
        W = L.discrete_weight()
        xi = L.xi[1:-1]
        for _ in range(20):
            c1, c2 = rng.uniform(0.5 * xi[0], 0.5 * xi[-1], 2)
            w1, w2 = rng.uniform(1, 5, 2)
            u = np.exp(-((xi - c1) / w1) ** 2)
            v = np.exp(-((xi - c2) / w2) ** 2) * np.cos(xi)
            Tu, Tv = T @ u, T @ v
            lhs = np.sum(W * Tu * v) - np.sum(W * u * Tv)
            scale = np.sqrt(np.sum(W * Tu**2) * np.sum(W * v**2))
            assert abs(lhs) <= 1e-8 * scale
        # W is the discrete form of omega dxi
        ratio = W / (L.omega[1:-1] * trapz_weights(L.xi)[1:-1])
        assert np.max(np.abs(ratio - 1)) < 1e-2

    def test_degenerate_rejected(self, half_model, nd_front, nd_plan):
        with pytest.raises(ValueError):
            liouville_transform(build_operator(nd_front, half_model, nd_plan.a))


class TestSturm:
    def test_nn(self, half_model, nn_front, nn_plan):
        op = build_operator(nn_front, half_model, nn_plan.a)
        rep = sturm_check(compute_spectrum(op, 5))
        assert [e["sign_changes"] for e in rep["entries"]] == [0, 1, 2, 3, 4]
        assert rep["simple"] and rep["min_gap"] > 1e-8 and rep["passed"]

    def test_count_baseline(self):
        x = np.linspace(0, np.pi, 2001)
        for j in range(6):
            assert count_sign_changes(x, np.sin((j + 1) * x)) == j

    def test_complex_skipped(self):
        from degnagumo.eigensolve import EigenPair
        x = np.linspace(0, 1, 11)
        p = EigenPair(1 + 1j, np.sin(np.pi * x), 0.0, 0.0, False, None, x)
        rep = sturm_check([p])
        assert rep["skipped"] == [1 + 1j] and rep["entries"] == []


class TestRegularization:
    def test_nd_sweep(self, half_model, nd_front, nd_plan):
        eps = [1e-1, 1e-2, 1e-3, 1e-4, 0.0]
        out = regularization_sweep(nd_front, half_model, nd_plan.a, eps, n_eigs=3)
        rows = out["rows"]
        assert [r["eps"] for r in rows] == eps
        drift = np.array([r["drift"] for r in rows[:-1]])
        assert np.all(np.diff(drift, axis=0) < 0)
        # the eps = 0 row is the unregularized spectrum itself
        ref = [p.lam for p in compute_spectrum(build_operator(nd_front, half_model, nd_plan.a), 20)
               if not p.flagged][:3]
        assert np.array_equal(rows[-1]["lam"], np.array(ref))
        assert np.all(rows[-1]["drift"] == 0)

    def test_sn_translation_drift(self, sn_model, sn_front):
        out = regularization_sweep(sn_front, sn_model, 0.0, [1e-1, 1e-2, 1e-3, 0.0], n_eigs=1)
        d = [abs(r["lam"][0]) for r in out["rows"][:-1]]
        assert d[0] > d[1] > d[2]

    def test_validation(self, half_model, nd_front):
        with pytest.raises(ValueError):
            regularization_sweep(nd_front, half_model, 0.5, [1e-3, 1e-2])
        with pytest.raises(ValueError):
            regularization_sweep(nd_front, half_model, 0.5, [1e-2, -1e-3])
