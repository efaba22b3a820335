"""Essential-spectrum geometry and exponential weights.

Everything here is closed form.  For an end state u the conjugated
operator with weight a has asymptotic symbol

    lambda(k) = D^eps(u)(a^2 - k^2) - a c + f'(u) + i k (c - 2 a D^eps(u)),

and the weight polynomial p(a; u) = D(u) a^2 - a c + f'(u) is its value at
k = 0 with eps = 0.
"""
import warnings
from dataclasses import dataclass, asdict
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .fronts import canonical_case, end_states
from .model import threshold_speed

__all__ = ["WeightPlan", "BorderCurve", "p_weight", "weight_roots",
           "fredholm_border", "consistent_splitting_bound",
           "classify_and_threshold", "h_function", "select_weight",
           "asymptotic_matrix", "decaying_mode", "default_k_grid",
           "absolute_spectrum_edge"]


def default_k_grid():
    return np.linspace(-20.0, 20.0, 2001)


@dataclass
class WeightPlan:
    case: str
    c: float
    a: float
    interval: tuple
    nd_cap: float
    mu0: float
    classification: str
    c0: float
    feasible: bool
    reason: str = ""
    mu0_exact: float = None     # -max p(a; u) on Nn, next to the 1/2 min form

    def to_dict(self):
        d = asdict(self)
        d["interval"] = list(self.interval)
        return d


@dataclass
class BorderCurve:
    side: str
    eps: float
    a: float
    k: np.ndarray
    lam: np.ndarray

    @property
    def max_re(self):
        return float(np.max(self.lam.real))

    def rows(self):
        return np.column_stack([self.k, self.lam.real, self.lam.imag])


def p_weight(model, a, u, c):
    """p(a; u) = D(u) a^2 - a c + f'(u)."""
    return model.D(u) * a * a - a * c + model.f(u, 1)


def weight_roots(model, u, c):
    """Roots a1 <= a2 of p(a; u) = 0."""
    Du, fu = model.D(u), model.f(u, 1)
    if Du <= 0:
        raise ValueError("weight roots need D(u) > 0")
    disc = c * c - 4.0 * Du * fu
    if disc < 0 and disc >= -1e-14 * c * c:
        disc = 0.0          # c = cbar up to rounding
    if disc < 0:
        raise ValueError(f"complex weight roots at u = {u}: c below threshold")
    r = np.sqrt(disc)
    return (c - r) / (2 * Du), (c + r) / (2 * Du)


def _D_eps(model, u, eps):
    return model.D(u) + eps


def fredholm_border(model, case, c, a, eps, side, k_grid=None):
    """Fredholm border of the (regularized) conjugated operator at one end."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    k = default_k_grid() if k_grid is None else np.asarray(k_grid, dtype=float)
    um, up = end_states(model, case)
    u = up if side in ("+", "+inf", "plus") else um
    De = _D_eps(model, u, eps)
    lam = De * (a * a - k * k) - a * c + model.f(u, 1) + 1j * k * (c - 2 * a * De)
    return BorderCurve("+" if u == up else "-", float(eps), float(a), k, lam)


def consistent_splitting_bound(model, case, c, a, eps=0.0):
    """Largest k = 0 border real part over both ends."""
    vals = []
    for u in end_states(model, case):
        vals.append(_D_eps(model, u, eps) * a * a - a * c + model.f(u, 1))
    return float(max(vals))


def absolute_spectrum_edge(model, case, c, a, eps=0.0):
    """Rightmost real lambda at which the two spatial roots at an end share
    their real part, max over the nondegenerate ends.

    Dirichlet truncations converge to this absolute spectrum rather than
    to the essential one, so real eigenvalues at or below it are expected
    to be continuum modes of the cut domain.  Returns -inf if no end
    qualifies.
    """
    edges = []
    for u in end_states(model, case):
        De = _D_eps(model, u, eps)
        if De <= 0:
            continue
        b1 = c - 2 * a * De
        b0 = De * a * a - a * c + model.f(u, 1)
        edges.append(b0 - b1 * b1 / (4 * De))
    return float(max(edges)) if edges else -np.inf


def _h_constants(model):
    al = model.alpha
    rho = model.D(al) / model.D(1.0)
    th1 = -4 * model.D(1.0) * model.f(1.0, 1)
    tha = 4 * model.D(al) * model.f(al, 1)
    return rho, th1, tha


def h_function(model, c, _const=None):
    """h(c) = rho sqrt(1 + th1^2/c^2) + sqrt(1 - tha^2/c^2)."""
    rho, th1, tha = _const or _h_constants(model)
    c = np.asarray(c, dtype=float)
    out = rho * np.sqrt(1 + th1 / c ** 2) + np.sqrt(np.maximum(1 - tha / c ** 2, 0.0))
    return float(out) if out.ndim == 0 else out


def _rational_case_test(model):
    """(alpha + b)(1 + 2 alpha) against 1 + b, in exact rationals."""
    al, b = Fraction(model.alpha), Fraction(model.b)
    lhs, rhs = (al + b) * (1 + 2 * al), 1 + b
    return lhs > rhs, lhs, rhs


def classify_and_threshold(model, tol=1e-12):
    """Case (i)/(ii) split for Nn fronts and the threshold speed c0.

    Returns a dict with classification, c0, c_hat (None in case i) and
    the comparison that decided it.
    """
    al = model.alpha
    cbar = threshold_speed(model)
    rho = model.D(al) / model.D(1.0)
    target = 1.0 - rho
    h_bar = h_function(model, cbar)
    out = {"cbar": float(cbar), "rho": float(rho), "h_cbar": float(h_bar),
           "one_minus_rho": float(target)}
    case_i = h_bar > target
    if model.family == "shigesada-cubic":
        exact, lhs, rhs = _rational_case_test(model)
        out["rational_test"] = {"lhs": str(lhs), "rhs": str(rhs), "case_i": exact}
        if exact != case_i:
            warnings.warn("rational and floating case tests disagree; "
                          "using the rational one")
            case_i = exact
    if case_i:
        out.update(classification="case-i", c0=float(cbar), c_hat=None)
        return out

    const = _h_constants(model)

    def g(c):
        return h_function(model, c, const) - target
    hi = cbar * 2.0
    while g(hi) <= 0 and hi < cbar * 1e6:
        hi *= 2.0
    if g(hi) <= 0:
        warnings.warn("h(c) never crosses 1 - rho; falling back to c0 = cbar")
        out.update(classification="case-ii", c0=float(cbar), c_hat=None,
                   bracket_failed=True)
        return out
    # h may have one interior maximum; c_hat is the last crossing
    cs = np.geomspace(cbar, hi, 2001)
    gs = g(cs)
    j = np.flatnonzero(gs <= 0)[-1]
    c_hat = brentq(g, cs[j], cs[j + 1], xtol=1e-15, rtol=8.9e-16, maxiter=500)
    out.update(classification="case-ii", c0=float(c_hat), c_hat=float(c_hat),
               c_hat_residual=float(abs(g(c_hat))))
    return out


def select_weight(model, case, c=None):
    """Choose the exponential weight a and the essential margin mu0."""
    case = canonical_case(case)
    if case.startswith("sN"):
        mu0 = -max(model.f(0.0, 1), model.f(1.0, 1))
        return WeightPlan(case, 0.0, 0.0, (0.0, 0.0), None, float(mu0),
                          "stationary", None, mu0 > 0)
    c = float(c)
    al = model.alpha
    cbar = threshold_speed(model)
    if c <= cbar:
        return WeightPlan(case, c, np.nan, (np.nan, np.nan), None, 0.0,
                          "n/a", float(cbar), False,
                          f"c = {c} <= cbar(alpha) = {cbar:.6g}")
    a1, a2 = weight_roots(model, al, c)
    if case == "Nd":
        cap = c / (2 * model.D(al))
        lo, hi = a1, cap
        a = 0.5 * (lo + hi)
        mu0 = -max(p_weight(model, a, al, c), -a * c + model.f(0.0, 1))
        ok = 0 < lo < hi < a2 and mu0 > 0
        return WeightPlan(case, c, float(a), (float(lo), float(hi)), float(cap),
                          float(mu0), "degenerate", float(cbar), bool(ok),
                          "" if ok else "0 < a1(alpha) < c/(2D(alpha)) < a2(alpha) fails")
    # Nn
    cls = classify_and_threshold(model)
    c0 = cls["c0"]
    _, a2_1 = weight_roots(model, 1.0, c)
    m = min(a2, a2_1)
    lo, hi = a1, m
    if not c > c0:
        return WeightPlan(case, c, np.nan, (float(lo), float(hi)), None, 0.0,
                          cls["classification"], float(c0), False,
                          f"c = {c} <= c0(alpha) = {c0:.6g}")
    if not 0 < lo < hi:
        return WeightPlan(case, c, np.nan, (float(lo), float(hi)), None, 0.0,
                          cls["classification"], float(c0), False,
                          "0 < a1(alpha) < m(alpha) fails")
    a = 0.5 * (lo + hi)
    p1, pa = p_weight(model, a, 1.0, c), p_weight(model, a, al, c)
    mu0 = 0.5 * min(abs(p1), abs(pa))
    ok = max(p1, pa) < 0
    return WeightPlan(case, c, float(a), (float(lo), float(hi)), None,
                      float(mu0), cls["classification"], float(c0), bool(ok),
                      "" if ok else "p(a; u) >= 0 at an end state",
                      mu0_exact=float(-max(p1, pa)))


def asymptotic_matrix(model, case, c, a, eps, lam, side):
    """Companion matrix of the constant-coefficient limit at one end.

    Returns (A, eigenvalues, splitting) where splitting is True when the
    two spatial eigenvalues have real parts of opposite strict sign.
    """
    um, up = end_states(model, case)
    u = up if side in ("+", "+inf", "plus") else um
    b2 = _D_eps(model, u, eps)
    if b2 <= 0:
        raise ValueError("degenerate end with eps = 0: the asymptotic system is singular")
    b1 = c - 2 * a * b2
    b0 = a * a * b2 - a * c + model.f(u, 1)
    A = np.array([[0.0, 1.0], [(lam - b0) / b2, -b1 / b2]], dtype=complex)
    mu = np.linalg.eigvals(A)
    mu = mu[np.argsort(mu.real)]
    split = bool(mu[0].real < 0 < mu[1].real)
    return A, mu, split


def decaying_mode(model, c, a, lam, margin=1e-12):
    """Decaying spatial eigenvalue at +inf for the degenerate traveling case."""
    bound = consistent_splitting_bound(model, "Nd", c, a, 0.0)
    lam = complex(lam)
    if not lam.real > bound + margin:
        raise ValueError(f"Re lambda = {lam.real} is not above the splitting bound {bound}")
    Da = model.D(model.alpha)
    pa = p_weight(model, a, model.alpha, c)
    zeta = (c / Da - 2 * a) ** 2 + 4 * (lam - pa) / Da
    mu = a - c / (2 * Da) - 0.5 * np.sqrt(zeta + 0j)
    if not mu.real < 0:
        raise RuntimeError("decaying mode has nonnegative real part")
    return mu, zeta
