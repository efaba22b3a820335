"""Monotone front profiles and their asymptotics.

Four cases:

    sN-decreasing   c = 0,   1 -> 0
    sN-increasing   c = 0,   0 -> 1
    Nd              c > cbar, 0 -> alpha   (degenerate at -inf)
    Nn              c > cbar, 1 -> alpha

The profile solves (D(phi) phi_x)_x + c phi_x + f(phi) = 0.  Stationary
fronts come from the level set H = 0 of the first integral; traveling
fronts are shot along the invariant manifold of the left end state.
"""
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial
from scipy.integrate import solve_ivp
from scipy.interpolate import BPoly

from .model import script_D, script_D_tail_poly, threshold_speed

__all__ = ["GridConfig", "FrontProfile", "DecayReport", "CASES", "canonical_case",
           "end_states", "solve_stationary_front", "solve_traveling_front",
           "solve_front", "profile_residual", "verify_decay",
           "coefficient_bound", "coefficient_tails", "manifold_series", "NoMonotoneFront",
           "crosses_alpha", "minimal_speed"]

CASES = ("sN-increasing", "sN-decreasing", "Nd", "Nn")
_ALIASES = {"sN-inc": "sN-increasing", "sN-dec": "sN-decreasing",
            "sn-increasing": "sN-increasing", "sn-decreasing": "sN-decreasing",
            "nd": "Nd", "nn": "Nn", "sN": "sN-decreasing"}

RTOL = 1e-12
DELTA = 1e-6          # boundary layer cutoff at the sharp stationary edge
SPEED_MARGIN = 1e-6
SERIES_ORDER = 12


def canonical_case(case):
    if case in CASES:
        return case
    try:
        return _ALIASES[case] if case in _ALIASES else _ALIASES[case.lower()]
    except KeyError:
        raise ValueError(f"unknown case {case!r}") from None


def end_states(model, case):
    """(u_minus, u_plus) for a case."""
    case = canonical_case(case)
    al = model.alpha
    return {"sN-decreasing": (1.0, 0.0), "sN-increasing": (0.0, 1.0),
            "Nd": (0.0, al), "Nn": (1.0, al)}[case]


@dataclass(frozen=True)
class GridConfig:
    N: int = 4000
    L_minus: float = None
    L_plus: float = None
    phase: float = None     # phi(0); default is the midpoint of the end states


@dataclass(frozen=True)
class FrontProfile:
    case: str
    c: float
    x: np.ndarray
    phi: np.ndarray
    phi_x: np.ndarray
    phi_xx: np.ndarray
    u_minus: float
    u_plus: float
    L_minus: float
    L_plus: float
    # phi - u_minus for x < 0 and phi - u_plus for x >= 0, kept separately
    # because tails of phi itself round against the end state
    dev: np.ndarray = field(repr=False, default=None)
    alpha: float = None
    x_edge: float = None     # sharp edge of stationary fronts
    residual_max: float = None

    def __post_init__(self):
        for name in ("x", "phi", "phi_x", "phi_xx", "dev"):
            a = getattr(self, name)
            if a is not None:
                a = np.array(a, dtype=float)
                a.setflags(write=False)
                object.__setattr__(self, name, a)

    @property
    def N(self):
        return self.x.size

    @property
    def phase_index(self):
        return int(np.argmin(np.abs(self.x)))

    @property
    def decreasing(self):
        return self.u_minus > self.u_plus

    def sidecar(self, model):
        return {"case": self.case, "c": self.c, "alpha": model.alpha,
                "b": model.b, "u_minus": self.u_minus, "u_plus": self.u_plus,
                "L_minus": self.L_minus, "L_plus": self.L_plus,
                "x_edge": self.x_edge, "residual_max": self.residual_max}


@dataclass
class DecayReport:
    side: str               # "+inf" or "-inf"
    law: str                # "exponential" or "algebraic"
    fitted: float
    predicted: float
    rel_error: float
    window: tuple
    n_points: int
    conclusive: bool
    # what the linearization of the profile ODE gives for this end
    generic_law: str = None
    generic_predicted: float = None
    generic_fitted: float = None

    @property
    def generic_rel_error(self):
        if self.generic_predicted is None:
            return None
        return abs(self.generic_fitted - self.generic_predicted) / abs(self.generic_predicted)


# ---------------------------------------------------------------------------
# helpers

def _shifted(p, u0):
    """p(u0 + s) as a polynomial in s."""
    return p(Polynomial([u0, 1.0]))


def _shifted_f(model, u0):
    """f(u0 + s) in s; the constant is dropped when u0 is a zero of f,
    since its rounded value would swamp f at tiny s."""
    fs = _shifted(model.fp, u0)
    if abs(fs.coef[0]) <= 1e-13 * max(1.0, np.max(np.abs(fs.coef))):
        fs.coef[0] = 0.0
    return fs


def _grid(L_minus, L_plus, N):
    if N < 3:
        raise ValueError("grid needs at least 3 points")
    return np.linspace(-L_minus, L_plus, N)


def _phi_xx(model, c, phi, phi_x):
    # from the profile equation; D > 0 on every grid we build
    D = model.D(phi)
    return -(c * phi_x + model.f(phi) + model.D(phi, 1) * phi_x ** 2) / D


def _phi_xx_dev(model, c, u0, s, v):
    """Same as _phi_xx with phi = u0 + s, using shifted polynomials."""
    Ds = _shifted(model.Dp, u0)
    fs = _shifted_f(model, u0)
    return -(c * v + fs(s) + Ds.deriv()(s) * v ** 2) / Ds(s)


class NoMonotoneFront(RuntimeError):
    """The shooting trajectory leaves the strip between the end states."""


def _ivp(fun, t0, t1, y0, **kw):
    sol = solve_ivp(fun, (t0, t1), y0, method="DOP853", rtol=RTOL,
                    atol=kw.pop("atol", 1e-30), dense_output=True, **kw)
    if sol.status < 0:
        raise RuntimeError(f"integration failed: {sol.message}")
    return sol


def manifold_series(model, c, u0, g1, order=SERIES_ORDER):
    """Taylor coefficients of an invariant curve v = g(s), s = phi - u0.

    Solves D g' g + D' g^2 + c g + f = 0 order by order, given the
    linear coefficient g1.  At u0 = 0 (D(0) = 0) this is the center
    manifold; at a saddle it is the unstable manifold when g1 is the
    positive root.
    """
    Ds = _shifted(model.Dp, u0)
    dDs = Ds.deriv()
    fs = _shifted_f(model, u0)
    D0 = Ds.coef[0]
    g = np.zeros(order + 1)
    g[1] = g1
    for k in range(2, order + 1):
        G = Polynomial(g[:k])
        E = Ds * G.deriv() * G + dDs * G * G + c * G + fs
        Ek = E.coef[k] if E.coef.size > k else 0.0
        g[k] = -Ek / (D0 * g1 * (k + 1) + c)
    return Polynomial(g)


def _switch_point(g, direction, cap=1e-2, tol=1e-16):
    """Largest |s| <= cap at which the last series term is negligible."""
    s = cap
    last = g.coef[-1]
    while s > 1e-8:
        val = g(direction * s)
        if abs(last) * s ** (g.degree()) <= tol * abs(val):
            return direction * s
        s *= 0.5
    return direction * s


def _slow_rate_alpha(model, c):
    al = model.alpha
    Da, fa = model.D(al), model.f(al, 1)
    return (c - np.sqrt(c * c - 4 * Da * fa)) / (2 * Da)


def _saddle_rate(model, c):
    D1, f1 = model.D(1.0), model.f(1.0, 1)
    return (-c + np.sqrt(c * c - 4 * D1 * f1)) / (2 * D1)


def _x_rhs(model, c, u0):
    Ds = _shifted(model.Dp, u0)
    dDs = Ds.deriv()
    fs = _shifted_f(model, u0)

    def rhs(x, y):
        s, v = y
        return [v, -(c * v + dDs(s) * v * v + fs(s)) / Ds(s)]
    return rhs


def crosses_alpha(model, case, c):
    """True when the branch leaving the left end state passes alpha.

    The branch is launched on its invariant manifold and followed until
    it is within 1e-2 of alpha, then continued in deviation variables
    about alpha.  Close to alpha it is a combination A e_slow + B e_fast
    of the node's eigenvectors; the front is monotone when A has the sign
    of phi - alpha, so the decision does not rest on a late crossing that
    rounding could fake.
    """
    case = canonical_case(case)
    u0 = 0.0 if case == "Nd" else 1.0
    sgn = 1.0 if case == "Nd" else -1.0
    g1 = -model.f(0.0, 1) / c if case == "Nd" else _saddle_rate(model, c)
    g = manifold_series(model, c, u0, g1)
    s_sw = _switch_point(g, sgn)
    al = model.alpha
    near = 1e-2 * abs(al - u0)

    def close(x, y):
        return abs(y[0] + u0 - al) - near
    close.terminal = True

    def turn(x, y):
        return y[1]
    turn.terminal = True
    sol = solve_ivp(_x_rhs(model, c, u0), (0.0, 1e4), [s_sw, g(s_sw)],
                    method="DOP853", rtol=RTOL, atol=1e-15, events=(close, turn))
    if not sol.t_events[0].size:
        return True                       # turned back before reaching alpha
    y = sol.y_events[0][0]
    d0 = y[0] + u0 - al

    def cross(x, y):
        return y[0]
    cross.terminal = True

    def tiny(x, y):
        return abs(y[0]) - 1e-10 * near
    tiny.terminal = True
    a1 = _slow_rate_alpha(model, c)
    sol = solve_ivp(_x_rhs(model, c, al), (0.0, 1e4), [d0, y[1]], method="DOP853",
                    rtol=RTOL, atol=1e-30, events=(cross, tiny))
    if sol.t_events[0].size:
        return True
    s_end, v_end = sol.y[:, -1]
    Da = model.D(al)
    a2 = (c + np.sqrt(c * c - 4 * Da * model.f(al, 1))) / (2 * Da)
    A = (v_end + a2 * s_end) / (a2 - a1)
    return bool(np.sign(A) != np.sign(d0))


def minimal_speed(model, case="Nn", tol=1e-8):
    """Smallest c > cbar(alpha) with a monotone front, by bisection.

    Returns cbar itself when fronts exist right above it.
    """
    cbar = threshold_speed(model)
    lo = cbar + SPEED_MARGIN
    if not crosses_alpha(model, case, lo):
        return float(cbar)
    hi = 2.0 * cbar
    while crosses_alpha(model, case, hi):
        lo, hi = hi, 2.0 * hi
        if hi > 1e3 * cbar:
            raise RuntimeError("no monotone front found below 1000 cbar")
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if crosses_alpha(model, case, mid):
            lo = mid
        else:
            hi = mid
    return float(hi)


# ---------------------------------------------------------------------------
# stationary fronts

def solve_stationary_front(model, direction="decreasing", grid=None, delta=DELTA):
    """Stationary front on the zero level set of H.

    The decreasing front is computed; the increasing one is its mirror
    image.  On the degenerate side w = sqrt(phi) obeys a regular ODE, so
    the profile is followed into the boundary layer phi = delta, where
    the grid ends.
    """
    grid = grid or GridConfig()
    if direction in ("increasing", "inc", "sN-increasing", "sN-inc"):
        inc = True
    elif direction in ("decreasing", "dec", "sN-decreasing", "sN-dec"):
        inc = False
    else:
        raise ValueError(f"direction must be increasing or decreasing, got {direction!r}")
    D1 = script_D(model, 1.0)
    if abs(D1) > 1e-10:
        raise ValueError(f"model is not stationary: script_D(1) = {D1:.3e}")

    calD = (model.Dp * model.fp).integ(lbnd=0.0)
    # -script_D(phi) = phi^3 R(phi): D f vanishes to second order at 0
    R = Polynomial(-calD.coef[3:]) if calD.coef.size > 3 else Polynomial([0.0])
    E = Polynomial(model.D_coef[1:])          # D(phi) = phi E(phi)
    # near phi = 1, -script_D = int_{1-s}^1 D f = s^2 Q(s) once script_D(1)
    # is dropped (it is below 1e-10 by the check above)
    Q = _tail_quotient(model)
    D_of_s = _shifted(model.Dp, 1.0)(Polynomial([0.0, -1.0]))  # D(1 - s)

    phase = 0.5 if grid.phase is None else grid.phase
    if not 0 < phase < 1:
        raise ValueError("phase value must lie in (0, 1)")

    def rhs_w(x, y):
        w = y[0]
        ph = w * w
        Rv = R(ph)
        if Rv < 0:
            raise RuntimeError("-script_D < 0: monotone branch lost")
        return [-np.sqrt(2.0 * Rv) / (2.0 * E(ph))]

    def hit_delta(x, y):
        return y[0] - np.sqrt(delta)
    hit_delta.terminal = True
    hit_delta.direction = -1

    right = _ivp(rhs_w, 0.0, 1e3, [np.sqrt(phase)], events=hit_delta, atol=1e-16)
    if not right.t_events[0].size:
        raise RuntimeError("degenerate edge not reached")
    x_delta = float(right.t_events[0][0])
    # distance from the delta layer to phi = 0 on the same regular ODE
    edge = _ivp(rhs_w, x_delta, x_delta + 1.0, [np.sqrt(delta)],
                events=lambda x, y: y[0], atol=1e-18)
    x_edge = float(edge.t_events[0][0]) if edge.t_events[0].size else None

    eta = np.sqrt(-model.f(1.0, 1) / model.D(1.0))
    L_minus = grid.L_minus if grid.L_minus is not None else 30.0 / eta
    L_plus = x_delta if grid.L_plus is None else min(grid.L_plus, x_delta)

    def rhs_left(x, y):
        s = np.exp(y[0])
        return [np.sqrt(2.0 * max(Q(s), 0.0)) / D_of_s(s)]

    s0 = 1.0 - phase
    left = _ivp(rhs_left, 0.0, -L_minus * 1.001, [np.log(s0)], atol=1e-13)

    x = _grid(L_minus, L_plus, grid.N)
    neg = x < 0
    xl, xr = x[neg], x[~neg]
    s = np.exp(left.sol(xl)[0])
    w = right.sol(xr)[0]
    ph_r = w * w
    phi = np.concatenate([1.0 - s, ph_r])
    px_l = -s * np.sqrt(2.0 * np.maximum(Q(s), 0.0)) / D_of_s(s)
    px_r = -w * np.sqrt(2.0 * np.maximum(R(ph_r), 0.0)) / E(ph_r)
    phi_x = np.concatenate([px_l, px_r])
    pxx = np.concatenate([_phi_xx_dev(model, 0.0, 1.0, -s, px_l),
                          _phi_xx(model, 0.0, ph_r, px_r)])
    dev = np.concatenate([-s, ph_r])
    front = FrontProfile("sN-decreasing", 0.0, x, phi, phi_x, pxx, 1.0, 0.0,
                         L_minus, L_plus, dev=dev, alpha=model.alpha,
                         x_edge=x_edge)
    if inc:
        front = _mirror(front)
    return _finish(front, model)


def _tail_quotient(model):
    """Q(s) with int_{1-s}^1 D f du = s^2 Q(s)."""
    T = script_D_tail_poly(model)
    return Polynomial(T.coef[2:]) if T.coef.size > 2 else Polynomial([0.0])


def _mirror(fr):
    x_edge = None if fr.x_edge is None else -fr.x_edge
    return FrontProfile("sN-increasing", fr.c, -fr.x[::-1], fr.phi[::-1],
                        -fr.phi_x[::-1], fr.phi_xx[::-1], fr.u_plus, fr.u_minus,
                        fr.L_plus, fr.L_minus, dev=fr.dev[::-1], alpha=fr.alpha,
                        x_edge=x_edge)


def _finish(front, model):
    res = profile_residual(front, model)
    object.__setattr__(front, "residual_max", float(np.max(np.abs(res))))
    if front.decreasing:
        ok = np.all(front.phi_x < 0)
    else:
        ok = np.all(front.phi_x > 0)
    if not ok:
        raise RuntimeError("computed front is not strictly monotone on the grid")
    return front


# ---------------------------------------------------------------------------
# traveling fronts

def solve_traveling_front(model, case, c, grid=None):
    """Nd or Nn front at speed c > cbar(alpha)."""
    case = canonical_case(case)
    if case not in ("Nd", "Nn"):
        raise ValueError("traveling fronts are Nd or Nn")
    grid = grid or GridConfig()
    c = float(c)
    cbar = threshold_speed(model)
    if not c - cbar >= SPEED_MARGIN:
        raise ValueError(f"c = {c} must exceed cbar(alpha) = {cbar:.4f} "
                         f"by at least {SPEED_MARGIN}")
    al = model.alpha
    u_minus, u_plus = end_states(model, case)
    phase = 0.5 * (u_minus + u_plus) if grid.phase is None else grid.phase
    if not min(u_minus, u_plus) < phase < max(u_minus, u_plus):
        raise ValueError("phase value must lie strictly between the end states")
    sgn = 1.0 if u_plus > u_minus else -1.0

    if case == "Nd":
        g1 = -model.f(0.0, 1) / c
        left_rate = g1
    else:
        g1 = _saddle_rate(model, c)
        left_rate = g1
    right_rate = _slow_rate_alpha(model, c)
    L_minus = grid.L_minus if grid.L_minus is not None else 30.0 / left_rate
    L_plus = grid.L_plus if grid.L_plus is not None else 30.0 / right_rate

    g = manifold_series(model, c, u_minus, g1)
    dg = g.deriv()
    s_sw = _switch_point(g, sgn)

    # x-system in deviation variables y = phi - u0
    def xsys(u0):
        Ds = _shifted(model.Dp, u0)
        dDs = Ds.deriv()
        fs = _shifted_f(model, u0)

        def rhs(x, y):
            s, v = y
            return [v, -(c * v + dDs(s) * v * v + fs(s)) / Ds(s)]
        return rhs

    def hit_phase(x, y):
        return y[0] + u_minus - phase
    hit_phase.terminal = True

    # leg B: switch point -> phase point
    legB = _ivp(xsys(u_minus), 0.0, 1e4, [s_sw, g(s_sw)], events=hit_phase,
                atol=1e-15)
    if not legB.t_events[0].size:
        raise RuntimeError("trajectory did not reach the phase point")
    x_ph = float(legB.t_events[0][0])
    yph = legB.y_events[0][0]
    lo, hi = min(u_minus, u_plus), max(u_minus, u_plus)
    if np.any(legB.y[0] + u_minus < lo - DELTA) or np.any(legB.y[0] + u_minus > hi + DELTA):
        raise NoMonotoneFront(f"no monotone {case} front at c = {c}: the trajectory "
                              "leaves the strip between the end states")
    x_sw = -x_ph

    # leg C: phase point -> +inf, deviation from u_plus
    legC = _ivp(xsys(u_plus), 0.0, L_plus * 1.001, [yph[0] + u_minus - u_plus, yph[1]],
                atol=1e-30)
    phC = legC.y[0] + u_plus
    if np.any(phC < lo - DELTA) or np.any(phC > hi + DELTA):
        raise NoMonotoneFront(f"no monotone {case} front at c = {c}: the trajectory "
                              "leaves the strip between the end states")

    # leg A: on the manifold, log|s| as a function of x, backwards
    def rhsA(x, y):
        s = sgn * np.exp(y[0])
        return [g(s) / s]
    legA = None
    if -L_minus < x_sw:
        legA = _ivp(rhsA, x_sw, -L_minus * 1.001, [np.log(abs(s_sw))], atol=1e-13)

    x = _grid(L_minus, L_plus, grid.N)
    mA = x < x_sw
    mC = x >= 0
    mB = ~mA & ~mC
    dev = np.empty_like(x)
    phi_x = np.empty_like(x)
    phi_xx = np.empty_like(x)
    if mA.any():
        s = sgn * np.exp(legA.sol(x[mA])[0])
        dev[mA] = s
        phi_x[mA] = g(s)
        phi_xx[mA] = dg(s) * g(s)
    yB = legB.sol(x[mB] - x_sw)
    dev[mB] = yB[0]
    phi_x[mB] = yB[1]
    phi_xx[mB] = _phi_xx_dev(model, c, u_minus, yB[0], yB[1])
    yC = legC.sol(x[mC])
    phi = np.empty_like(x)
    phi[~mC] = u_minus + dev[~mC]
    phi[mC] = u_plus + yC[0]
    dev[mC] = yC[0]
    phi_x[mC] = yC[1]
    phi_xx[mC] = _phi_xx_dev(model, c, u_plus, yC[0], yC[1])

    front = FrontProfile(case, c, x, phi, phi_x, phi_xx, u_minus, u_plus,
                         L_minus, L_plus, dev=dev, alpha=al)
    return _finish(front, model)


def solve_front(model, case, c=None, grid=None):
    case = canonical_case(case)
    if case.startswith("sN"):
        if c not in (None, 0, 0.0):
            raise ValueError("stationary fronts have c = 0")
        return solve_stationary_front(model, case, grid)
    return solve_traveling_front(model, case, c, grid)


# ---------------------------------------------------------------------------
# checks

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(5)


def profile_residual(front, model):
    """Cell-averaged residual of the profile equation.

    Over each cell [x_i, x_{i+1}] the equation integrates to
    [D(phi) phi_x] + c [phi] + int f(phi) dx = 0.  The integral uses
    the quintic Hermite interpolant of (phi, phi_x, phi_xx) and 5-point
    Gauss quadrature; the result is divided by the cell width.
    """
    x, phi, px = front.x, front.phi, front.phi_x
    h = np.diff(x)
    flux = model.D(phi) * px
    bp = BPoly.from_derivatives(x, np.column_stack([phi, px, front.phi_xx]))
    mid = 0.5 * (x[1:] + x[:-1])
    quad = np.zeros_like(h)
    for t, wgt in zip(_GL_NODES, _GL_WEIGHTS):
        quad += wgt * model.f(bp(mid + 0.5 * h * t))
    quad *= 0.5 * h
    return (np.diff(flux) + front.c * np.diff(phi) + quad) / h


def _fit_window(x, side):
    """Indices of the tail window: last 30% of a side, dropping the final 5%."""
    if side == "+inf":
        L = x[-1]
        m = (x >= 0.70 * L) & (x <= 0.95 * L)
    else:
        L = -x[0]
        m = (x <= -0.70 * L) & (x >= -0.95 * L)
    return np.flatnonzero(m)


def verify_decay(front, model):
    """Fit the tail laws on both sides and compare with the predicted ones."""
    c = front.c
    al = model.alpha
    reports = []
    for side in ("-inf", "+inf"):
        idx = _fit_window(front.x, side)
        xs = front.x[idx]
        d = np.abs(front.dev[idx])
        u_end = front.u_minus if side == "-inf" else front.u_plus
        law, gen_law = "exponential", "exponential"
        if front.case.startswith("sN"):
            if u_end == 1.0:
                pred = np.sqrt(-model.f(1.0, 1) / model.D(1.0))
                gen = pred
            else:
                law, gen_law = "algebraic", "finite-edge"
                pred, gen = -2.0, 2.0
        elif u_end == 0.0:                       # Nd degenerate end
            pred = gen = abs(model.f(0.0, 1)) / c
        elif u_end == al:
            Da = model.D(al)
            pred = (c + np.sqrt(c * c - 4 * Da * model.f(al, 1))) / (2 * Da)
            gen = _slow_rate_alpha(model, c)
        else:                                    # Nn saddle end
            D1 = model.D(1.0)
            pred = (c + np.sqrt(c * c - 4 * D1 * model.f(1.0, 1))) / (2 * D1)
            gen = _saddle_rate(model, c)

        conclusive = idx.size >= 20 and np.all(d > 0)
        if idx.size < 2 or not np.all(d > 0):
            fitted = gfit = np.nan
        elif law == "exponential":
            fitted = abs(np.polyfit(xs, np.log(d), 1)[0])
            gfit = fitted
        else:
            fitted = np.polyfit(np.log(np.abs(xs)), np.log(d), 1)[0]
            # distance to the sharp edge
            gfit = np.polyfit(np.log(np.abs(front.x_edge - xs)), np.log(d), 1)[0]
        reports.append(DecayReport(
            side=side, law=law, fitted=float(fitted), predicted=float(pred),
            rel_error=float(abs(fitted - pred) / abs(pred)),
            window=(float(xs[0]), float(xs[-1])) if xs.size else (np.nan, np.nan),
            n_points=int(idx.size), conclusive=bool(conclusive),
            generic_law=gen_law, generic_predicted=float(gen),
            generic_fitted=float(gfit)))
    return reports


def coefficient_bound(front, model):
    """max |D(phi) phi_xx / phi_x| over the grid."""
    if np.any(front.phi_x == 0):
        raise ValueError("phi_x vanishes on the grid; front is not monotone")
    return float(np.max(np.abs(model.D(front.phi) * front.phi_xx / front.phi_x)))


def coefficient_tails(front, model):
    """End values of D(phi) phi_xx / phi_x next to their limits.

    On an exponential side phi - u ~ C e^{-r|x|} gives phi_xx/phi_x -> -r
    at +inf and +r at -inf, so the limit is -+D(u) r with the rate the
    front exhibits; on a degenerate side it is 0.
    """
    c, al = front.c, model.alpha
    q = model.D(front.phi) * front.phi_xx / front.phi_x
    out = {}
    for side, k, u, sgn in (("-inf", 0, front.u_minus, 1.0),
                            ("+inf", -1, front.u_plus, -1.0)):
        if u == 0.0:
            lim = 0.0
        elif front.case.startswith("sN"):
            lim = sgn * model.D(u) * np.sqrt(-model.f(1.0, 1) / model.D(1.0))
        elif u == al:
            lim = sgn * model.D(u) * _slow_rate_alpha(model, c)
        else:
            lim = sgn * model.D(u) * _saddle_rate(model, c)
        out[side] = {"value": float(q[k]), "limit": float(lim)}
    return out

