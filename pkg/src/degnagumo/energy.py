"""Basic energy estimate on computed eigenpairs.

With

    theta(x) = -(c/2) int_{x0}^x dy / D(phi) + a (x - x0),
    w = e^{-theta} u,   psi = e^{-theta} e^{ax} phi_x,

an eigenpair (lam, u) of the conjugated operator satisfies

    lam <D(phi) w, w> = -|| D(phi) psi (w/psi)_x ||^2

whenever the boundary terms vanish.  Everything below is evaluated on a
window where e^{+-theta} is representable and D(phi) is not degenerate.
The quotient is never differentiated: since
psi_x/psi = c/(2D) + phi_xx/phi_x,

    D psi (w/psi)_x = D w_x - (c/2) w - D (phi_xx/phi_x) w.
"""
from dataclasses import dataclass

import numpy as np
from .eigensolve import integrate_from, trapz_weights

__all__ = ["EnergyCertificate", "TransformedPair", "theta", "theta_x",
           "transform_pair", "energy_certificate", "sturm_form_residual",
           "G_coefficient"]

THETA_MAX = 600.0
D_MIN = 1e-12
MIN_WINDOW = 50
CERT_RESIDUAL = 1e-3
EQUALITY_TOL = 1e-10


def _x0(front):
    return front.x[front.phase_index]


def theta(front, model, c=None, a=0.0, x=None):
    """theta on the front's grid, or interpolated at x; zero at the phase point."""
    c = front.c if c is None else c
    xg = front.x
    k0 = front.phase_index
    if c == 0:
        th = a * (xg - xg[k0])
    else:
        D = model.D(front.phi)
        if np.any(D < 1e-300):
            raise FloatingPointError("D(phi) underflows on the grid; restrict the window")
        I = integrate_from(1.0 / D, xg, k0)
        th = -0.5 * c * I + a * (xg - xg[k0])
    if x is None:
        return th
    return np.interp(x, xg, th)


def theta_x(front, model, a=0.0):
    return a - 0.5 * front.c / model.D(front.phi)


@dataclass
class TransformedPair:
    x: np.ndarray
    w: np.ndarray
    w_x: np.ndarray
    psi: np.ndarray
    theta: np.ndarray
    window: np.ndarray        # boolean mask on the front grid
    neglected_mass: float     # share of ||u||^2 outside the window
    log_scale: tuple = (0.0, 0.0)   # w and psi were divided by e^{these}

    @property
    def bounds(self):
        xs = self.x[self.window]
        return (float(xs[0]), float(xs[-1]))


def _window(front, model, th):
    ok = (np.abs(th) <= THETA_MAX) & (model.D(front.phi) >= D_MIN)
    k0 = front.phase_index
    if not ok[k0]:
        return np.zeros_like(ok)
    # contiguous run through the phase point
    bad = np.flatnonzero(~ok)
    lo = bad[bad < k0].max() + 1 if np.any(bad < k0) else 0
    hi = bad[bad > k0].min() if np.any(bad > k0) else ok.size
    m = np.zeros_like(ok)
    m[lo:hi] = True
    return m


def _scaled_exp(logmag, phase, mask):
    out = np.zeros(logmag.shape, dtype=phase.dtype)
    top = np.max(logmag[mask])
    with np.errstate(under="ignore"):
        out[mask] = phase[mask] * np.exp(logmag[mask] - top)
    return out, top


def _derivative(x, u):
    return np.gradient(u, x, edge_order=2)


def transform_pair(front, model, a, pair):
    """(w, psi) on the window; both rescaled so their maxima are 1."""
    th = theta(front, model, front.c, a)
    m = _window(front, model, th)
    x = front.x
    u = np.asarray(pair.u)
    if m.sum() < 2:
        raise FloatingPointError("empty window: e^theta not representable "
                                 "near the phase point")
    au = np.abs(u)
    with np.errstate(divide="ignore"):
        lu = np.log(au)
    ph = np.where(au > 0, u / np.where(au > 0, au, 1.0), 0.0)
    w, top = _scaled_exp(-th + lu, ph, m & (au > 0))
    ux = pair.du if pair.du is not None else _derivative(x, u)
    # w_x = e^{-theta} (u_x - theta_x u) with the same scaling as w
    tx = theta_x(front, model, a)
    with np.errstate(under="ignore", over="ignore", invalid="ignore"):
        wx = np.where(m, np.exp(np.clip(-th - top, -745, 700)) * (ux - tx * u), 0.0)
    lpsi = -th + a * x + np.log(np.abs(front.phi_x))
    psi, top_psi = _scaled_exp(lpsi, np.sign(front.phi_x), m)
    tot = np.sum(au ** 2 * trapz_weights(x))
    out = np.sum((au ** 2 * trapz_weights(x))[~m])
    return TransformedPair(x, w, wx, psi, th, m, float(out / tot) if tot > 0 else 0.0,
                           (float(top), float(top_psi)))


@dataclass
class EnergyCertificate:
    lam: complex
    lhs: complex
    rhs: float
    rhs_direct: float
    residual: float
    verdict: str
    window: tuple
    n_window: int
    neglected_mass: float
    conclusive: bool
    rayleigh: float = None    # rhs / <D w, w>, never positive

    @property
    def certified(self):
        return self.conclusive and not self.verdict.startswith("inconclusive")

    def to_dict(self):
        return {"lambda_re": float(self.lam.real), "lambda_im": float(self.lam.imag),
                "lhs_re": float(self.lhs.real), "lhs_im": float(self.lhs.imag),
                "rhs": float(self.rhs), "residual": float(self.residual),
                "window": [float(v) for v in self.window],
                "neglected_mass": float(self.neglected_mass),
                "rayleigh": float(self.rayleigh), "verdict": self.verdict}


def energy_certificate(front, model, a, pair):
    tp = transform_pair(front, model, a, pair)
    m = tp.window
    x = front.x[m]
    wt = trapz_weights(x)
    D = model.D(front.phi[m])
    w, wx = tp.w[m], tp.w_x[m]
    q = front.phi_xx[m] / front.phi_x[m]
    flux = D * wx - 0.5 * front.c * w - D * q * w
    rhs = -float(np.sum(np.abs(flux) ** 2 * wt))
    lam = complex(pair.lam)
    mass = float(np.sum(D * np.abs(w) ** 2 * wt))
    lhs = lam * mass
    # same quantity through the quotient, theta cancels in w/psi
    ratio = _quotient(front, a, np.asarray(pair.u), tp)[m]
    rx = _derivative(x, ratio)
    rhs_direct = -float(np.sum(np.abs(D * tp.psi[m] * rx) ** 2 * wt))
    scale = max(abs(lhs), abs(rhs), 1e-300)
    res = abs(lhs - rhs) / scale
    n = int(m.sum())
    conclusive = n >= MIN_WINDOW
    if not conclusive:
        verdict = "inconclusive: window too short"
    elif abs(lhs) + abs(rhs) <= EQUALITY_TOL * mass:
        verdict = "equality case: lambda = 0 with w proportional to psi"
    elif res <= CERT_RESIDUAL:
        verdict = "Re lambda <= 0 certified"
    else:
        verdict = "inconclusive: identity residual above tolerance"
    return EnergyCertificate(lam, lhs, rhs, rhs_direct, float(res), verdict,
                             tp.bounds, n, tp.neglected_mass, conclusive,
                             rhs / mass if mass > 0 else np.nan)


def _quotient(front, a, u, tp):
    # w/psi = u / (e^{ax} phi_x), theta cancels; same scaling as tp.w / tp.psi
    au = np.abs(u)
    with np.errstate(divide="ignore"):
        lg = np.log(au) - a * front.x - np.log(np.abs(front.phi_x))
    lg += tp.log_scale[1] - tp.log_scale[0]
    ph = np.where(au > 0, u / np.where(au > 0, au, 1.0), 0.0) * np.sign(front.phi_x)
    with np.errstate(under="ignore", over="ignore"):
        return np.where(au > 0, ph * np.exp(np.minimum(lg, 700.0)), 0.0)


def G_coefficient(front, model, x=None):
    """G = -(c/2) D_x/D - c^2/(4D) + D_xx + f'(phi)."""
    phi, px, pxx, c = front.phi, front.phi_x, front.phi_xx, front.c
    D = model.D(phi)
    Dx = model.D(phi, 1) * px
    Dxx = model.D(phi, 2) * px ** 2 + model.D(phi, 1) * pxx
    G = np.full(phi.shape, np.nan)
    ok = D > D_MIN
    if x is not None:
        k = np.searchsorted(front.x, np.atleast_1d(x))
        k = np.clip(k, 0, front.N - 1)
        if not np.all(ok[k]):
            raise ValueError("G is not defined where D(phi) <= 1e-12")
    G[ok] = (-0.5 * c * Dx[ok] / D[ok] - c * c / (4 * D[ok]) + Dxx[ok]
             + model.f(phi[ok], 1))
    if x is None:
        return G
    return np.interp(x, front.x, G)


def sturm_form_residual(front, model, a, pair, u_xx=None):
    """||(D^2 w_x)_x + D G w - lam D w|| / ||D w|| on the window.

    Uses (D^2 psi_x)_x = -D G psi.  Derivatives of u come from pair.du and
    u_xx when given, otherwise from second-order finite differences.
    """
    tp = transform_pair(front, model, a, pair)
    m = tp.window & (np.arange(front.N) > 0) & (np.arange(front.N) < front.N - 1)
    x = front.x
    u = np.asarray(pair.u)
    ux = pair.du if pair.du is not None else _derivative(x, u)
    if u_xx is None:
        u_xx = pair.d2u if pair.d2u is not None else _second_difference(x, u)
    uxx = u_xx
    D = model.D(front.phi)
    Dx = model.D(front.phi, 1) * front.phi_x
    tx = theta_x(front, model, a)
    txx = 0.5 * front.c * Dx / D ** 2
    # w, w_x, w_xx share the factor e^{-theta - top}
    with np.errstate(divide="ignore", invalid="ignore"):
        fac = np.where(tp.w != 0, tp.w / u, 0.0)
    fac = np.where(m, fac, 0.0)
    w = tp.w
    wx = fac * (ux - tx * u)
    wxx = fac * (uxx - 2 * tx * ux + (tx * tx - txx) * u)
    G = G_coefficient(front, model)
    r = 2 * D * Dx * wx + D * D * wxx + D * G * w - pair.lam * D * w
    wt = trapz_weights(x[m])
    num = np.sqrt(np.sum(np.abs(r[m]) ** 2 * wt))
    den = np.sqrt(np.sum(np.abs(D[m] * w[m]) ** 2 * wt))
    return float(num / den)


def _second_difference(x, u):
    out = np.zeros_like(u)
    hm = x[1:-1] - x[:-2]
    hp = x[2:] - x[1:-1]
    out[1:-1] = 2 * (hm * u[2:] - (hm + hp) * u[1:-1] + hp * u[:-2]) / (hm * hp * (hm + hp))
    return out
