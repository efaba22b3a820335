"""Point spectra of the conjugated linearization on a truncated domain.

The operator is

    L^eps_a u = b2 u_xx + b1 u_x + b0 u,
    b2 = D(phi) + eps,
    b1 = 2 b2_x + c - 2 a b2,
    b0 = a^2 b2 - 2 a b2_x - a c + b2_xx + f'(phi),

discretized with three-point stencils in the conservative grouping
(b2 u_x)_x + (b1 - b2_x) u_x + b0 u and homogeneous Dirichlet ends.  The
matrix is tridiagonal; when its off-diagonal products are positive it
is diagonally similar to a symmetric one, which is what we diagonalize.
"""
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.integrate import cumulative_trapezoid
from scipy.linalg import eigh_tridiagonal
from scipy.sparse.linalg import eigs, splu

__all__ = ["DiscretizedOperator", "EigenPair", "Window", "build_operator",
           "assemble", "compute_spectrum", "translation_eigenpair_check",
           "translation_pair", "liouville_transform", "LiouvilleResult",
           "sturm_check", "count_sign_changes", "regularization_sweep",
           "trapz_weights", "integrate_from"]

MIN_POINTS = 200
CERT_TOL = 1e-8
FLAG_MASS = 0.01
FLAG_REGION = 0.10
STURM_OUTER = 0.05


def integrate_from(g, x, k0):
    """Cumulative trapezoid of g anchored at x[k0], integrated outward.

    Anchoring by subtraction would let a huge integrand at one end (1/D
    near a degenerate state) swamp the increments everywhere else.
    """
    I = np.zeros(np.shape(x), dtype=np.result_type(g, float))
    I[k0:] = cumulative_trapezoid(g[k0:], x[k0:], initial=0.0)
    I[:k0 + 1] = -cumulative_trapezoid(g[k0::-1], -x[k0::-1], initial=0.0)[::-1]
    return I


def trapz_weights(x):
    w = np.zeros_like(x)
    h = np.diff(x)
    w[:-1] += 0.5 * h
    w[1:] += 0.5 * h
    return w


@dataclass
class DiscretizedOperator:
    x: np.ndarray
    b2: np.ndarray
    b1: np.ndarray
    b0: np.ndarray
    db2: np.ndarray
    d2b2: np.ndarray
    a: float = 0.0
    eps: float = 0.0
    c: float = 0.0
    lower: np.ndarray = field(default=None, repr=False)
    diag: np.ndarray = field(default=None, repr=False)
    upper: np.ndarray = field(default=None, repr=False)
    phase_index: int = None
    bc: str = "dirichlet"
    # which ends are artificial cuts; the sharp edge of a stationary
    # front is the end of its support, not a truncation
    truncated: tuple = (True, True)

    @property
    def n(self):
        """Number of unknowns (interior nodes)."""
        return self.diag.size

    @property
    def matrix(self):
        return sp.diags([self.lower[1:], self.diag, self.upper[:-1]], [-1, 0, 1],
                        format="csc")

    def apply(self, u):
        """L u at the interior nodes; u is given on the full grid."""
        u = np.asarray(u)
        return (self.lower * u[:-2] + self.diag * u[1:-1] + self.upper * u[2:])


def assemble(x, b2, b1, b0, db2):
    """Tridiagonal stencil for (b2 u_x)_x + (b1 - b2_x) u_x + b0 u."""
    hm = x[1:-1] - x[:-2]
    hp = x[2:] - x[1:-1]
    hs = hm + hp
    b2m = 0.5 * (b2[1:-1] + b2[:-2])
    b2p = 0.5 * (b2[1:-1] + b2[2:])
    beta = (b1 - db2)[1:-1]
    lo = 2 * b2m / (hm * hs) - beta * hp / (hm * hs)
    up = 2 * b2p / (hp * hs) + beta * hm / (hp * hs)
    di = -2 * b2m / (hm * hs) - 2 * b2p / (hp * hs) + beta * (hp - hm) / (hm * hp) + b0[1:-1]
    return lo, di, up


def build_operator(front, model, a=0.0, eps=0.0):
    if front.N < MIN_POINTS:
        raise ValueError(f"grid has {front.N} points; at least {MIN_POINTS} required")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    phi, px, pxx = front.phi, front.phi_x, front.phi_xx
    c = front.c
    Dx = model.D(phi, 1) * px
    Dxx = model.D(phi, 2) * px * px + model.D(phi, 1) * pxx
    b2 = model.D(phi) + eps
    b1 = 2 * Dx + c - 2 * a * b2
    b0 = a * a * b2 - 2 * a * Dx - a * c + Dxx + model.f(phi, 1)
    lo, di, up = assemble(front.x, b2, b1, b0, Dx)
    return DiscretizedOperator(front.x, b2, b1, b0, Dx, Dxx, float(a), float(eps),
                               float(c), lo, di, up, front.phase_index,
                               truncated=_truncated_ends(front))


def _truncated_ends(front):
    if front.x_edge is None:
        return (True, True)
    return (True, False) if front.x_edge > 0 else (False, True)


@dataclass
class Window:
    """Right half-plane Re > re_min and/or disc |lam - center| < radius."""
    re_min: float = None
    center: complex = None
    radius: float = None

    def __call__(self, lam):
        ok = True
        if self.re_min is not None:
            ok = ok and lam.real > self.re_min
        if self.radius is not None:
            ok = ok and abs(lam - (self.center or 0.0)) < self.radius
        return ok


@dataclass
class EigenPair:
    lam: complex
    u: np.ndarray            # full grid, Dirichlet zeros at the ends
    residual: float
    boundary_mass: float
    flagged: bool
    sign_changes: int = None
    x: np.ndarray = field(default=None, repr=False)
    du: np.ndarray = field(default=None, repr=False)   # analytic u_x if known
    d2u: np.ndarray = field(default=None, repr=False)

    @property
    def is_real(self):
        return abs(self.lam.imag) <= 1e-10 * max(1.0, abs(self.lam))

    def to_dict(self):
        return {"re": float(self.lam.real), "im": float(self.lam.imag),
                "residual": float(self.residual),
                "boundary_mass": float(self.boundary_mass),
                "flagged": bool(self.flagged), "sign_changes": self.sign_changes}


def count_sign_changes(x, u, outer=STURM_OUTER, floor=1e-10):
    """Sign changes of u on the grid, ignoring the outer fraction at each end."""
    L = x[-1] - x[0]
    m = (x > x[0] + outer * L) & (x < x[-1] - outer * L)
    v = np.real(u[m])
    big = np.max(np.abs(v)) if v.size else 0.0
    v = v[np.abs(v) > floor * big]
    if v.size < 2:
        return 0
    return int(np.count_nonzero(np.sign(v[1:]) != np.sign(v[:-1])))


def _boundary_mass(x, u, w, ends=(True, True)):
    L = x[-1] - x[0]
    m = np.zeros(x.size, dtype=bool)
    if ends[0]:
        m |= x < x[0] + FLAG_REGION * L
    if ends[1]:
        m |= x > x[-1] - FLAG_REGION * L
    tot = np.sum(np.abs(u) ** 2 * w)
    return float(np.sum(np.abs(u[m]) ** 2 * w[m]) / tot) if tot > 0 else 1.0


def _normalize(u, w, k0):
    u = u / np.sqrt(np.sum(np.abs(u) ** 2 * w))
    ref = u[k0] if abs(u[k0]) > 1e-6 * np.max(np.abs(u)) else u[np.argmax(np.abs(u))]
    return u * (abs(ref) / ref)


def _symmetric_top(op, k):
    lo, di, up = op.lower, op.diag, op.upper
    prod = up[:-1] * lo[1:]
    if not np.all(prod > 0):
        return None
    e = np.sqrt(prod)
    n = di.size
    k = min(k, n)
    vals, vecs = eigh_tridiagonal(di, e, select="i", select_range=(n - k, n - 1))
    # J = S T S^-1 with (s_{i+1}/s_i)^2 = up_i / lo_{i+1}
    logs = np.concatenate([[0.0], np.cumsum(0.5 * np.log(up[:-1] / lo[1:]))])
    out = []
    for j in range(vals.size):
        v = vecs[:, j]
        # entries at rounding level would be blown up by the rescaling;
        # drop them and let inverse iteration refill
        v = np.where(np.abs(v) > 1e-12 * np.max(np.abs(v)), v, 0.0)
        with np.errstate(divide="ignore"):
            lg = np.log(np.abs(v)) - logs
        lg -= np.max(lg)
        out.append((complex(vals[j]), np.sign(v) * np.exp(lg)))
    return out


def _general_top(op, k, sigma):
    T = op.matrix
    k = min(k, op.n - 2)
    # fixed start vector keeps repeated runs bit-identical
    v0 = np.linspace(1.0, 2.0, op.n)
    vals, vecs = eigs(T, k=k, sigma=sigma, which="LM", v0=v0)
    return [(complex(vals[j]), vecs[:, j]) for j in range(vals.size)]


def _polish(T, lam, u, steps=3):
    n = T.shape[0]
    dtype = complex if abs(lam.imag) > 0 else float
    A = (T - (lam.real if dtype is float else lam) * sp.identity(n, format="csc")).astype(dtype)
    try:
        lu = splu(A.tocsc())
    except RuntimeError:
        return u
    v = u.astype(dtype)
    for _ in range(steps):
        y = lu.solve(v)
        if not np.all(np.isfinite(y)):
            break
        v = y / np.linalg.norm(y)
    return v


def compute_spectrum(op, n_eigs=10, window=None, sigma=None, tol=CERT_TOL):
    """Eigenpairs with the largest real parts, sorted by descending Re.

    Every pair carries a residual re-measured by applying the matrix;
    pairs above tol are dropped and reported through `failed`.
    """
    raw = _symmetric_top(op, n_eigs)
    if raw is None:
        if sigma is None:
            sigma = max(1.0, float(np.max(op.b0)) + 1.0)
        raw = _general_top(op, n_eigs, sigma)
    T = op.matrix
    x = op.x
    w = trapz_weights(x)
    pairs = []
    compute_spectrum.failed = []
    for lam, v in raw:
        if window is not None and not window(lam):
            continue
        if lam.imag == 0:
            v = np.real(v)
        v = _polish(T, lam, v)
        res = np.linalg.norm(T @ v - lam * v) / np.linalg.norm(v)
        u = np.zeros(x.size, dtype=v.dtype)
        u[1:-1] = v
        u = _normalize(u, w, op.phase_index)
        bm = _boundary_mass(x, u, w, op.truncated)
        pair = EigenPair(lam, u, float(res), bm, bm > FLAG_MASS, None, x)
        if pair.is_real:
            pair.sign_changes = count_sign_changes(x, u)
        if res > tol:
            compute_spectrum.failed.append(pair)
            continue
        pairs.append(pair)
    pairs.sort(key=lambda p: (-p.lam.real, -p.lam.imag))
    return pairs


compute_spectrum.failed = []


def _phi_xxx(front, model):
    phi, px, pxx, c = front.phi, front.phi_x, front.phi_xx, front.c
    D = model.D(phi)
    num = (c * pxx + model.f(phi, 1) * px + model.D(phi, 2) * px ** 3
           + 3 * model.D(phi, 1) * px * pxx)
    out = np.empty_like(phi)
    ok = D > 1e-12
    out[ok] = -num[ok] / D[ok]
    if not ok.all():
        out[~ok] = np.gradient(pxx, front.x)[~ok]
    return out


def translation_pair(front, model, a=0.0):
    """(lam = 0, e^{ax} phi_x) on the grid, scaled to max modulus 1.

    Returned as an EigenPair whose residual is not from a solver; du holds
    the analytic derivative.
    """
    x = front.x
    ex = a * x
    shift = np.max(ex + np.log(np.abs(front.phi_x)))
    scale = np.exp(ex - shift)
    u = scale * front.phi_x
    du = scale * (front.phi_xx + a * front.phi_x)
    d2u = scale * (_phi_xxx(front, model) + 2 * a * front.phi_xx + a * a * front.phi_x)
    s = np.sign(u[front.phase_index])
    bm = _boundary_mass(x, u, trapz_weights(x), _truncated_ends(front))
    return EigenPair(0j, s * u, np.nan, bm, bm > FLAG_MASS,
                     count_sign_changes(x, u), x, s * du, s * d2u)


def translation_eigenpair_check(front, model, a=0.0, discrete=False, op=None):
    """||L_a (e^{ax} phi_x)|| / ||e^{ax} phi_x|| over the interior nodes.

    By default the operator's coefficient arrays act on analytic
    derivatives of e^{ax} phi_x (phi_xxx from the differentiated profile
    equation), which measures the continuum identity.  With discrete=True
    the assembled matrix is applied instead and the stencil error shows.
    """
    op = op or build_operator(front, model, a, 0.0)
    x = front.x
    ex = a * x
    shift = np.max(ex + np.log(np.abs(front.phi_x)))
    s = np.exp(ex - shift)
    px, pxx = front.phi_x, front.phi_xx
    u = s * px
    w = trapz_weights(x)[1:-1]
    if discrete:
        r = op.apply(u)
    else:
        p3 = _phi_xxx(front, model)
        ux = s * (pxx + a * px)
        uxx = s * (p3 + 2 * a * pxx + a * a * px)
        r = (op.b2 * uxx + op.b1 * ux + op.b0 * u)[1:-1]
    return float(np.sqrt(np.sum(r * r * w) / np.sum(u[1:-1] ** 2 * w)))


@dataclass
class LiouvilleResult:
    op: DiscretizedOperator      # Sturmian operator on the xi grid
    xi: np.ndarray
    scale: np.ndarray            # u = scale * v, scale = b2^{-1/4}
    omega: np.ndarray            # exp(int b1~ dxi), on xi
    omega_bar: np.ndarray        # weight as printed, exponent over b2^{3/4}
    omega_x: np.ndarray          # exp(int (b1 - b2_x)/b2 dx)
    b1_limits: tuple

    def to_v(self, u):
        return np.asarray(u) / self.scale

    def discrete_weight(self):
        """Interior weights W with W_i T_{i,i+1} = W_{i+1} T_{i+1,i}.

        The three-point matrix is exactly symmetric in <u, v>_W = sum W u v;
        W approximates omega dxi to second order.  Scaled to agree with
        omega times the trapezoid weight at the phase point.
        """
        op = self.op
        lw = np.concatenate([[0.0], np.cumsum(np.log(op.upper[:-1] / op.lower[1:]))])
        ref = self.omega[1:-1] * trapz_weights(self.xi)[1:-1]
        k = min(max(op.phase_index - 1, 0), lw.size - 1)
        return np.exp(lw - lw[k]) * ref[k]

    def to_u(self, v):
        return np.asarray(v) * self.scale


def liouville_transform(op, min_b2=1e-10):
    """Sturmian form v_xixi + b1~ v_xi + b0~ v on xi = int b2^{-1/2} dx."""
    b2, b1, b0, db2, d2b2 = op.b2, op.b1, op.b0, op.db2, op.d2b2
    if np.min(b2) <= min_b2:
        raise ValueError(f"min b2 = {np.min(b2):.3e} <= {min_b2}: not uniformly elliptic")
    x = op.x
    k0 = op.phase_index
    xi = integrate_from(b2 ** -0.5, x, k0)
    bt1 = (b1 - db2) / np.sqrt(b2)
    bt0 = (5.0 / 16.0) * db2 ** 2 / b2 - 0.25 * d2b2 - 0.25 * b1 * db2 / b2 + b0
    one = np.ones_like(xi)
    zero = np.zeros_like(xi)
    lo, di, up = assemble(xi, one, bt1, bt0, zero)
    top = DiscretizedOperator(xi, one, bt1, bt0, zero, zero, op.a, op.eps, op.c,
                              lo, di, up, k0)

    def expint(g, t):
        return np.exp(integrate_from(g, t, k0))
    omega = expint(bt1, xi)
    omega_bar = expint((b1 - db2) / b2 ** 0.75, x)
    omega_x = expint((b1 - db2) / b2, x)
    return LiouvilleResult(top, xi, b2 ** -0.25, omega, omega_bar, omega_x,
                           (float(bt1[0]), float(bt1[-1])))


def sturm_check(pairs, gap_tol=1e-8, outer=STURM_OUTER):
    """Zero counts and simplicity of a descending list of real eigenpairs."""
    entries, skipped = [], []
    real = []
    for p in pairs:
        if not p.is_real:
            skipped.append(complex(p.lam))
            continue
        real.append(p)
    real.sort(key=lambda p: -p.lam.real)
    for j, p in enumerate(real):
        n = count_sign_changes(p.x, p.u, outer=outer)
        entries.append({"j": j, "lam": float(p.lam.real), "sign_changes": n,
                        "ok": n == j})
    lams = np.array([p.lam.real for p in real])
    gaps = -np.diff(lams) if lams.size > 1 else np.array([])
    simple = bool(np.all(gaps > gap_tol))
    return {"entries": entries, "skipped": skipped,
            "min_gap": float(gaps.min()) if gaps.size else None,
            "simple": simple,
            "passed": simple and all(e["ok"] for e in entries)}


def regularization_sweep(front, model, a, eps_list, n_eigs=5, window=None,
                         n_solve=None, match="auto"):
    """Follow the top unflagged eigenvalues as eps -> 0.

    Eigenvalues at eps = 0 are the reference.  With match="zeros" a
    reference eigenvalue is continued by the eigenvalue whose
    eigenfunction has the same number of sign changes (the natural label
    of a real simple spectrum), nearest first; match="nearest" uses plain
    nearest-neighbour matching.  "auto" picks zeros when the reference
    pairs are real with distinct counts.  In every row a match is marked
    ambiguous when some other candidate lies closer than twice the drift,
    i.e. when nearest-neighbour matching alone could not tell them apart.
    """
    eps_list = [float(e) for e in eps_list]
    if any(e < 0 for e in eps_list):
        raise ValueError("eps values must be nonnegative")
    if any(e2 >= e1 for e1, e2 in zip(eps_list, eps_list[1:])):
        raise ValueError("eps list must be strictly decreasing")
    n_solve = n_solve or max(4 * n_eigs, 20)

    def spec(e):
        return compute_spectrum(build_operator(front, model, a, e), n_solve, window)

    ref_pairs = [p for p in spec(0.0) if not p.flagged][:n_eigs]
    ref = np.array([p.lam for p in ref_pairs])
    counts = [p.sign_changes for p in ref_pairs]
    if match == "auto":
        usable = all(n is not None for n in counts) and len(set(counts)) == len(counts)
        match = "zeros" if usable else "nearest"
    rows = []
    for e in eps_list:
        if e == 0.0:
            rows.append({"eps": e, "lam": ref.copy(), "drift": np.zeros(ref.size),
                         "ambiguous": [False] * ref.size})
            continue
        pairs = spec(e)
        cand = np.array([p.lam for p in pairs])
        cc = np.array([-1 if p.sign_changes is None else p.sign_changes for p in pairs])
        lam, drift, amb = [], [], []
        for r, n in zip(ref, counts):
            if cand.size == 0:
                lam.append(np.nan)
                drift.append(np.nan)
                amb.append(True)
                continue
            d = np.abs(cand - r)
            pool = np.flatnonzero(cc == n) if match == "zeros" else np.arange(cand.size)
            if pool.size == 0:
                pool = np.arange(cand.size)
            k = pool[np.argmin(d[pool])]
            others = np.delete(d, k)
            lam.append(cand[k])
            drift.append(d[k])
            amb.append(bool(others.size and others.min() < 2 * d[k]))
        rows.append({"eps": e, "lam": np.array(lam), "drift": np.array(drift),
                     "ambiguous": amb})
    # empirical order from the positive eps entries
    pos = [r for r in rows if r["eps"] > 0]
    orders = []
    for j in range(ref.size):
        es = np.array([r["eps"] for r in pos])
        ds = np.array([r["drift"][j] for r in pos])
        ok = np.isfinite(ds) & (ds > 0)
        orders.append(float(np.polyfit(np.log(es[ok]), np.log(ds[ok]), 1)[0])
                      if ok.sum() >= 2 else np.nan)
    return {"reference": ref, "sign_changes": counts, "match": match,
            "rows": rows, "order": orders}
