"""Diffusion and reaction terms, structural hypotheses and derived scalars.

A model couples a degenerate diffusion D with D(0) = 0 and a bistable
reaction f with zeros 0 < alpha < 1.  Both are polynomials, stored as
ascending coefficient arrays.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.polynomial import Polynomial

__all__ = ["ModelSpec", "ValidationReport", "validate_hypotheses",
           "threshold_speed", "script_D", "script_D_tail", "script_D_tail_poly", "stationary_alpha",
           "hamiltonian"]

MAX_DEGREE = 6
_NSAMPLE = 1001


@dataclass(frozen=True)
class ModelSpec:
    family: str
    D_coef: tuple
    f_coef: tuple
    alpha: float
    b: float = None

    def __post_init__(self):
        for name in ("D_coef", "f_coef"):
            c = np.asarray(getattr(self, name), dtype=float)
            if c.ndim != 1 or c.size == 0:
                raise ValueError(f"{name} must be a non-empty 1-d sequence")
            if not np.all(np.isfinite(c)):
                raise ValueError(f"non-finite coefficient in {name}")
            if c.size - 1 > MAX_DEGREE:
                raise ValueError(f"{name}: degree {c.size - 1} > {MAX_DEGREE}")
            object.__setattr__(self, name, tuple(float(v) for v in c))
        if not np.isfinite(self.alpha) or not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")

    @classmethod
    def shigesada_cubic(cls, b, alpha):
        """D(u) = u^2 + b u and f(u) = u (1 - u)(u - alpha)."""
        b, alpha = float(b), float(alpha)
        if not np.isfinite(b):
            raise ValueError("non-finite b")
        # u(1-u)(u-alpha) = -alpha u + (1+alpha) u^2 - u^3
        return cls("shigesada-cubic", (0.0, b, 1.0),
                   (0.0, -alpha, 1.0 + alpha, -1.0), alpha, b)

    @classmethod
    def polynomial(cls, D, f, alpha):
        return cls("polynomial", tuple(D), tuple(f), float(alpha))

    @classmethod
    def from_dict(cls, d):
        fam = d.get("family", "shigesada-cubic")
        if fam == "shigesada-cubic":
            return cls.shigesada_cubic(d["b"], d["alpha"])
        if fam in ("polynomial", "general-polynomial"):
            return cls.polynomial(d["D"], d["f"], d["alpha"])
        raise ValueError(f"unknown family {fam!r}")

    def to_dict(self):
        if self.family == "shigesada-cubic":
            return {"family": self.family, "b": self.b, "alpha": self.alpha}
        return {"family": "polynomial", "D": list(self.D_coef),
                "f": list(self.f_coef), "alpha": self.alpha}

    # cached on the instance; cached_property writes __dict__ directly,
    # which a frozen dataclass allows
    @cached_property
    def Dp(self):
        return Polynomial(self.D_coef)

    @cached_property
    def fp(self):
        return Polynomial(self.f_coef)

    @cached_property
    def _derivs(self):
        return {"D": [self.Dp.deriv(k) for k in range(3)],
                "f": [self.fp.deriv(k) for k in range(3)]}

    def D(self, u, n=0):
        """n-th derivative of D at u."""
        return (self._derivs["D"][n] if n < 3 else self.Dp.deriv(n))(u)

    def f(self, u, n=0):
        return (self._derivs["f"][n] if n < 3 else self.fp.deriv(n))(u)


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    def add(self, name, ok, witness=None):
        self.checks.append({"hypothesis": name, "passed": bool(ok),
                            "witness": None if ok else witness})

    @property
    def passed(self):
        return all(c["passed"] for c in self.checks)

    def failures(self):
        return [c["hypothesis"] for c in self.checks if not c["passed"]]


def _first_bad(u, mask):
    idx = np.flatnonzero(~mask)
    return float(u[idx[0]]) if idx.size else None


def validate_hypotheses(model):
    """Check the structural assumptions on D and f.

    Open conditions are sampled on a uniform 1001-point grid of [0, 1];
    the zeros of f are checked exactly at 0, alpha, 1.
    """
    rep = ValidationReport()
    u = np.linspace(0.0, 1.0, _NSAMPLE)
    al = model.alpha
    D, dD = model.D(u), model.D(u, 1)
    rep.add("D(0)=0", model.D(0.0) == 0.0, 0.0)
    rep.add("D>0 on (0,1]", np.all(D[1:] > 0), _first_bad(u[1:], D[1:] > 0))
    rep.add("D'(0)>0", model.D(0.0, 1) > 0, 0.0)
    rep.add("D'>0 on [0,1]", np.all(dD > 0), _first_bad(u, dD > 0))

    scale = max(1.0, np.max(np.abs(model.f_coef)))
    for r, name in ((0.0, "f(0)=0"), (al, "f(alpha)=0"), (1.0, "f(1)=0")):
        rep.add(name, abs(model.f(r)) <= 1e-14 * scale, r)
    rep.add("f'(0)<0", model.f(0.0, 1) < 0, 0.0)
    rep.add("f'(1)<0", model.f(1.0, 1) < 0, 1.0)
    rep.add("f'(alpha)>0", model.f(al, 1) > 0, al)
    fu = model.f(u)
    lo = (u > 0) & (u < al)
    hi = (u > al) & (u < 1)
    rep.add("f<0 on (0,alpha)", np.all(fu[lo] < 0), _first_bad(u[lo], fu[lo] < 0))
    rep.add("f>0 on (alpha,1)", np.all(fu[hi] > 0), _first_bad(u[hi], fu[hi] > 0))
    return rep


def threshold_speed(model):
    """c_bar = 2 sqrt(D(alpha) f'(alpha))."""
    al = model.alpha
    return 2.0 * np.sqrt(model.D(al) * model.f(al, 1))


def _antideriv(model):
    return (model.Dp * model.fp).integ(lbnd=0.0)


def script_D(model, phi):
    """Exact antiderivative of D f from 0 to phi."""
    phi = np.asarray(phi, dtype=float)
    if np.any((phi < 0) | (phi > 1)):
        raise ValueError("phi must lie in [0, 1]")
    out = _antideriv(model)(phi)
    return float(out) if out.ndim == 0 else out


def script_D_tail(model, s):
    """int_{1-s}^{1} D f du as a polynomial in s = 1 - phi.

    Equals script_D(1) - script_D(1 - s).  Written in s so that small
    values near phi = 1 keep relative precision.
    """
    out = script_D_tail_poly(model)(np.asarray(s, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def script_D_tail_poly(model):
    # P(1 - t) as a polynomial in t, integrated from 0
    return (model.Dp * model.fp)(Polynomial([1.0, -1.0])).integ(lbnd=0.0)


def stationary_alpha(b, tol=1e-12):
    """Root alpha* in (0, 1) of script_D(1) = 0 for the Shigesada-cubic family.

    script_D(1) is affine in alpha here, so two exact evaluations give
    the root; the residual is checked against tol.
    """
    b = float(b)
    if not b > 0:
        raise ValueError("b must be positive")

    def g(al):
        return float(_antideriv_cubic(b, al)(1.0))

    g0, g1 = g(0.0), g(1.0)
    if g0 * g1 > 0:
        raise RuntimeError("no sign change of script_D(1) on (0, 1)")
    al = g0 / (g0 - g1)
    if abs(g(al)) > tol:
        raise RuntimeError(f"|script_D(1)| = {abs(g(al)):.3e} above {tol}")
    return al


def _antideriv_cubic(b, al):
    D = Polynomial([0.0, b, 1.0])
    f = Polynomial([0.0, -al, 1.0 + al, -1.0])
    return (D * f).integ(lbnd=0.0)


def hamiltonian(model, phi, v):
    """First integral 1/2 (D v)^2 + script_D of the stationary profile system."""
    return 0.5 * (model.D(phi) * v) ** 2 + script_D(model, phi)
