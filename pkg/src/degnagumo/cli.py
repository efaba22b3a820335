"""Command line front end: ``degnagumo front|spectrum|report``.

A scenario is read from an optional JSON config and overridden by flags:

    {"model": {"family": "shigesada-cubic", "b": 1.0, "alpha": 0.5},
     "case": "Nn", "c": 1.0, "a": "auto",
     "eps_sweep": [0.1, 0.01, 0.001, 0.0001, 0.0],
     "grid": {"N": 4000, "L_minus": null, "L_plus": null, "stretch": 1.0},
     "n_eigs": 10, "out": "out"}

Exit codes: 0 all checks pass, 1 usage or internal error, 2 a condition
of the theory fails for these parameters (a mathematical outcome).
"""
import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import eigensolve as es
from . import energy as en
from .fronts import (SPEED_MARGIN, GridConfig, NoMonotoneFront, canonical_case,
                     coefficient_bound, coefficient_tails, minimal_speed, solve_front, verify_decay)
from .model import ModelSpec, stationary_alpha, threshold_speed, validate_hypotheses
from .spectrum import (absolute_spectrum_edge, classify_and_threshold,
                       consistent_splitting_bound, fredholm_border, select_weight)

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE = 0, 1, 2
RESIDUAL_TOL = 1e-7
SIGN_TOL = 1e-5
ALPHA_TOL = 1e-10


class Infeasible(Exception):
    """A hypothesis of the theory fails at these parameters."""


class UsageError(Exception):
    pass


@dataclass
class ScenarioConfig:
    model: dict = field(default_factory=lambda: {"family": "shigesada-cubic", "b": 1.0})
    case: str = "Nn"
    c: object = None                 # float or "auto-stationary"
    a: object = "auto"               # "auto" (midpoint) or float
    eps_sweep: list = field(default_factory=lambda: [1e-1, 1e-2, 1e-3, 1e-4, 0.0])
    grid: dict = field(default_factory=lambda: {"N": 4000, "L_minus": None,
                                                "L_plus": None, "stretch": 1.0})
    n_eigs: int = 10
    out: str = "out"

    def validate(self):
        self.case = canonical_case(self.case)
        eps = [float(e) for e in self.eps_sweep]
        if any(e < 0 for e in eps):
            raise UsageError("eps values must be nonnegative")
        if any(e2 >= e1 for e1, e2 in zip(eps, eps[1:])):
            raise UsageError("eps sweep must be strictly decreasing")
        self.eps_sweep = eps
        if float(self.grid.get("stretch", 1.0) or 1.0) != 1.0:
            raise UsageError("only uniform grids (stretch = 1) are supported")
        if self.case.startswith("sN"):
            if self.c not in (None, "auto-stationary", 0, 0.0):
                raise UsageError("stationary fronts have c = 0")
            self.c = "auto-stationary"
        elif self.c is None or self.c == "auto-stationary":
            raise UsageError(f"case {self.case} needs a speed --c")
        return self

    def build_model(self):
        d = dict(self.model)
        if self.case.startswith("sN") and d.get("family", "shigesada-cubic") == "shigesada-cubic":
            astar = stationary_alpha(d["b"])
            if d.get("alpha") is None:
                d["alpha"] = astar
            elif abs(float(d["alpha"]) - astar) > ALPHA_TOL:
                raise Infeasible(f"stationary fronts need alpha = alpha*(b) = {astar:.12g}, "
                                 f"got {d['alpha']}")
        if d.get("alpha") is None:
            raise UsageError("--alpha is required for this case")
        return ModelSpec.from_dict(d)

    def grid_config(self):
        g = self.grid
        return GridConfig(N=int(g.get("N", 4000)), L_minus=g.get("L_minus"),
                          L_plus=g.get("L_plus"))

    def speed(self):
        return None if self.c == "auto-stationary" else float(self.c)

    def to_dict(self):
        return {"model": self.model, "case": self.case, "c": self.c, "a": self.a,
                "eps_sweep": self.eps_sweep, "grid": self.grid,
                "n_eigs": self.n_eigs}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="degnagumo", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in (("front", "solve a front and check its tails"),
                        ("spectrum", "weights, borders, eigenvalues and certificates"),
                        ("report", "collect earlier outputs into one bundle")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--config", help="JSON scenario file; flags override it")
        s.add_argument("--out", help="output directory")
        if name == "report":
            continue
        s.add_argument("--case", choices=["sN-inc", "sN-dec", "sN", "Nd", "Nn",
                                          "sN-increasing", "sN-decreasing"])
        s.add_argument("--alpha", type=float)
        s.add_argument("--b", type=float)
        s.add_argument("--c", type=float)
        s.add_argument("--a", type=float, help="explicit weight; default is the window midpoint")
        s.add_argument("--eps-sweep", help="comma separated, strictly decreasing")
        s.add_argument("--L-minus", type=float, dest="L_minus")
        s.add_argument("--L-plus", type=float, dest="L_plus")
        s.add_argument("--N", type=int)
        s.add_argument("--n-eigs", type=int, dest="n_eigs")
    return p


def load_config(args):
    cfg = ScenarioConfig()
    if getattr(args, "config", None):
        with open(args.config) as fh:
            raw = json.load(fh)
        for k, v in raw.items():
            if not hasattr(cfg, k):
                raise UsageError(f"unknown config key {k!r}")
            if k == "grid":
                cfg.grid = {**cfg.grid, **v}
            elif k == "model":
                cfg.model = {**cfg.model, **v}
            else:
                setattr(cfg, k, v)
    for key in ("alpha", "b"):
        v = getattr(args, key, None)
        if v is not None:
            cfg.model[key] = v
    if getattr(args, "case", None):
        cfg.case = args.case
    if getattr(args, "c", None) is not None:
        cfg.c = args.c
    if getattr(args, "a", None) is not None:
        cfg.a = args.a
    if getattr(args, "eps_sweep", None):
        cfg.eps_sweep = [float(t) for t in args.eps_sweep.split(",") if t.strip()]
    for key in ("L_minus", "L_plus", "N"):
        v = getattr(args, key, None)
        if v is not None:
            cfg.grid[key] = v
    if getattr(args, "n_eigs", None):
        cfg.n_eigs = args.n_eigs
    if getattr(args, "out", None):
        cfg.out = args.out
    return cfg


# ---------------------------------------------------------------------------
# output helpers

def _clean(obj):
    """JSON-safe, deterministic structure (non-finite floats become strings)."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _clean(obj.real), "im": _clean(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    return obj


def write_json(path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n")


def write_csv(path, header, columns):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*columns):
            w.writerow([repr(float(v)) for v in row])


def _tag(anchor, value):
    return {"value": value, "anchor": anchor}


# ---------------------------------------------------------------------------
# commands

def _front(cfg):
    model = cfg.build_model()
    rep = validate_hypotheses(model)
    if not rep.passed:
        raise Infeasible(f"hypotheses fail: {', '.join(rep.failures())}")
    c = cfg.speed()
    if c is not None and cfg.case in ("Nd", "Nn"):
        cbar = threshold_speed(model)
        if not c > cbar + SPEED_MARGIN:
            raise Infeasible(f"c = {c} <= cbar(alpha) = {cbar:.4f}")
    try:
        front = solve_front(model, cfg.case, c, cfg.grid_config())
    except NoMonotoneFront as exc:
        cmin = minimal_speed(model, cfg.case)
        raise Infeasible(f"{exc}; monotone {cfg.case} fronts need c >= {cmin:.8g}") from exc
    return model, rep, front


def cmd_front(cfg):
    out = Path(cfg.out)
    model, rep, front = _front(cfg)
    write_json(out / "scenario.json", {**cfg.to_dict(), "model": model.to_dict()})
    write_csv(out / "profile.csv", ["x", "phi", "phi_x", "phi_xx"],
              [front.x, front.phi, front.phi_x, front.phi_xx])
    write_json(out / "profile.json", {**front.sidecar(model), "N": front.N,
                                      "anchor": "profile equation"})
    decay = verify_decay(front, model)
    write_json(out / "decay.json", [{**d.__dict__, "anchor": "tail decay laws"}
                                    for d in decay])
    bound = coefficient_bound(front, model)
    write_json(out / "coefficient_bound.json",
               {"max_abs_D_phixx_over_phix": _tag("coefficient bound", bound),
                "tails": coefficient_tails(front, model)})
    write_json(out / "hypotheses.json", rep.checks)
    invariants = {"residual": front.residual_max <= RESIDUAL_TOL,
                  "monotone": True,
                  "range": bool(np.all((front.phi >= min(front.u_minus, front.u_plus))
                                       & (front.phi <= max(front.u_minus, front.u_plus))))}
    write_json(out / "front_checks.json", invariants)
    return EXIT_OK if all(invariants.values()) else EXIT_ERROR


def _plan(model, cfg):
    c = cfg.speed()
    plan = select_weight(model, cfg.case, c)
    if cfg.a not in (None, "auto") and plan.feasible:
        a = float(cfg.a)
        bound = consistent_splitting_bound(model, cfg.case, plan.c, a, 0.0)
        plan.a = a
        plan.mu0 = float(-bound) if cfg.case != "Nn" else float(min(plan.mu0, -bound))
        if cfg.case != "sN-increasing" and cfg.case != "sN-decreasing":
            lo, hi = plan.interval
            if not lo < a < hi:
                plan.feasible = False
                plan.reason = f"a = {a} outside the admissible window ({lo:.6g}, {hi:.6g})"
    return plan


def cmd_spectrum(cfg):
    out = Path(cfg.out)
    model = cfg.build_model()
    write_json(out / "scenario.json", {**cfg.to_dict(), "model": model.to_dict()})
    plan = _plan(model, cfg)
    write_json(out / "weight_plan.json", {**plan.to_dict(), "anchor": "weight window"})
    if not plan.feasible:
        verdict = {"essential_bound": None, "point_spectrum_max_re": None,
                   "translation_residual": None,
                   "verdict": "not essentially-spectrally-stable at this speed",
                   "reason": plan.reason}
        write_json(out / "verdict.json", verdict)
        return EXIT_INFEASIBLE
    _, _, front = _front(cfg)
    write_json(out / "profile.json", {**front.sidecar(model), "N": front.N,
                                      "anchor": "profile equation"})
    a, c = plan.a, front.c
    # essential spectrum borders, one file per (side, eps)
    for eps in sorted(set(cfg.eps_sweep) | {0.0}, reverse=True):
        for side, tag in (("-", "minus"), ("+", "plus")):
            bc = fredholm_border(model, cfg.case, c, a, eps, side)
            write_csv(out / "borders" / f"{tag}_eps{eps:g}.csv",
                      ["k", "re_lambda", "im_lambda"], [bc.k, bc.lam.real, bc.lam.imag])
    ess = consistent_splitting_bound(model, cfg.case, c, a, 0.0)
    edge = absolute_spectrum_edge(model, cfg.case, c, a, 0.0)

    op = es.build_operator(front, model, a, 0.0)
    pairs = es.compute_spectrum(op, cfg.n_eigs)
    failed = list(es.compute_spectrum.failed)
    table = []
    for k, p in enumerate(pairs):
        d = p.to_dict()
        d["below_absolute_edge"] = bool(p.is_real and p.lam.real <= edge + 1e-12)
        table.append(d)
        write_csv(out / "eigenfunctions" / f"u{k:02d}.csv", ["x", "re", "im"],
                  [p.x, np.real(p.u), np.imag(p.u)])
    write_json(out / "eigenvalues.json",
               {"eigenvalues": table, "absolute_spectrum_edge": edge,
                "unconverged": [f.to_dict() for f in failed],
                "anchor": "point spectrum (truncated-domain proxy)"})
    sturm = es.sturm_check(pairs)
    write_json(out / "sturm.json", {**sturm, "anchor": "Sturm oscillation"})

    tr_pair = es.translation_pair(front, model, a)
    tr_res = es.translation_eigenpair_check(front, model, a, op=op)
    certs = [en.energy_certificate(front, model, a, tr_pair).to_dict()
             | {"pair": "translation"}]
    for k, p in enumerate(pairs):
        if p.flagged:
            continue
        try:
            certs.append(en.energy_certificate(front, model, a, p).to_dict() | {"pair": k})
        except FloatingPointError as exc:
            certs.append({"pair": k, "verdict": f"inconclusive: {exc}"})
    write_json(out / "energy.json", {"certificates": certs, "anchor": "basic energy estimate"})

    sweep_eps = cfg.eps_sweep if cfg.eps_sweep and cfg.eps_sweep[-1] == 0.0 \
        else list(cfg.eps_sweep) + [0.0]
    sweep = es.regularization_sweep(front, model, a, sweep_eps, n_eigs=min(4, cfg.n_eigs))
    write_json(out / "regularization.json",
               {"reference": sweep["reference"], "match": sweep["match"],
                "order": sweep["order"],
                "rows": [{"eps": r["eps"], "lam": r["lam"], "drift": r["drift"],
                          "ambiguous": r["ambiguous"]} for r in sweep["rows"]],
                "anchor": "parabolic regularization (empirical)"})

    genuine = [p for p in pairs if not p.flagged]
    pmax = max((p.lam.real for p in genuine), default=-np.inf)
    if pmax > SIGN_TOL:
        verdict = "unstable eigenvalue found"
    elif cfg.case == "Nn" and ess < 0:
        verdict = "spectrally stable with gap"
    else:
        verdict = "stable, no gap claimed"
    write_json(out / "verdict.json",
               {"essential_bound": _tag("essential spectrum border", ess),
                "point_spectrum_max_re": _tag("point spectrum", pmax),
                "translation_residual": _tag("translation eigenfunction", tr_res),
                "mu0": _tag("weight window", plan.mu0),
                "verdict": verdict})
    return EXIT_OK if pmax <= SIGN_TOL else EXIT_ERROR


REQUIRED = ("scenario.json",)


def cmd_report(cfg):
    root = Path(cfg.out)
    scen = sorted(root.rglob("scenario.json")) if root.is_dir() else []
    if not scen:
        raise FileNotFoundError(f"no scenario outputs under {root}; required: "
                                + ", ".join(REQUIRED) + " plus profile.json or verdict.json "
                                "from a front or spectrum run")
    bundle, md = [], ["# Reproducibility bundle", ""]
    for s in scen:
        d = s.parent
        conf = json.loads(s.read_text())
        entry = {"dir": str(d.relative_to(root)) or ".", "scenario": conf}
        md.append(f"## {entry['dir']}: case {conf['case']}, model {conf['model']}")
        model = ModelSpec.from_dict(conf["model"])
        if conf["case"] in ("Nd", "Nn"):
            cls = classify_and_threshold(model)
            entry["classification"] = _tag("Nn speed threshold", cls)
            md.append(f"- classification: {cls['classification']} "
                      f"(h(cbar) = {cls['h_cbar']:.6g} vs 1 - rho = {cls['one_minus_rho']:.6g}); "
                      f"c0 = {cls['c0']:.10g}")
        for name in ("profile.json", "decay.json", "coefficient_bound.json",
                     "weight_plan.json", "eigenvalues.json", "sturm.json",
                     "energy.json", "regularization.json", "verdict.json"):
            f = d / name
            if f.exists():
                entry[name[:-5]] = json.loads(f.read_text())
        if "profile" in entry:
            md.append(f"- front residual {entry['profile']['residual_max']:.3e}")
        if "weight_plan" in entry:
            wp = entry["weight_plan"]
            md.append(f"- weight a = {wp['a']}, window {wp['interval']}, mu0 = {wp['mu0']}")
        if "verdict" in entry:
            v = entry["verdict"]
            md.append(f"- verdict: {v['verdict']}")
        if "profile" not in entry and "verdict" not in entry:
            md.append("- missing: profile.json and verdict.json")
        md.append("")
        bundle.append(entry)
    write_json(root / "bundle.json", bundle)
    (root / "report.md").write_text("\n".join(md) + "\n")
    return EXIT_OK


COMMANDS = {"front": cmd_front, "spectrum": cmd_spectrum, "report": cmd_report}


def main(argv=None):
    out_dir = None
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(args)
        out_dir = Path(cfg.out)
        if args.command != "report":
            cfg.validate()
        return COMMANDS[args.command](cfg)
    except Infeasible as exc:
        _error(out_dir, "infeasible", str(exc))
        return EXIT_INFEASIBLE
    except (UsageError, FileNotFoundError, ValueError) as exc:
        _error(out_dir, "error", str(exc))
        return EXIT_ERROR
    except Exception as exc:     # report, never traceback, for scripted use
        _error(out_dir, "internal", f"{type(exc).__name__}: {exc}")
        return EXIT_ERROR


def _error(out_dir, kind, msg):
    payload = {"status": kind, "message": msg}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    if out_dir is not None:
        try:
            write_json(out_dir / "error.json", payload)
        except OSError:
            pass


if __name__ == "__main__":
    sys.exit(main())
