"""Front profiles in all four cases, their tails, and the Nn speed floor.

Run:  python3 demos/02_fronts.py
"""
import numpy as np
from degnagumo import (ModelSpec, GridConfig, solve_front, verify_decay,
                       profile_residual, coefficient_bound, coefficient_tails,
                       stationary_alpha, threshold_speed)
from degnagumo.fronts import minimal_speed, NoMonotoneFront

ms = ModelSpec.shigesada_cubic(1.0, stationary_alpha(1.0))
m = ModelSpec.shigesada_cubic(1.0, 0.5)
grid = GridConfig(N=4000)

fronts = {
    "sN-decreasing": (ms, solve_front(ms, "sN-decreasing", grid=grid)),
    "sN-increasing": (ms, solve_front(ms, "sN-increasing", grid=grid)),
    "Nd": (m, solve_front(m, "Nd", 1.0, grid)),
    "Nn": (m, solve_front(m, "Nn", 1.0, grid)),
}

for name, (model, fr) in fronts.items():
    res = np.max(np.abs(profile_residual(fr, model)))
    print(f"{name:14s} u-={fr.u_minus:g} u+={fr.u_plus:g} x in [{fr.x[0]:.1f}, {fr.x[-1]:.1f}]"
          f"  residual {res:.1e}  sup|D phi_xx/phi_x| = {coefficient_bound(fr, model):.4f}")

# tails: predicted laws next to what the profiles do
for name, (model, fr) in fronts.items():
    for r in verify_decay(fr, model):
        print(f"  {name:14s} {r.side}: {r.law} fitted {r.fitted:.4f} vs {r.predicted:.4f}"
              f"; {r.generic_law} fitted {r.generic_fitted:.4f} vs {r.generic_predicted:.4f}")

# the stationary front reaches 0 at a finite edge
fr = fronts["sN-decreasing"][1]
print("sharp edge at x =", fr.x_edge, "(last node", fr.x[-1], ")")
print("tails of D phi_xx/phi_x:", coefficient_tails(*reversed(fronts["Nn"])))

# Nn fronts are pushed: no monotone front between cbar and c_min
cmin = minimal_speed(m, "Nn")
print(f"Nn: cbar = {threshold_speed(m):.6f}, c_min = {cmin:.6f}")
try:
    solve_front(m, "Nn", 0.87, GridConfig(N=2000))
except NoMonotoneFront as exc:
    print("c = 0.87:", exc)
