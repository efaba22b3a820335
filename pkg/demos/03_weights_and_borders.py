"""Essential spectrum: weight windows, Fredholm borders, classification.

Run:  python3 demos/03_weights_and_borders.py
"""
import numpy as np
from degnagumo import (ModelSpec, select_weight, classify_and_threshold,
                       fredholm_border, consistent_splitting_bound,
                       absolute_spectrum_edge, stationary_alpha)

m = ModelSpec.shigesada_cubic(1.0, 0.5)

# unweighted, the alpha end is unstable: lambda(0) = f'(alpha) > 0
print("unweighted border at alpha, k = 0:", fredholm_border(m, "Nn", 1.0, 0, 0, "+", [0.0]).lam)

for case in ("Nd", "Nn"):
    pl = select_weight(m, case, 1.0)
    print(f"{case}: a in {pl.interval}, a = {pl.a:.6f}, mu0 = {pl.mu0:.6f}, feasible {pl.feasible}")
    bound = consistent_splitting_bound(m, case, 1.0, pl.a)
    print(f"    border max {bound:.6f}, absolute-spectrum edge "
          f"{absolute_spectrum_edge(m, case, 1.0, pl.a):.6f}")

ms = ModelSpec.shigesada_cubic(1.0, stationary_alpha(1.0))
print("sN:", select_weight(ms, "sN-decreasing").to_dict())

# case (i)/(ii) from an exact rational comparison
for al in (0.5, 0.25):
    out = classify_and_threshold(ModelSpec.shigesada_cubic(1.0, al))
    rt = out["rational_test"]
    print(f"alpha = {al}: {rt['lhs']} vs {rt['rhs']} -> {out['classification']}, c0 = {out['c0']:.6f}")

# regularization lifts the borders by eps a^2
pl = select_weight(m, "Nd", 1.0)
k = np.linspace(-3, 3, 7)
for eps in (0.1, 0.0):
    bc = fredholm_border(m, "Nd", 1.0, pl.a, eps, "+", k)
    print(f"eps = {eps}: Re lambda(k) =", np.round(bc.lam.real, 4))
