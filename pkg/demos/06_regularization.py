"""Eigenvalues of D + eps approach those of the degenerate operator.

Run:  python3 demos/06_regularization.py
"""
from degnagumo import (ModelSpec, GridConfig, solve_front, select_weight,
                       regularization_sweep)

m = ModelSpec.shigesada_cubic(1.0, 0.5)
fr = solve_front(m, "Nd", 1.0, GridConfig(N=4000))
a = select_weight(m, "Nd", 1.0).a

out = regularization_sweep(fr, m, a, [1e-1, 1e-2, 1e-3, 1e-4, 0.0], n_eigs=3)
print("matched by", out["match"], "; zero counts", out["sign_changes"])
for r in out["rows"]:
    print(f"eps = {r['eps']:<7g}", "  ".join(f"{l.real: .6f} ({d:.1e})"
                                         for l, d in zip(r["lam"], r["drift"])))
print("fitted order in eps:", out["order"])
