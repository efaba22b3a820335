"""Point spectrum of the weighted operators, Sturm counts, Liouville form.

Run:  python3 demos/04_point_spectrum.py
"""
import numpy as np
from degnagumo import (ModelSpec, GridConfig, solve_front, select_weight, build_operator,
                       compute_spectrum, translation_eigenpair_check, liouville_transform,
                       sturm_check, absolute_spectrum_edge, stationary_alpha)

m = ModelSpec.shigesada_cubic(1.0, 0.5)
ms = ModelSpec.shigesada_cubic(1.0, stationary_alpha(1.0))

cases = [("sN-decreasing", ms, None), ("Nd", m, 1.0), ("Nn", m, 1.0)]
for case, model, c in cases:
    fr = solve_front(model, case, c, GridConfig(N=4000))
    a = 0.0 if c is None else select_weight(model, case, c).a
    op = build_operator(fr, model, a)
    edge = absolute_spectrum_edge(model, case, fr.c, a)
    print(f"\n{case}, a = {a:.4f}; translation residual "
          f"{translation_eigenpair_check(fr, model, a):.1e}; absolute edge {edge:.5f}")
    for p in compute_spectrum(op, 6):
        tag = "flagged" if p.flagged else ("continuum" if p.lam.real <= edge else "isolated")
        print(f"   lambda = {p.lam.real: .6f}  zeros {p.sign_changes}  residual {p.residual:.0e}  {tag}")

# Nn: Sturm structure and the Liouville form
fr = solve_front(m, "Nn", 1.0, GridConfig(N=4000))
a = select_weight(m, "Nn", 1.0).a
op = build_operator(fr, m, a)
pairs = compute_spectrum(op, 5)
rep = sturm_check(pairs)
print("\nSturm counts:", [e["sign_changes"] for e in rep["entries"]], "simple:", rep["simple"])
L = liouville_transform(op)
lt = np.array([p.lam for p in compute_spectrum(L.op, 5)])
print("Liouville form agrees to", np.max(np.abs(lt - [p.lam for p in pairs])))
