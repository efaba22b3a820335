"""Diffusion, reaction and the scalars derived from them.

Run:  python3 demos/01_model.py
"""
import numpy as np
from degnagumo import (ModelSpec, validate_hypotheses, threshold_speed, script_D,
                       stationary_alpha, hamiltonian)

# D(u) = u^2 + b u and f(u) = u (1 - u)(u - alpha)
m = ModelSpec.shigesada_cubic(b=1.0, alpha=0.5)
rep = validate_hypotheses(m)
print("hypotheses pass:", rep.passed)
for c in rep.checks:
    print(f"  {c['hypothesis']:<18} {c['passed']}")

# b = 0 loses the linear growth of D at 0
bad = validate_hypotheses(ModelSpec.shigesada_cubic(0.0, 0.5))
print("b = 0 fails:", bad.failures())

# threshold speed: the two weight roots at alpha merge here
print("cbar(0.5) =", threshold_speed(m))
print("cbar(0.25) =", threshold_speed(ModelSpec.shigesada_cubic(1.0, 0.25)))

# stationary fronts need script_D(1) = 0, which fixes alpha
for b in (1.0, 2.0, 100.0):
    al = stationary_alpha(b)
    print(f"b = {b:g}: alpha* = {al:.12f}, (2+3b)/(3+5b) = {(2 + 3 * b) / (3 + 5 * b):.12f}")

ms = ModelSpec.shigesada_cubic(1.0, stationary_alpha(1.0))
print("script_D(1/2) =", script_D(ms, 0.5), " (-7/768 =", -7 / 768, ")")

# the stationary profile lives on H = 0
phi = np.linspace(0.05, 0.95, 5)
v = -np.sqrt(-2 * script_D(ms, phi)) / ms.D(phi)
print("H on the level set:", hamiltonian(ms, phi, v))
