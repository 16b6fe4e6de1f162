"""The 4-dimensional limit: Lorentz blocks, the velocity constraint, and
the collapse onto the relativistic point-particle action.

Run with:  python demos/relativistic_limit.py
"""

import numpy as np

from finsler9 import (
    assemble_velocity,
    block_split_check,
    constraint_residual,
    lorentz_residual,
    minkowski_norm_sq,
    random_unimodular,
    reduced_action_check,
    solve_x8dot,
)

rng = np.random.default_rng(3)

# An embedded 2x2 boost acts block-diagonally: a Lorentz matrix on slots
# 0-3, a spinor matrix on slots 4-7, and nothing at all on slot 8.
eta = 0.3
vec, spin, scalar = block_split_check(np.diag([np.exp(eta / 2), np.exp(-eta / 2)]))
print("vector block:\n", np.array2string(vec, precision=4, suppress_small=True))
print("metric preservation residual:", lorentz_residual(vec))
print("scalar slot:", scalar)

# Same story for a random embedded element.
vec, spin, scalar = block_split_check(random_unimodular(rng, n=2))
print("\nrandom element: metric residual", lorentz_residual(vec),
      " scalar", scalar)

# The velocity constraint of the limit: given the 4-velocity and spinor
# parts, the ninth velocity is solved for uniquely.
spatial = rng.uniform(-0.4, 0.4, size=3)
x4 = np.concatenate([[np.sqrt(1.0 + spatial @ spatial)], spatial])
spinor = 0.2 * rng.uniform(-1, 1, size=4)
x8 = solve_x8dot(x4, spinor)
nine = assemble_velocity(x4, spinor)
print("\nninth velocity  =", x8)
print("closure residual =", constraint_residual(nine))
print("interval         =", minkowski_norm_sq(x4))

# On constrained curves, the 9-space action with coupling -m*c equals the
# relativistic action; nudging the coupling breaks the equality.
tau = np.linspace(0.0, 1.0, 401)
x4s = np.tile(x4, (401, 1))
spinors = spinor * np.sin(np.pi * tau)[:, None]
mass, c = 1.0, 1.0
s9, s4 = reduced_action_check(tau, x4s, spinors, mass, c)
print("\naction (9-space)   =", s9)
print("action (Minkowski) =", s4)
print("relative gap       =", abs(s9 - s4) / abs(s4))
s9_off, _ = reduced_action_check(tau, x4s, spinors, mass, c, kappa=-1.01)
print("gap with coupling off by 1%:", abs(s9_off - s4) / abs(s4))
