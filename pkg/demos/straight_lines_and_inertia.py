"""Straight world lines: arc length, reparametrization, stationary action.

Run with:  python demos/straight_lines_and_inertia.py
"""

import numpy as np

from finsler9 import (
    Trajectory,
    action_stationarity_check,
    arc_length,
    canonical_momenta,
    reparametrize,
    unit_speed_velocity,
)

rng = np.random.default_rng(11)

traj = Trajectory(x0=rng.uniform(-1, 1, size=9),
                  v0=unit_speed_velocity(rng),
                  s_range=(0.0, 2.0))

# In the arc-length gauge the cumulative length is the parameter itself.
s, points = traj.sample(401)
recovered = arc_length(s, points)
print("arc-length gauge error:", np.abs(recovered - s).max())

# Any monotone reparametrization traces the same line; finite-difference
# momenta along it stay glued to the conserved values.
tau = np.linspace(0.0, 1.0, 501)
_, curled = reparametrize(traj, lambda t: t**3 + t, tau)
velocities = np.gradient(curled, tau, axis=0)
p_ref = canonical_momenta(traj.v0)
drift = np.abs(canonical_momenta(velocities) - p_ref).max()
print("momentum drift along reparametrized curve:", drift)

# Stationarity: pinch the line with a small interior bump and the action
# changes only at second order in the amplitude.
def bump(slot):
    def eta(t):
        out = np.zeros(9)
        z = (t - 0.3) / 0.4
        if 0.0 < z < 1.0:
            out[slot] = np.exp(-1.0 / (z * (1.0 - z)))
        return out
    return eta

straight = Trajectory(np.zeros(9), np.array([1.0, 0, 0, 0, 0, 0, 0, 0, 1.0]))
for slot in (0, 1, 4, 6, 8):
    slope = action_stationarity_check(straight, bump(slot),
                                      np.geomspace(1e-2, 1e-4, 7))
    print(f"slot {slot}: action-change exponent = {slope:.6f}")
