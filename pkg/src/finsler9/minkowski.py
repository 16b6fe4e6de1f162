"""The 4-dimensional relativistic limit of the cubic-metric space.

Unimodular 2x2 matrices embedded in the upper-left block of SL(3, C) act on
the 9-space without mixing three index groups: components 0-3 transform as
a Lorentz 4-vector, components 4-7 as a 4-component spinor, and component 8
is invariant.  Constraining the velocities so that the cubic form equals
the Minkowski interval to the power 3/2 collapses the 9-dimensional action
onto the standard relativistic point-particle action once the coupling is
minus mass times speed of light.
"""

import numpy as np

from .exceptions import BlockLeakage, NonTimelike, NotUnimodular
from .geometry import cubic_form, group_action

#: Minkowski metric with signature (+, -, -, -).
MINKOWSKI_METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
MINKOWSKI_METRIC.setflags(write=False)

BLOCK_TOL = 1e-12

_VEC = slice(0, 4)
_SPIN = slice(4, 8)


def minkowski_norm_sq(x4):
    """``g_ab x^a x^b`` of a 4-vector (broadcasts over leading axes)."""
    x4 = np.asarray(x4, dtype=float)
    return x4[..., 0] ** 2 - x4[..., 1] ** 2 - x4[..., 2] ** 2 - x4[..., 3] ** 2


def embed_sl2(d2):
    """Embed a unimodular 2x2 matrix in the upper-left block of a 3x3 one."""
    d2 = np.asarray(d2, dtype=complex)
    if d2.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {d2.shape}")
    gap = abs(np.linalg.det(d2) - 1.0)
    if not gap <= 1e-9:
        raise NotUnimodular(f"|det - 1| = {gap:.3e} exceeds 1e-09")
    d3 = np.zeros((3, 3), dtype=complex)
    d3[:2, :2] = d2
    d3[2, 2] = 1.0
    return d3


def _split_blocks(ell, tol=BLOCK_TOL):
    """Separate a 9x9 matrix into the 4+4+1 diagonal blocks, or fail loudly."""
    mask = np.zeros((9, 9), dtype=bool)
    mask[_VEC, _VEC] = True
    mask[_SPIN, _SPIN] = True
    mask[8, 8] = True
    leak = np.abs(np.where(mask, 0.0, ell)).max()
    if leak > tol:
        raise BlockLeakage(f"cross-block entry {leak:.3e} exceeds {tol:.1e}")
    return ell[_VEC, _VEC].copy(), ell[_SPIN, _SPIN].copy(), float(ell[8, 8])


def block_split_check(d2):
    """Blocks of the 9-space action of an embedded 2x2 group element.

    Returns ``(vector_block, spinor_block, scalar)`` where the vector block
    acts on components 0-3, the spinor block on 4-7, and the scalar (always
    1) on component 8.  Raises :class:`BlockLeakage` if any cross-block
    entry survives above tolerance.
    """
    return _split_blocks(group_action(embed_sl2(d2)))


def lorentz_residual(block):
    """Max-entry norm of ``block^T g block - g``; zero for Lorentz matrices."""
    block = np.asarray(block, dtype=float)
    g = MINKOWSKI_METRIC
    return float(np.abs(block.T @ g @ block - g).max())


def _timelike_norm_sq(x4):
    q = minkowski_norm_sq(x4)
    if np.any(q <= 0.0):
        raise NonTimelike("the 4-velocity part must satisfy g(v, v) > 0")
    return q


def _spinor_terms(x4, s4):
    """Portion of the cubic form that does not involve the ninth velocity."""
    x0, x1, x2, x3 = (x4[..., a] for a in range(4))
    s4_, s5, s6, s7 = (s4[..., a] for a in range(4))
    return (
        -x0 * (s4_**2 + s5**2 + s6**2 + s7**2)
        + 2.0 * x1 * (s4_ * s6 + s5 * s7)
        + 2.0 * x2 * (s5 * s6 - s4_ * s7)
        + x3 * (s4_**2 + s5**2 - s6**2 - s7**2)
    )


def constraint_residual(xdot):
    """How far a 9-velocity is from the velocity constraint of the 4D limit.

    The constraint equates the cubic form, grouped as the Minkowski norm of
    the 4-velocity part times the ninth velocity plus spinor terms, with
    the 3/2 power of that Minkowski norm.  Requires a timelike 4-part.
    """
    xdot = np.asarray(xdot, dtype=float)
    x4, s4, x8 = xdot[..., _VEC], xdot[..., _SPIN], xdot[..., 8]
    q = _timelike_norm_sq(x4)
    lhs = q * x8 + _spinor_terms(x4, s4)
    return lhs - q**1.5


def solve_x8dot(xdot03, xdot47):
    """The unique ninth velocity closing the 4D-limit constraint.

    The constraint is linear in the ninth velocity with coefficient equal
    to the (positive, timelike) Minkowski norm of the 4-velocity part.
    Broadcasts over leading axes.
    """
    x4 = np.asarray(xdot03, dtype=float)
    s4 = np.asarray(xdot47, dtype=float)
    q = _timelike_norm_sq(x4)
    return (q**1.5 - _spinor_terms(x4, s4)) / q


def assemble_velocity(xdot03, xdot47):
    """Full 9-velocity with the ninth component solved from the constraint."""
    x4 = np.asarray(xdot03, dtype=float)
    s4 = np.asarray(xdot47, dtype=float)
    x8 = solve_x8dot(x4, s4)
    return np.concatenate([x4, s4, x8[..., None]], axis=-1)


def reduced_action_check(tau, xdot4, spinor, mass, light_speed, kappa=None):
    """Evaluate the 9-space action against the relativistic one on one curve.

    ``xdot4`` and ``spinor`` are sampled velocity components on the grid
    ``tau``; the ninth velocity is assembled from the constraint at every
    sample.  Returns ``(cubic_action, minkowski_action)``: the first is the
    9-space action at coupling ``kappa`` (default ``-mass * light_speed``),
    the second is ``-mass * light_speed`` times the proper-time integral.
    They agree exactly when ``kappa`` keeps its default value.
    """
    mass = float(mass)
    light_speed = float(light_speed)
    if mass <= 0 or light_speed <= 0:
        raise ValueError("mass and light speed must be positive")
    if kappa is None:
        kappa = -mass * light_speed
    tau = np.asarray(tau, dtype=float)
    xdot4 = np.asarray(xdot4, dtype=float)
    spinor = np.asarray(spinor, dtype=float)
    q = _timelike_norm_sq(xdot4)
    nine = assemble_velocity(xdot4, spinor)
    s_cubic = float(np.trapezoid(kappa * np.cbrt(cubic_form(nine)), tau))
    s_mink = float(np.trapezoid(-mass * light_speed * np.sqrt(q), tau))
    return s_cubic, s_mink
