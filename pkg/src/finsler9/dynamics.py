"""Free-particle mechanics in the cubic-metric 9-space.

The action of a free particle is proportional to the cubic-norm length of
its world line, with a single coupling constant ``kappa``.  The Lagrangian
is homogeneous of degree one in the velocities, so the canonical momenta
are constants of motion, the canonical energy vanishes identically, and the
world lines are straight.  The centerpiece is the closed-form inversion of
the nine momenta back to the nine velocities through 2x2 cofactor
determinants of the Hermitian momentum matrix.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DegeneratePath,
    InconsistentMomenta,
    IsotropicVelocity,
    NonMonotone,
    NonRealEntry,
    NotUnitSpeed,
    SingularMomentumMatrix,
)
from .geometry import cubic_form, matrix_to_vec, vec_to_matrix

#: Default coupling; mass times speed of light equal to one, negative sign
#: so that the 4-dimensional limit reproduces the relativistic action.
DEFAULT_KAPPA = -1.0

#: A velocity is treated as isotropic when |cubic_form| drops below this
#: fraction of its euclidean norm cubed.
ISOTROPY_EPS = 1e-9

UNIT_SPEED_TOL = 1e-9
CONSTRAINT_ADMISSION_TOL = 1e-8
SINGULARITY_TOL = 1e-12


def _check_kappa(kappa):
    kappa = float(kappa)
    if kappa == 0.0 or not np.isfinite(kappa):
        raise ValueError("kappa must be a nonzero finite real number")
    return kappa


def _nonisotropic_form(xdot):
    """Cubic form of the velocity, or IsotropicVelocity if it is negligible."""
    xdot = np.asarray(xdot, dtype=float)
    f = cubic_form(xdot)
    norm3 = np.linalg.norm(xdot, axis=-1) ** 3
    bad = np.abs(f) < ISOTROPY_EPS * norm3
    bad |= norm3 == 0.0  # the zero vector is isotropic by definition
    if np.any(bad):
        raise IsotropicVelocity(
            f"|cubic form| below {ISOTROPY_EPS:.0e} of |v|^3 "
            f"({int(np.count_nonzero(bad))} velocity sample(s))"
        )
    return f


def lagrangian(xdot, kappa=DEFAULT_KAPPA):
    """``kappa`` times the real cube root of the velocity's cubic form."""
    kappa = _check_kappa(kappa)
    return kappa * np.cbrt(_nonisotropic_form(xdot))


def canonical_momenta(xdot, kappa=DEFAULT_KAPPA):
    """The nine conserved momenta conjugate to the coordinates.

    Each component is ``kappa/3`` times the gradient of the cubic form
    divided by its 2/3 power, the latter computed as the squared real cube
    root so the result is well defined on negative cubic forms too.  The
    result is invariant under any nonzero rescaling of ``xdot`` and
    broadcasts over leading axes.
    """
    kappa = _check_kappa(kappa)
    xdot = np.asarray(xdot, dtype=float)
    f = _nonisotropic_form(xdot)
    x0, x1, x2, x3, x4, x5, x6, x7, x8 = (xdot[..., a] for a in range(9))
    numerators = np.stack(
        [
            2.0 * x0 * x8 - x4**2 - x5**2 - x6**2 - x7**2,
            2.0 * (-x1 * x8 + x4 * x6 + x5 * x7),
            2.0 * (-x2 * x8 + x5 * x6 - x4 * x7),
            -2.0 * x3 * x8 + x4**2 + x5**2 - x6**2 - x7**2,
            2.0 * (-x0 * x4 + x1 * x6 - x2 * x7 + x3 * x4),
            2.0 * (-x0 * x5 + x1 * x7 + x2 * x6 + x3 * x5),
            2.0 * (-x0 * x6 + x1 * x4 + x2 * x5 - x3 * x6),
            2.0 * (-x0 * x7 + x1 * x5 - x2 * x4 - x3 * x7),
            x0**2 - x1**2 - x2**2 - x3**2,
        ],
        axis=-1,
    )
    return (kappa / 3.0) * numerators / (np.cbrt(f) ** 2)[..., None]


def canonical_energy(xdot, kappa=DEFAULT_KAPPA):
    """``P . xdot - L``; identically zero for this degree-1 Lagrangian."""
    xdot = np.asarray(xdot, dtype=float)
    p = canonical_momenta(xdot, kappa)
    return np.einsum("...a,...a->...", p, xdot) - lagrangian(xdot, kappa)


def momenta_matrix(p):
    """Hermitian 3x3 matrix of a 9-tuple of momenta.

    Mirrors :func:`finsler9.geometry.vec_to_matrix` except for the doubled
    lower-right corner, which reflects the dual basis element used for the
    ninth momentum.
    """
    p = np.asarray(p, dtype=float)
    p0, p1, p2, p3, p4, p5, p6, p7, p8 = (p[..., a] for a in range(9))
    rows = [
        [p0 + p3, p1 - 1j * p2, p4 - 1j * p5],
        [p1 + 1j * p2, p0 - p3, p6 - 1j * p7],
        [p4 + 1j * p5, p6 + 1j * p7, 2.0 * p8],
    ]
    return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)


def matrix_identity_residual(xdot, kappa=DEFAULT_KAPPA):
    """Residual of the product identity tying velocities to their momenta.

    The Hermitian velocity matrix times the momentum matrix equals
    ``(2 kappa / 3)`` times the cube root of the cubic form times the
    identity, for every real velocity.  Returns the max-entry norm of the
    difference; the contract is ``<= 1e-10 * (1 + |xdot|^2 |P|)``.
    """
    kappa = _check_kappa(kappa)
    xdot = np.asarray(xdot, dtype=float)
    p = canonical_momenta(xdot, kappa)
    lhs = vec_to_matrix(xdot) @ momenta_matrix(p)
    rhs = (2.0 * kappa / 3.0) * np.cbrt(cubic_form(xdot)) * np.eye(3)
    return float(np.abs(lhs - rhs).max())


def momentum_constraint_residual(p, kappa=DEFAULT_KAPPA):
    """``det`` of the momentum matrix minus ``(2 kappa / 3)^3``.

    Vanishes on momenta generated by a unit-speed velocity; externally
    supplied momenta must keep it within ``1e-8 * |2 kappa / 3|^3`` to be
    admitted by :func:`invert_momenta`.
    """
    kappa = _check_kappa(kappa)
    p = np.asarray(p, dtype=float)
    det = np.linalg.det(momenta_matrix(p))
    scale = max(1.0, float(np.linalg.norm(p)) ** 3)
    if abs(det.imag) > 1e-12 * scale:
        raise NonRealEntry(f"determinant imaginary part {det.imag:.3e}")
    return float(det.real) - (2.0 * kappa / 3.0) ** 3


def _cofactor_inverse_scaled(n):
    """Adjugate of a 3x3 matrix assembled from its nine 2x2 cofactors."""
    def det2(a, b, c, d):
        return a * d - b * c

    adj = np.empty((3, 3), dtype=complex)
    adj[0, 0] = det2(n[1, 1], n[1, 2], n[2, 1], n[2, 2])
    adj[0, 1] = -det2(n[0, 1], n[0, 2], n[2, 1], n[2, 2])
    adj[0, 2] = det2(n[0, 1], n[0, 2], n[1, 1], n[1, 2])
    adj[1, 0] = -det2(n[1, 0], n[1, 2], n[2, 0], n[2, 2])
    adj[1, 1] = det2(n[0, 0], n[0, 2], n[2, 0], n[2, 2])
    adj[1, 2] = -det2(n[0, 0], n[0, 2], n[1, 0], n[1, 2])
    adj[2, 0] = det2(n[1, 0], n[1, 1], n[2, 0], n[2, 1])
    adj[2, 1] = -det2(n[0, 0], n[0, 1], n[2, 0], n[2, 1])
    adj[2, 2] = det2(n[0, 0], n[0, 1], n[1, 0], n[1, 1])
    return adj


def invert_momenta(p, kappa=DEFAULT_KAPPA, method="adjugate"):
    """Recover the unit-speed initial velocity from nine admissible momenta.

    Parameters
    ----------
    p : array_like, shape (9,)
        Momenta whose matrix satisfies the determinant constraint within
        ``1e-8 * |2 kappa / 3|^3`` (checked; no silent projection).
    kappa : float
        Coupling constant, nonzero.
    method : {"adjugate", "inverse"}
        "adjugate" combines the nine explicit 2x2 cofactor determinants of
        the momentum matrix, using the constraint to substitute the exact
        determinant value.  "inverse" goes through a generic LU inverse and
        exists as an independent cross-check of the closed form.

    Returns
    -------
    ndarray, shape (9,)
        Velocities with unit-determinant Hermitian matrix; feeding them
        back to :func:`canonical_momenta` reproduces ``p``.
    """
    kappa = _check_kappa(kappa)
    p = np.asarray(p, dtype=float)
    residual = momentum_constraint_residual(p, kappa)
    c = 2.0 * kappa / 3.0
    if abs(residual) > CONSTRAINT_ADMISSION_TOL * abs(c) ** 3:
        raise InconsistentMomenta(
            f"residual {residual:.6e} exceeds "
            f"{CONSTRAINT_ADMISSION_TOL * abs(c) ** 3:.3e}"
        )
    n = momenta_matrix(p)
    norm3 = float(np.linalg.norm(p)) ** 3
    if abs(c) ** 3 < SINGULARITY_TOL * norm3:
        raise SingularMomentumMatrix(
            f"|det| = {abs(c) ** 3:.3e} below {SINGULARITY_TOL:.0e} * |P|^3"
        )
    if method == "adjugate":
        # adj(N)/det(N) with det pinned to (2k/3)^3 by the constraint; one
        # factor of 2k/3 cancels against the velocity-matrix prefactor.
        vmat = _cofactor_inverse_scaled(n) / c**2
    elif method == "inverse":
        vmat = c * np.linalg.inv(n)
    else:
        raise ValueError(f"unknown method {method!r}")
    vmat = 0.5 * (vmat + vmat.conj().T)
    return matrix_to_vec(vmat)


def transform_momenta(transform, p):
    """Carry momenta along a 9x9 coordinate transformation.

    Momenta transform with the inverse transpose so that the pairing
    ``P . X`` is preserved.
    """
    return np.linalg.solve(np.asarray(transform, dtype=float).T, np.asarray(p, dtype=float))


def _require_unit_speed(v0):
    v0 = np.asarray(v0, dtype=float)
    gap = abs(np.linalg.det(vec_to_matrix(v0)).real - 1.0)
    if not gap <= UNIT_SPEED_TOL:
        raise NotUnitSpeed(f"|det - 1| = {gap:.3e} exceeds {UNIT_SPEED_TOL:.1e}")
    return v0


def general_solution(x0, v0, s):
    """Point(s) of the straight world line ``x0 + s * v0``.

    ``v0`` must satisfy the unit-determinant condition; ``s`` may be a
    scalar or an array of arc-length values (of either sign).
    """
    x0 = np.asarray(x0, dtype=float)
    v0 = _require_unit_speed(v0)
    s = np.asarray(s, dtype=float)
    return x0 + s[..., None] * v0


@dataclass(frozen=True)
class Trajectory:
    """Straight world line with initial point, unit-speed velocity, and range."""

    x0: np.ndarray
    v0: np.ndarray
    s_range: tuple = (0.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "x0", np.asarray(self.x0, dtype=float))
        object.__setattr__(self, "v0", _require_unit_speed(self.v0))
        s_i, s_f = self.s_range
        if s_i != 0.0:
            raise ValueError("the arc-length range must start at 0")
        object.__setattr__(self, "s_range", (0.0, float(s_f)))

    def at(self, s):
        return general_solution(self.x0, self.v0, s)

    def sample(self, n):
        s = np.linspace(0.0, self.s_range[1], n)
        return s, self.at(s)


def arc_length(tau, positions):
    """Cumulative cubic-norm length of a sampled curve.

    Velocities are finite differences (central in the interior, one-sided
    second order at the ends), the integrand is the real cube root of
    their cubic form, and the running integral is a composite trapezoid
    starting at 0.  Every sample must be nonisotropic.
    """
    tau = np.asarray(tau, dtype=float)
    positions = np.asarray(positions, dtype=float)
    if len(tau) < 3:
        raise DegeneratePath(f"need at least 3 samples, got {len(tau)}")
    vel = np.gradient(positions, tau, axis=0)
    speed = np.cbrt(_nonisotropic_form(vel))
    steps = np.diff(tau) * 0.5 * (speed[1:] + speed[:-1])
    return np.concatenate([[0.0], np.cumsum(steps)])


def reparametrize(traj, s_of_tau, tau):
    """Sample a trajectory in an arbitrary evolution parameter.

    ``s_of_tau`` is either a callable or an array of arc-length values
    aligned with ``tau``; it must start at 0 and be strictly monotone
    (otherwise :class:`NonMonotone`).  Returns ``(tau, positions)``.
    """
    tau = np.asarray(tau, dtype=float)
    s = np.asarray(s_of_tau(tau) if callable(s_of_tau) else s_of_tau, dtype=float)
    if s.shape != tau.shape:
        raise ValueError("s samples must align with tau samples")
    if abs(s[0]) > 1e-12:
        raise ValueError(f"reparametrization must start at s = 0, got {s[0]!r}")
    steps = np.diff(s)
    if np.any(steps == 0.0) or np.any(np.sign(steps) != np.sign(steps[0])):
        raise NonMonotone("ds/dtau vanishes or changes sign on the grid")
    return tau, traj.at(s)


def discrete_action(tau, positions, kappa=DEFAULT_KAPPA):
    """Trapezoid action of a sampled curve with finite-difference velocities."""
    tau = np.asarray(tau, dtype=float)
    vel = np.gradient(np.asarray(positions, dtype=float), tau, axis=0)
    return float(np.trapezoid(lagrangian(vel, kappa), tau))


def action_stationarity_check(traj, eta, amplitudes, kappa=DEFAULT_KAPPA, samples=201):
    """Scaling exponent of the action change under a boundary-fixed bump.

    The trajectory is sampled on a uniform grid of at least 200 points,
    perturbed by ``eps * eta`` for each amplitude, and the discretized
    action recomputed.  Because straight lines make the action stationary,
    ``log |S(eps) - S(0)|`` against ``log eps`` must fit a slope of 2.

    ``eta`` is a callable ``tau -> (9,)`` or an aligned ``(samples, 9)``
    array vanishing at both ends.  Raises :class:`IsotropicVelocity` when a
    perturbed curve touches the isotropic cone (shrink the amplitudes).
    """
    if samples < 200:
        raise ValueError("the action grid needs at least 200 samples")
    amplitudes = np.asarray(amplitudes, dtype=float)
    if amplitudes.size < 2 or np.any(amplitudes <= 0):
        raise ValueError("need at least two positive amplitudes to fit a slope")
    tau = np.linspace(0.0, traj.s_range[1], samples)
    base = traj.at(tau)
    bump = np.stack([eta(t) for t in tau]) if callable(eta) else np.asarray(eta, dtype=float)
    if bump.shape != base.shape:
        raise ValueError("eta samples must have shape (samples, 9)")
    if np.abs(bump[0]).max() > 1e-12 or np.abs(bump[-1]).max() > 1e-12:
        raise ValueError("eta must vanish at both endpoints")
    s0 = discrete_action(tau, base, kappa)
    gaps = np.array([abs(discrete_action(tau, base + e * bump, kappa) - s0)
                     for e in amplitudes])
    if np.any(gaps == 0.0):
        raise ValueError("perturbation produced no action change; cannot fit")
    slope, _ = np.polyfit(np.log(amplitudes), np.log(gaps), 1)
    return float(slope)


def random_nonisotropic_velocity(rng, margin=1e-3, scale=1.0):
    """Uniform velocity draw rejected until safely off the isotropic cone.

    ``margin`` is the admitted lower bound of |cubic form| relative to the
    euclidean norm cubed; 1e-3 keeps downstream quotients well conditioned
    while rejecting almost nothing.
    """
    while True:
        xdot = rng.uniform(-scale, scale, size=9)
        if abs(cubic_form(xdot)) >= margin * np.linalg.norm(xdot) ** 3:
            return xdot


def unit_speed_velocity(rng, margin=1e-3):
    """Random velocity rescaled so its cubic form is exactly one."""
    xdot = random_nonisotropic_velocity(rng, margin)
    return xdot / np.cbrt(cubic_form(xdot))
