"""Classical breathing dynamics of the box size about the strained minimum.

A single coordinate eta (wall displacement from the strained equilibrium,
units d) carries the size change.  The particle is treated adiabatically:
at every instant it contributes exactly its ground-state energy for the
instantaneous size, 1/(ell + eta)^2, while the spring stores
(K/2)(ell - 1 + eta)^2 and the wall inertia mu supplies the kinetic term.
Small oscillations then run at omega = sqrt(K'/mu) with the stiffened
force constant K', and the particle and spring energies swing in
antiphase: their linear responses to eta are equal and opposite because
the linear term of the total energy vanishes at equilibrium.

Integration is velocity Verlet (symplectic, time reversible), jitted with
numba when available since the conservation checks run for 10^7 steps.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import AnalysisError, DomainError, NumericalError, ValidationError
from .equilibrium import StrainSolution

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

_STEPS_PER_PERIOD = 1000  # default dt resolves a small oscillation this finely


@dataclass(frozen=True)
class Trajectory:
    """Sampled time series of a breathing-mode integration (reduced units)."""

    times: np.ndarray
    eta: np.ndarray
    velocity: np.ndarray
    particle_energy: np.ndarray  # 1/(ell + eta)^2
    strain_energy: np.ndarray  # (K/2)(ell - 1 + eta)^2
    kinetic_energy: np.ndarray  # (mu/2) v^2
    total_energy: np.ndarray


def restoring_force(y: float, sol: StrainSolution) -> float:
    """Force on the breathing coordinate at displacement y from equilibrium.

    -dE/d(eta) = 2/(ell + y)^3 - K(ell - 1 + y): the zero-point push minus
    the spring pull.  Vanishes at y = 0 and behaves as -K' y nearby.
    """
    y = float(y)
    size = sol.ell + y
    if not size > 0.0:
        raise DomainError(f"box collapse: ell + y = {size} must stay positive")
    return 2.0 / size**3 - sol.K * (sol.strain + y)


@njit(cache=True)
def _verlet_kernel(ell, K, mu, y0, v0, dt, n_steps, stride, eta_out, vel_out):
    """Kick-drift-kick Verlet; records every stride-th step plus the last.

    Returns (number of samples written, collapse step index or -1).
    """
    y = y0
    v = v0
    a = (2.0 / (ell + y) ** 3 - K * (ell - 1.0 + y)) / mu
    eta_out[0] = y
    vel_out[0] = v
    k = 1
    for i in range(1, n_steps + 1):
        v_half = v + 0.5 * dt * a
        y = y + dt * v_half
        if ell + y <= 0.0:
            return k, i
        a = (2.0 / (ell + y) ** 3 - K * (ell - 1.0 + y)) / mu
        v = v_half + 0.5 * dt * a
        if i % stride == 0 or i == n_steps:
            eta_out[k] = y
            vel_out[k] = v
            k += 1
    return k, -1


def default_time_step(sol: StrainSolution, mu: float) -> float:
    """dt resolving one small-oscillation period with 1000 steps."""
    omega = math.sqrt(sol.effective_stiffness / mu)
    return 2.0 * math.pi / (_STEPS_PER_PERIOD * omega)


def integrate(
    sol: StrainSolution,
    mu: float,
    y0: float,
    v0: float = 0.0,
    dt: float | None = None,
    n_steps: int = 10 * _STEPS_PER_PERIOD,
    record_every: int = 1,
) -> Trajectory:
    """Integrate the breathing coordinate from (y0, v0) for n_steps of dt.

    Args:
        sol: strained equilibrium the motion oscillates about.
        mu: wall inertia in units of the particle mass.
        y0: initial displacement; must satisfy |y0| < sol.strain, the
            window in which the equilibrium expansion is meaningful.
        v0: initial velocity (d per reduced time).
        dt: time step; defaults to a thousandth of the small-oscillation
            period.
        n_steps: number of Verlet steps.
        record_every: stride between stored samples (the final state is
            always stored); lets multi-million-step runs stay in memory.

    Raises:
        NumericalError: if the box collapses mid-run (reports the step).
    """
    mu = float(mu)
    if not math.isfinite(mu) or mu <= 0.0:
        raise ValidationError(f"wall mass ratio mu must be positive, got {mu!r}")
    y0 = float(y0)
    v0 = float(v0)
    if not abs(y0) < sol.strain:
        raise DomainError(
            f"|y0| = {abs(y0)!r} must stay below the strain {sol.strain!r}"
        )
    if dt is None:
        dt = default_time_step(sol, mu)
    dt = float(dt)
    if not math.isfinite(dt) or dt <= 0.0:
        raise ValidationError(f"time step dt must be positive, got {dt!r}")
    n_steps = int(n_steps)
    if n_steps < 1:
        raise ValidationError(f"n_steps must be >= 1, got {n_steps}")
    record_every = int(record_every)
    if record_every < 1:
        raise ValidationError(f"record_every must be >= 1, got {record_every}")

    n_rec = n_steps // record_every + 1
    if n_steps % record_every:
        n_rec += 1
    eta = np.empty(n_rec)
    vel = np.empty(n_rec)
    written, collapse_step = _verlet_kernel(
        sol.ell, sol.K, mu, y0, v0, dt, n_steps, record_every, eta, vel
    )
    if collapse_step >= 0:
        raise NumericalError(f"box collapse at step {collapse_step}")
    assert written == n_rec

    steps = np.arange(0, n_steps + 1, record_every, dtype=np.int64)
    if steps[-1] != n_steps:
        steps = np.append(steps, n_steps)
    times = steps * dt
    sizes = sol.ell + eta
    particle = 1.0 / (sizes * sizes)
    strain = 0.5 * sol.K * (sol.strain + eta) ** 2
    kinetic = 0.5 * mu * vel * vel
    return Trajectory(
        times=times,
        eta=eta,
        velocity=vel,
        particle_energy=particle,
        strain_energy=strain,
        kinetic_energy=kinetic,
        total_energy=particle + strain + kinetic,
    )


def measured_frequency(traj: Trajectory) -> float:
    """Angular frequency from the mean spacing of interpolated zero crossings.

    Crossings are taken on eta minus its mean; at least four are required.
    """
    s = traj.eta - traj.eta.mean()
    t = traj.times
    idx = np.nonzero(s[:-1] * s[1:] < 0.0)[0]
    if len(idx) < 4:
        raise AnalysisError(
            f"need at least 4 zero crossings to estimate a frequency, "
            f"found {len(idx)}"
        )
    crossings = t[idx] - s[idx] * (t[idx + 1] - t[idx]) / (s[idx + 1] - s[idx])
    half_periods = np.diff(crossings)
    return math.pi / float(half_periods.mean())


def energy_exchange_stats(traj: Trajectory) -> tuple[float, float]:
    """Quantify the particle <-> strain energy exchange along a trajectory.

    Returns ``(correlation, max_antisymmetry_defect)``: the Pearson
    correlation between the particle- and strain-energy deviations (close
    to -1 for small oscillations) and the largest residual of their sum,
    normalized by the largest particle-energy deviation (the linear
    responses cancel, so this shrinks with amplitude).
    """
    if len(traj.times) < 100:
        raise AnalysisError(
            f"need at least 100 samples, got {len(traj.times)}"
        )
    dp = traj.particle_energy - traj.particle_energy.mean()
    ds = traj.strain_energy - traj.strain_energy.mean()
    norm_p = float(np.abs(dp).max())
    norm_s = float(np.abs(ds).max())
    # a resting trajectory is constant up to the rounding of the mean
    eps = np.finfo(float).eps
    if norm_p <= 8 * eps * abs(float(traj.particle_energy.mean())) or norm_s <= 8 * eps * abs(
        float(traj.strain_energy.mean())
    ):
        raise AnalysisError("energy series are constant; exchange is undefined")
    correlation = float(np.dot(dp, ds) / math.sqrt(np.dot(dp, dp) * np.dot(ds, ds)))
    defect = float(np.abs(dp + ds).max() / norm_p)
    return correlation, defect
