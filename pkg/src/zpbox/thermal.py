"""Finite-temperature behavior: occupancies, mean wall force, ell(T).

Temperatures are measured in units of T0 = eps0/k_B.  Level occupancies
follow the Boltzmann weights exp(-(n^2 - 1) eps0'/t) with eps0' = 1/ell^2
the ground-state energy of the box at its current size, so the thermal
average and the strain are solved self-consistently: hotter particles
push harder, the box yields further, the level spacing shrinks.

Below t ~ 1 the ground state dominates and the strain saturates at its
zero-point value; the expansion coefficient therefore vanishes at low t
and turns positive around t ~ 1.  Nothing in this model contracts the
box, so the coefficient is never negative here.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ValidationError, ZpboxError
from .equilibrium import solve_equilibrium
from .spectrum import MAX_LEVEL, wall_force

_TAIL_EXPONENT = 37.0  # discarded occupancy tail < e^-37 ~ 1e-16
_MIN_LEVELS = 4
_FIXED_POINT_TOL = 1e-12
_FIXED_POINT_DAMPING = 0.5
_MAX_FIXED_POINT_STEPS = 10_000


@dataclass(frozen=True)
class ThermalPoint:
    """Self-consistent state of the box at one temperature."""

    t: float  # temperature, units T0
    ell_t: float  # self-consistent relative box size
    occupancies: tuple[float, ...]  # p_1 .. p_{n_max} at (t, ell_t)
    mean_force: float  # occupancy-weighted wall force at ell_t
    alpha: float  # (1/ell) d ell/dt; NaN where the centered step is invalid
    n_max: int


def _check_temperature(t: float) -> float:
    t = float(t)
    if math.isnan(t) or t < 0.0:
        raise ValidationError(f"temperature t must be >= 0, got {t!r}")
    return t


def _check_size(ell: float) -> float:
    ell = float(ell)
    if not math.isfinite(ell) or ell <= 0.0:
        raise ValidationError(f"box size ell must be positive and finite, got {ell!r}")
    return ell


def _n_levels(t: float, ell: float) -> int:
    if t == 0.0:
        return _MIN_LEVELS
    x = 1.0 / (ell * ell * t)  # level-spacing unit eps0'/t
    if x == 0.0:
        raise ValidationError(f"temperature t = {t!r} is too large to truncate")
    n = int(math.sqrt(_TAIL_EXPONENT / x + 1.0)) + 1
    n = max(n, _MIN_LEVELS)
    if n > MAX_LEVEL:
        raise ValidationError(
            f"temperature t = {t!r} needs more than {MAX_LEVEL} levels"
        )
    return n


def occupancies(t: float, ell: float = 1.0) -> np.ndarray:
    """Boltzmann occupation probabilities p_1..p_{n_max} at temperature t.

    Truncated at the first level whose weight drops below e^-37 (at least
    four levels are always reported).  At t = 0 only the ground state is
    occupied.
    """
    t = _check_temperature(t)
    ell = _check_size(ell)
    n_max = _n_levels(t, ell)
    if t == 0.0:
        p = np.zeros(n_max)
        p[0] = 1.0
        return p
    n = np.arange(1, n_max + 1, dtype=float)
    exponents = -(n * n - 1.0) / (ell * ell * t)
    exponents[0] = 0.0
    weights = np.exp(exponents)
    return weights / weights.sum()


def mean_wall_force(t: float, ell: float = 1.0) -> float:
    """Occupancy-averaged outward wall force at temperature t.

    At t = 0 this is exactly the zero-point force wall_force(1, ell);
    thermal excitation only ever adds to it.
    """
    p = occupancies(t, ell)
    n = np.arange(1, len(p) + 1, dtype=float)
    # per-level forces mirror wall_force's arithmetic exactly, so the t = 0
    # reduction to the zero-point force is bitwise
    forces = 2.0 * ((n * n) / (ell * ell)) / ell
    return float((p * forces).sum())


def _solve_ell(K: float, t: float) -> tuple[float, np.ndarray, float]:
    """Damped fixed-point solve of K (ell - 1) = mean_wall_force(t, ell)."""
    seed = solve_equilibrium(K)  # validates K
    ell = seed.ell
    delta = math.inf
    for _ in range(_MAX_FIXED_POINT_STEPS):
        implied = 1.0 + mean_wall_force(t, ell) / K
        delta = implied - ell
        if abs(delta) < _FIXED_POINT_TOL:
            p = occupancies(t, ell)
            return ell, p, mean_wall_force(t, ell)
        ell = ell + _FIXED_POINT_DAMPING * delta
    raise NumericalError(
        f"thermal size iteration did not converge for K={K}, t={t} "
        f"(last update {delta:.3e})"
    )


def equilibrium_size_at_t(K: float, t: float) -> ThermalPoint:
    """Self-consistent box size and occupancies at temperature t.

    At t = 0 this reduces exactly to the zero-temperature equilibrium.
    The expansion coefficient is attached via a centered difference with
    the default step, or NaN at temperatures too close to zero for one.
    """
    t = _check_temperature(t)
    ell, p, force = _solve_ell(K, t)
    step = _default_step(t)
    alpha = expansion_coefficient(K, t, step) if t - step > 0.0 else math.nan
    return ThermalPoint(
        t=t,
        ell_t=ell,
        occupancies=tuple(float(v) for v in p),
        mean_force=force,
        alpha=alpha,
        n_max=len(p),
    )


def _default_step(t: float) -> float:
    return max(1e-3, t / 100.0)


def expansion_coefficient(K: float, t: float, step: float | None = None) -> float:
    """Relative expansion rate (1/ell) d ell/dt by centered finite difference."""
    t = _check_temperature(t)
    if step is None:
        step = _default_step(t)
    step = float(step)
    if not math.isfinite(step) or step <= 0.0:
        raise ValidationError(f"step must be positive and finite, got {step!r}")
    if not t - step > 0.0:
        raise ValidationError(
            f"need t - step > 0 for a centered difference (t={t}, step={step})"
        )
    ell_plus, _, _ = _solve_ell(K, t + step)
    ell_minus, _, _ = _solve_ell(K, t - step)
    ell_mid, _, _ = _solve_ell(K, t)
    return (ell_plus - ell_minus) / (2.0 * step * ell_mid)


def thermal_sweep(K: float, t_grid) -> list[ThermalPoint]:
    """Evaluate the self-consistent state over an increasing temperature grid."""
    grid = [float(t) for t in t_grid]
    if not grid:
        raise ValidationError("temperature grid must be non-empty")
    for t in grid:
        if math.isnan(t) or math.isinf(t) or t < 0.0:
            raise ValidationError(f"grid temperatures must be finite and >= 0, got {t!r}")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValidationError("temperature grid must be strictly increasing")
    points = []
    for t in grid:
        try:
            points.append(equilibrium_size_at_t(K, t))
        except ZpboxError as exc:
            raise NumericalError(f"thermal sweep failed at t={t}: {exc}") from exc
    return points
