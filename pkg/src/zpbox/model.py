"""Reduced (dimensionless) unit system for the particle-in-an-elastic-box model.

Internal computations are dimensionless throughout:

    length       -> units of the unstrained box size d
    energy       -> units of the ground-state confinement energy
                    eps0 = h^2 / (8 m d^2)
    temperature  -> units of T0 = eps0 / k_B
    time         -> units of d * sqrt(m / eps0)
    force        -> units of eps0 / d
    stiffness    -> units of eps0 / d^2

In these units the level spectrum is n^2/ell^2, the ground-state wall
force is 2, and the spring constant enters only through the single
dimensionless number K = k d^2 / eps0.  The wall inertia enters the
dynamics through mu = M / m.

Constants are CODATA-2018 (both are exact by SI definition).
"""

import math
from dataclasses import dataclass

from .errors import ValidationError

# CODATA-2018 defined values (exact)
PLANCK_H = 6.62607015e-34  # J s
BOLTZMANN_KB = 1.380649e-23  # J / K

#: Wall-to-particle mass ratio used when no wall mass is given.  The
#: breathing dynamics needs an inertia; a heavy wall keeps the particle
#: adiabatic on the wall's time scale.
DEFAULT_MASS_RATIO = 1000.0


def _require_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ValidationError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class PhysicalInput:
    """SI description of the system: particle, box, restoring spring, wall.

    ``wall_mass`` may be omitted; it then defaults to
    ``DEFAULT_MASS_RATIO * particle_mass``.
    """

    particle_mass: float  # kg
    box_size: float  # m
    spring_stiffness: float  # N / m
    wall_mass: float | None = None  # kg

    def __post_init__(self):
        _require_positive("particle_mass", self.particle_mass)
        _require_positive("box_size", self.box_size)
        _require_positive("spring_stiffness", self.spring_stiffness)
        if self.wall_mass is None:
            object.__setattr__(
                self, "wall_mass", DEFAULT_MASS_RATIO * self.particle_mass
            )
        _require_positive("wall_mass", self.wall_mass)


@dataclass(frozen=True)
class ReducedSystem:
    """Dimensionless system parameters plus the scales to convert back to SI."""

    K: float  # spring stiffness, units eps0 / d^2
    mu: float  # wall mass in units of the particle mass
    energy_scale: float  # eps0 in joules
    length_scale: float  # d in meters
    time_scale: float  # d * sqrt(m / eps0) in seconds
    temperature_scale: float  # T0 = eps0 / k_B in kelvin

    def __post_init__(self):
        for name in (
            "K",
            "mu",
            "energy_scale",
            "length_scale",
            "time_scale",
            "temperature_scale",
        ):
            _require_positive(name, getattr(self, name))

    @property
    def force_scale(self) -> float:
        """eps0 / d in newtons."""
        return self.energy_scale / self.length_scale

    @property
    def stiffness_scale(self) -> float:
        """eps0 / d^2 in newtons per meter."""
        return self.energy_scale / self.length_scale**2


def to_reduced(inp: PhysicalInput) -> ReducedSystem:
    """Convert an SI description into the internal dimensionless system.

    Args:
        inp: validated SI parameters.

    Returns:
        ReducedSystem with K = k d^2 / eps0 and all conversion scales.
    """
    m = inp.particle_mass
    d = inp.box_size
    eps0 = PLANCK_H**2 / (8.0 * m * d**2)
    return ReducedSystem(
        K=inp.spring_stiffness * d**2 / eps0,
        mu=inp.wall_mass / m,
        energy_scale=eps0,
        length_scale=d,
        time_scale=d * math.sqrt(m / eps0),
        temperature_scale=eps0 / BOLTZMANN_KB,
    )


_SCALE_FOR_KIND = {
    "energy": lambda s: s.energy_scale,
    "length": lambda s: s.length_scale,
    "time": lambda s: s.time_scale,
    "temperature": lambda s: s.temperature_scale,
    "force": lambda s: s.force_scale,
    "stiffness": lambda s: s.stiffness_scale,
}


def from_reduced(sys: ReducedSystem, value: float, kind: str) -> float:
    """Convert a dimensionless ``value`` of dimension ``kind`` back to SI.

    ``kind`` is one of energy, length, time, temperature, force, stiffness.
    """
    try:
        scale = _SCALE_FOR_KIND[kind]
    except KeyError:
        raise ValidationError(
            f"unsupported kind {kind!r}; expected one of {sorted(_SCALE_FOR_KIND)}"
        ) from None
    return float(value) * scale(sys)
