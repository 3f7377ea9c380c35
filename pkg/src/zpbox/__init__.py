"""zpbox: a quantum particle in a 1-D box with elastically restrained walls.

The ground-state particle pushes its walls outward with a nonzero force
even at zero temperature; against a finite spring this strains the box,
binds the pair, stiffens the restoring force, and drives an energy
exchange when the box size oscillates.  This package computes all of it
in reduced units (see :mod:`zpbox.model`) and ships a CLI (``zpbox``).
"""

from .errors import (
    AnalysisError,
    DomainError,
    NumericalError,
    UsageError,
    ValidationError,
    ZpboxError,
)
from .model import (
    BOLTZMANN_KB,
    DEFAULT_MASS_RATIO,
    PLANCK_H,
    PhysicalInput,
    ReducedSystem,
    from_reduced,
    to_reduced,
)
from .spectrum import (
    collision_frequency,
    count_nodes,
    energy_level,
    position_expectation,
    quantum_size,
    wall_force,
    wavefunction,
    wavenumber,
)
from .equilibrium import (
    StrainSolution,
    binding_energy,
    effective_stiffness,
    minimize_oracle,
    perturbed_energy,
    solve_equilibrium,
    total_energy,
)
from .thermal import (
    ThermalPoint,
    equilibrium_size_at_t,
    expansion_coefficient,
    mean_wall_force,
    occupancies,
    thermal_sweep,
)
from .dynamics import (
    Trajectory,
    default_time_step,
    energy_exchange_stats,
    integrate,
    measured_frequency,
    restoring_force,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "BOLTZMANN_KB",
    "DEFAULT_MASS_RATIO",
    "DomainError",
    "NumericalError",
    "PLANCK_H",
    "PhysicalInput",
    "ReducedSystem",
    "StrainSolution",
    "ThermalPoint",
    "Trajectory",
    "UsageError",
    "ValidationError",
    "ZpboxError",
    "binding_energy",
    "collision_frequency",
    "count_nodes",
    "default_time_step",
    "effective_stiffness",
    "energy_exchange_stats",
    "energy_level",
    "equilibrium_size_at_t",
    "expansion_coefficient",
    "from_reduced",
    "integrate",
    "mean_wall_force",
    "measured_frequency",
    "minimize_oracle",
    "occupancies",
    "perturbed_energy",
    "position_expectation",
    "quantum_size",
    "restoring_force",
    "solve_equilibrium",
    "thermal_sweep",
    "to_reduced",
    "total_energy",
    "wall_force",
    "wavefunction",
    "wavenumber",
]
