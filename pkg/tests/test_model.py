import math

import pytest

from zpbox import (
    BOLTZMANN_KB,
    PLANCK_H,
    PhysicalInput,
    ValidationError,
    from_reduced,
    to_reduced,
)

ELECTRON_MASS = 9.109e-31
NANOMETER = 1e-9


def test_unit_stiffness_by_construction():
    # pick k equal to eps0/d^2 so that K comes out as 1
    eps0 = PLANCK_H**2 / (8.0 * ELECTRON_MASS * NANOMETER**2)
    sys = to_reduced(
        PhysicalInput(ELECTRON_MASS, NANOMETER, spring_stiffness=eps0 / NANOMETER**2)
    )
    assert sys.K == pytest.approx(1.0, rel=1e-14)


def test_doubling_box_size_scales_K_by_16():
    k = 0.05
    small = to_reduced(PhysicalInput(ELECTRON_MASS, NANOMETER, k))
    large = to_reduced(PhysicalInput(ELECTRON_MASS, 2 * NANOMETER, k))
    assert large.K / small.K == pytest.approx(16.0, rel=1e-12)


def test_electron_energy_scale_matches_hand_computation():
    # direct arithmetic with the CODATA Planck constant
    expected = 6.62607015e-34**2 / (8.0 * 9.109e-31 * 1e-9**2)
    sys = to_reduced(PhysicalInput(ELECTRON_MASS, NANOMETER, 1.0))
    assert sys.energy_scale == pytest.approx(expected, rel=1e-14)
    assert sys.energy_scale == pytest.approx(6.024921181348256e-20, rel=1e-12)
    assert sys.temperature_scale == pytest.approx(expected / BOLTZMANN_KB, rel=1e-14)


def test_round_trip_si_reduced_si():
    inp = PhysicalInput(
        particle_mass=6.64e-27,  # helium-ish
        box_size=3.6e-10,
        spring_stiffness=1.3,
        wall_mass=2.0e-25,
    )
    sys = to_reduced(inp)
    assert from_reduced(sys, sys.K, "stiffness") == pytest.approx(
        inp.spring_stiffness, rel=1e-12
    )
    assert from_reduced(sys, 1.0, "length") == pytest.approx(inp.box_size, rel=1e-12)
    assert sys.mu * inp.particle_mass == pytest.approx(inp.wall_mass, rel=1e-12)
    assert from_reduced(sys, 1.0, "energy") == sys.energy_scale
    assert from_reduced(sys, 1.0, "temperature") == sys.temperature_scale
    assert from_reduced(sys, 1.0, "time") == pytest.approx(
        inp.box_size * math.sqrt(inp.particle_mass / sys.energy_scale), rel=1e-12
    )
    assert from_reduced(sys, 1.0, "force") == pytest.approx(
        sys.energy_scale / inp.box_size, rel=1e-12
    )


def test_wall_mass_defaults_to_heavy_wall():
    inp = PhysicalInput(ELECTRON_MASS, NANOMETER, 1.0)
    assert inp.wall_mass == pytest.approx(1000.0 * ELECTRON_MASS, rel=1e-15)
    assert to_reduced(inp).mu == pytest.approx(1000.0, rel=1e-12)


@pytest.mark.parametrize(
    "field,kwargs",
    [
        ("particle_mass", dict(particle_mass=-1.0, box_size=1e-9, spring_stiffness=1.0)),
        ("particle_mass", dict(particle_mass=0.0, box_size=1e-9, spring_stiffness=1.0)),
        ("box_size", dict(particle_mass=1e-30, box_size=0.0, spring_stiffness=1.0)),
        ("box_size", dict(particle_mass=1e-30, box_size=math.nan, spring_stiffness=1.0)),
        (
            "spring_stiffness",
            dict(particle_mass=1e-30, box_size=1e-9, spring_stiffness=-2.0),
        ),
        (
            "wall_mass",
            dict(
                particle_mass=1e-30,
                box_size=1e-9,
                spring_stiffness=1.0,
                wall_mass=math.inf,
            ),
        ),
    ],
)
def test_invalid_inputs_name_the_field(field, kwargs):
    with pytest.raises(ValidationError, match=field):
        PhysicalInput(**kwargs)


def test_unsupported_conversion_kind():
    sys = to_reduced(PhysicalInput(ELECTRON_MASS, NANOMETER, 1.0))
    with pytest.raises(ValidationError, match="kind"):
        from_reduced(sys, 1.0, "momentum")


@pytest.mark.parametrize(
    "mass_factor,size_factor",
    [(2.0, 1.0), (1.0, 2.0), (4.0, 0.5), (0.25, 2.0)],
)
def test_K_invariant_under_compensated_rescaling(mass_factor, size_factor):
    # K = 8 k m d^4 / h^2 stays fixed when k absorbs the m d^4 rescaling
    k0 = 0.7
    base = to_reduced(PhysicalInput(ELECTRON_MASS, NANOMETER, k0))
    k1 = k0 / (mass_factor * size_factor**4)
    scaled = to_reduced(
        PhysicalInput(ELECTRON_MASS * mass_factor, NANOMETER * size_factor, k1)
    )
    assert scaled.K == pytest.approx(base.K, rel=1e-12)
