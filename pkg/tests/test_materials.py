"""Material model tests: phase data, homogenization, conduction, section builds.

The frozen reference numbers were produced by independent evaluations of the
published property fits and by closed-form integrals of mixture-rule sections;
they pin the implementation, not the other way round.
"""

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fgplates.errors import DomainError
from fgplates.materials import (
    FgmSection,
    ShearCorrection,
    ThermalState,
    bulk_shear_moduli,
    effective_elastic,
    effective_transport,
    load_material,
    material_from_dict,
    mori_tanaka_moduli,
    preset,
    section_stiffness,
    shear_correction_factors,
    temperature_profile,
    volume_fraction,
)

from properties import check_mt_bounds_and_roundtrip, check_profile_residual


def test_phase_constants_at_room_temperature():
    fgm = preset("Si3N4/SUS304")
    assert fgm.ceramic.youngs_modulus(300.0) == pytest.approx(322271471409.4, rel=1e-12)
    assert fgm.metal.youngs_modulus(300.0) == pytest.approx(207787706560.0, rel=1e-12)
    assert fgm.ceramic.youngs_modulus(600.0) == pytest.approx(304610272475.2, rel=1e-12)
    assert fgm.ceramic.thermal_expansion(300.0) == pytest.approx(7.474557055e-06, rel=1e-12)
    assert fgm.metal.thermal_expansion(300.0) == pytest.approx(1.53210114e-05, rel=1e-12)


def test_midplane_mori_tanaka_properties():
    """At the mid-plane of an n=1 graded section the ceramic fraction is 1/2."""
    fgm = preset("Si3N4/SUS304", gradient_index=1.0, thickness=0.1)
    assert volume_fraction(0.0, fgm) == pytest.approx(0.5, abs=1e-15)
    e, nu = effective_elastic(fgm, 0.0, 300.0)
    assert e == pytest.approx(258130274827.47305, rel=1e-12)
    assert nu == pytest.approx(0.2790292978414645, rel=1e-12)
    cond, alpha, rho = effective_transport(fgm, 0.0, 300.0)
    assert cond == pytest.approx(10.556472114137483, rel=1e-12)
    assert alpha == pytest.approx(1.1091738230404967e-05, rel=1e-12)
    assert rho == pytest.approx(5268.0, rel=1e-12)


def test_mori_tanaka_bounds_and_roundtrip():
    check_mt_bounds_and_roundtrip(preset("Si3N4/SUS304", gradient_index=2.0))
    check_mt_bounds_and_roundtrip(preset("Al/ZrO2-1", gradient_index=0.5))


def test_midplane_conduction_temperature():
    fgm = preset("Si3N4/SUS304", gradient_index=1.0, thickness=0.1)
    thermal = ThermalState.gradient(400.0, 300.0)
    assert temperature_profile(thermal, fgm, 0.0) == pytest.approx(
        346.63501160039425, rel=1e-12)


def test_conduction_flux_is_constant():
    check_profile_residual(preset("Si3N4/SUS304", gradient_index=1.0,
                                  homogenization="rule_of_mixtures"))
    check_profile_residual(preset("Si3N4/SUS304", gradient_index=5.0,
                                  homogenization="rule_of_mixtures"))


def test_profile_endpoints_and_modes():
    fgm = preset("Al/Al2O3", gradient_index=2.0, thickness=0.05)
    h = fgm.thickness
    uniform = ThermalState("uniform", 450.0, 450.0)
    zs = np.linspace(-0.5 * h, 0.5 * h, 7)
    np.testing.assert_allclose(temperature_profile(uniform, fgm, zs), 450.0)
    linear = ThermalState.gradient(400.0, 300.0, profile="linear")
    np.testing.assert_allclose(temperature_profile(linear, fgm, 0.0), 350.0)
    # beyond the faces the profile saturates at the face values
    series = ThermalState.gradient(400.0, 300.0)
    assert temperature_profile(series, fgm, h) == pytest.approx(400.0)
    assert temperature_profile(series, fgm, -h) == pytest.approx(300.0)
    # a homogeneous plate conducts linearly, so both profiles coincide
    homog = preset("Al/Al2O3", gradient_index=0.0, thickness=0.05)
    zs = np.linspace(-0.025, 0.025, 11)
    np.testing.assert_allclose(temperature_profile(series, homog, zs),
                               temperature_profile(linear, homog, zs),
                               rtol=1e-14)


def test_energy_shear_factor():
    homog = preset("Al/ZrO2", gradient_index=0.0, thickness=0.1,
                   shear_correction=ShearCorrection("energy"))
    kx, ky = shear_correction_factors(homog, ThermalState())
    assert kx == pytest.approx(5.0 / 6.0, abs=1e-12)
    assert ky == pytest.approx(5.0 / 6.0, abs=1e-12)
    graded = preset("Si3N4/SUS304", gradient_index=1.0, thickness=0.1,
                    shear_correction=ShearCorrection("energy"))
    kx, ky = shear_correction_factors(graded, ThermalState())
    assert kx == pytest.approx(0.8298947784098515, rel=1e-10)
    assert kx == ky


def test_section_frozen_values():
    fgm = preset("Si3N4/SUS304", gradient_index=1.0, thickness=0.1)
    sec = section_stiffness(fgm, ThermalState())
    assert sec.extension[0, 0] == pytest.approx(28245904060.3525, rel=1e-10)
    assert sec.coupling[0, 0] == pytest.approx(102882158.07095197, rel=1e-10)
    assert sec.bending[0, 0] == pytest.approx(23707898.26702812, rel=1e-10)
    assert sec.shear[0, 0] == pytest.approx(8481390600.013633, rel=1e-10)
    assert sec.extension[0, 1] / sec.extension[0, 0] == pytest.approx(
        0.27935259581212735, rel=1e-10)
    assert sec.extension[2, 2] == pytest.approx(10177668720.01636, rel=1e-10)
    assert sec.mass == pytest.approx(526.8, rel=1e-12)
    assert sec.rotary_inertia == pytest.approx(0.439, rel=1e-12)
    # no temperature change relative to the reference, so no thermal loads
    np.testing.assert_allclose(sec.thermal_force, 0.0, atol=1e-6)
    np.testing.assert_allclose(sec.thermal_moment, 0.0, atol=1e-6)


def test_gradient_thermal_resultants():
    fgm = preset("Si3N4/SUS304", gradient_index=1.0, thickness=0.1)
    sec = section_stiffness(fgm, ThermalState.gradient(400.0, 300.0))
    assert sec.thermal_force[0] == pytest.approx(18506317.721647505, rel=1e-10)
    assert sec.thermal_force[1] == pytest.approx(sec.thermal_force[0], rel=1e-12)
    assert sec.thermal_force[2] == 0.0
    assert sec.thermal_moment[0] == pytest.approx(296442.22304341756, rel=1e-10)
    assert sec.thermal_moment[2] == 0.0


def test_homogeneous_section_relations():
    """At n=0 the section is a single material: no coupling, textbook A/D/S."""
    fgm = preset("Al/ZrO2-1", gradient_index=0.0, thickness=0.2)
    sec = section_stiffness(fgm, ThermalState())
    e = fgm.ceramic.youngs_modulus(300.0)
    nu = fgm.ceramic.poisson
    h = fgm.thickness
    q11 = e / (1.0 - nu ** 2)
    g = e / (2.0 * (1.0 + nu))
    np.testing.assert_allclose(sec.coupling, 0.0, atol=1e-9 * abs(q11) * h ** 2)
    assert sec.extension[0, 0] == pytest.approx(q11 * h, rel=1e-12)
    assert sec.bending[0, 0] == pytest.approx(q11 * h ** 3 / 12.0, rel=1e-12)
    assert sec.shear[0, 0] == pytest.approx(5.0 / 6.0 * g * h, rel=1e-12)
    assert sec.shear[0, 1] == 0.0


@pytest.mark.parametrize("n", [0.2, 0.5, 2.7])
def test_mixture_rule_closed_form(n):
    """Mixture-rule sections with equal phase Poisson ratios integrate exactly.

    With nu constant in z the wall stiffness entries reduce to moments of
    E(z) = E_m + dE * u**n over u in [0, 1], which have elementary values.
    This pins the thickness quadrature, including the fractional-index path.
    """
    fgm = preset("Al/Al2O3", gradient_index=n, thickness=0.02,
                 homogenization="rule_of_mixtures")
    sec = section_stiffness(fgm, ThermalState())
    e_c = fgm.ceramic.youngs_modulus(300.0)
    e_m = fgm.metal.youngs_modulus(300.0)
    de = e_c - e_m
    h = fgm.thickness
    q = 1.0 / (1.0 - fgm.ceramic.poisson ** 2)
    a11 = h * (e_m + de / (n + 1)) * q
    b11 = h ** 2 * de * (1 / (n + 2) - 0.5 / (n + 1)) * q
    d11 = h ** 3 * (e_m / 12 + de * (1 / (n + 3) - 1 / (n + 2) + 0.25 / (n + 1))) * q
    rho_c, rho_m = fgm.ceramic.density, fgm.metal.density
    mass = h * (rho_m + (rho_c - rho_m) / (n + 1))
    assert sec.extension[0, 0] == pytest.approx(a11, rel=1e-12)
    assert sec.coupling[0, 0] == pytest.approx(b11, rel=1e-12)
    assert sec.bending[0, 0] == pytest.approx(d11, rel=1e-12)
    assert sec.mass == pytest.approx(mass, rel=1e-12)


def test_stiffness_decreases_with_gradient_index():
    """More metal (larger n) means a softer ceramic-rich wall."""
    prev = np.inf
    for n in (0.0, 0.2, 0.5, 1.0, 2.5, 5.0, 10.0):
        sec = section_stiffness(preset("Si3N4/SUS304", gradient_index=n),
                                ThermalState())
        a11 = sec.extension[0, 0]
        assert a11 < prev
        prev = a11


def test_material_dict_forms():
    base = material_from_dict({"preset": "Si3N4/SUS304", "n": 1.0, "h": 0.1})
    ref = preset("Si3N4/SUS304", gradient_index=1.0, thickness=0.1)
    assert base.ceramic.name == ref.ceramic.name
    assert base.thickness == ref.thickness
    # numeric shear correction and dict form
    m = material_from_dict({"preset": "Al/ZrO2", "shear_correction": 1.0})
    assert m.shear_correction.mode == "constant"
    assert m.shear_correction.value == 1.0
    m = material_from_dict({"preset": "Al/ZrO2", "shear_correction": "energy"})
    assert m.shear_correction.mode == "energy"
    m = material_from_dict({"preset": "Al/ZrO2",
                            "shear_correction": {"mode": "constant", "value": 0.9}})
    assert m.shear_correction.value == 0.9


def test_material_errors():
    with pytest.raises(DomainError):
        preset("unobtainium")
    with pytest.raises(DomainError):
        preset("Al/ZrO2", thickness=-0.1)
    with pytest.raises(DomainError):
        preset("Al/ZrO2", gradient_index=-1.0)
    with pytest.raises(DomainError):
        preset("Al/ZrO2", homogenization="hashin")
    with pytest.raises(DomainError):
        ThermalState(mode="sideways")
    with pytest.raises(DomainError):
        material_from_dict({"ceramic": {"youngs": 1e11}})


def test_load_material_file(tmp_path):
    path = tmp_path / "mat.json"
    path.write_text(json.dumps({"preset": "Al/Al2O3", "n": 2.0, "h": 0.05}))
    fgm = load_material(path)
    sec = section_stiffness(fgm, ThermalState())
    ref = section_stiffness(preset("Al/Al2O3", gradient_index=2.0, thickness=0.05),
                            ThermalState())
    assert sec.extension[0, 0] == ref.extension[0, 0]


@given(vc=st.floats(0.0, 1.0),
       e_c=st.floats(1e10, 5e11),
       e_m=st.floats(1e10, 5e11))
@settings(max_examples=60, deadline=None)
def test_mori_tanaka_moduli_stay_bracketed(vc, e_c, e_m):
    k_c, g_c = bulk_shear_moduli(e_c, 0.3)
    k_m, g_m = bulk_shear_moduli(e_m, 0.3)
    k, g = mori_tanaka_moduli(k_c, g_c, k_m, g_m, vc)
    assert min(k_c, k_m) * (1 - 1e-12) <= k <= max(k_c, k_m) * (1 + 1e-12)
    assert min(g_c, g_m) * (1 - 1e-12) <= g <= max(g_c, g_m) * (1 + 1e-12)


@given(n=st.floats(0.0, 10.0), t_c=st.floats(310.0, 900.0))
@settings(max_examples=40, deadline=None)
def test_conduction_profile_is_monotone_and_bounded(n, t_c):
    fgm = preset("Si3N4/SUS304", gradient_index=n, thickness=0.1)
    thermal = ThermalState.gradient(t_c, 300.0)
    zs = np.linspace(-0.05, 0.05, 101)
    temps = temperature_profile(thermal, fgm, zs)
    assert temps.min() >= 300.0 - 1e-9 * t_c
    assert temps.max() <= t_c + 1e-9 * t_c
    assert np.all(np.diff(temps) >= -1e-9 * t_c)
