"""Assembly and analysis-level tests: ranks, patches, eigensolves, invariants."""

import numpy as np
import pytest

from fgplates.errors import ConfigError, MeshError, NumericError
from fgplates.materials import ThermalState, preset, section_stiffness
from fgplates.meshing import Mesh, PlateGeometry, rectangle_mesh
from fgplates import solver as sv

from properties import (
    check_dense_sparse_match,
    check_free_free_modes,
    check_mode_orthogonality,
    check_patch_bending,
    check_patch_membrane,
    check_skew_congruence,
    standard_mesh_set,
)


def _section(name="Al/ZrO2-1", n=0.0, h=0.1, thermal=None):
    return section_stiffness(
        preset(name, gradient_index=n, thickness=h),
        thermal if thermal is not None else ThermalState())


def test_free_free_assemblies_have_six_rigid_modes():
    sec = _section(n=1.0)
    for mesh in standard_mesh_set():
        check_free_free_modes(mesh, sec)


def test_patch_tests():
    check_patch_membrane(_section(n=2.0))
    check_patch_bending(_section(n=2.0))
    check_patch_membrane(_section())
    check_patch_bending(_section())


def test_dense_and_sparse_eigensolvers_agree():
    check_dense_sparse_match()


def test_node_renumbering_is_invisible():
    sec = _section()
    mesh = rectangle_mesh(PlateGeometry(1.0, 1.0), 6, 6)
    rng = np.random.default_rng(7)
    perm = rng.permutation(mesh.node_count)
    inverse = np.empty_like(perm)
    inverse[perm] = np.arange(len(perm))
    permuted = Mesh(nodes=mesh.nodes[perm].copy(),
                    triangles=inverse[mesh.triangles].copy(),
                    node_sets={k: np.sort(inverse[v])
                               for k, v in mesh.node_sets.items()},
                    geometry=mesh.geometry)
    f0 = sv.modal_solve(mesh, sec, 4, "SSSS").frequencies
    f1 = sv.modal_solve(permuted, sec, 4, "SSSS").frequencies
    assert np.abs(f1 / f0 - 1).max() <= 1e-10


def test_zero_skew_transform_is_identity_on_the_spectrum():
    check_skew_congruence()


def test_modes_are_mass_orthonormal():
    check_mode_orthogonality()


def test_clamping_stiffens_the_plate():
    sec = _section()
    mesh = rectangle_mesh(PlateGeometry(1.0, 1.0), 12, 12)
    ops = sv.build_operators(mesh)
    w_ss = sv.static_solve(mesh, sec, -1e4, "SSSS", operators=ops).center_deflection
    w_cc = sv.static_solve(mesh, sec, -1e4, "CCCC", operators=ops).center_deflection
    assert abs(w_cc) < abs(w_ss)
    f_ss = sv.modal_solve(mesh, sec, 1, "SSSS", operators=ops).frequencies[0]
    f_cc = sv.modal_solve(mesh, sec, 1, "CCCC", operators=ops).frequencies[0]
    assert f_cc > f_ss


def test_metal_content_softens_every_response():
    """Raising the gradient index adds metal: deflection grows, frequency and
    buckling load fall, monotonically across n in {0, 1, 2, 5, 10}."""
    mesh = rectangle_mesh(PlateGeometry(1.0, 1.0), 12, 12)
    ops = sv.build_operators(mesh)
    prev_w, prev_f, prev_l = 0.0, np.inf, np.inf
    for n in (0.0, 1.0, 2.0, 5.0, 10.0):
        sec = _section("Si3N4/SUS304", n=n)
        w = abs(sv.static_solve(mesh, sec, -1e4, "SSSS",
                                operators=ops).center_deflection)
        f = sv.modal_solve(mesh, sec, 1, "SSSS", operators=ops).frequencies[0]
        lam = sv.buckling_solve(mesh, sec, sv.uniform_prestress("uniaxial"),
                                "SSSS", operators=ops).critical
        assert w > prev_w and f < prev_f and lam < prev_l
        prev_w, prev_f, prev_l = w, f, lam


def test_biaxial_compression_halves_the_critical_load():
    sec = _section("Al/Al2O3", h=0.01)
    mesh = rectangle_mesh(PlateGeometry(1.0, 1.0), 16, 16)
    ops = sv.build_operators(mesh)
    uni = sv.buckling_solve(mesh, sec, sv.uniform_prestress("uniaxial"),
                            "SSSS", operators=ops).critical
    bi = sv.buckling_solve(mesh, sec, sv.uniform_prestress("biaxial"),
                           "SSSS", operators=ops).critical
    assert bi / uni == pytest.approx(0.5, rel=1e-3)


def test_uniform_heating_lowers_frequencies():
    """Membrane compression from restrained thermal expansion softens the
    bending response before it buckles."""
    hot = ThermalState("uniform", 500.0, 500.0)
    sec_hot = _section("Si3N4/SUS304", n=1.0, thermal=hot)
    sec_cold = _section("Si3N4/SUS304", n=1.0)
    mesh = rectangle_mesh(PlateGeometry(1.0, 1.0), 16, 16)
    ops = sv.build_operators(mesh)
    f_cold = sv.modal_solve(mesh, sec_cold, 1, "SSSS", operators=ops).frequencies[0]
    f_hot = sv.modal_solve(mesh, sec_hot, 1, "SSSS",
                           prestress=-sec_hot.thermal_force,
                           operators=ops).frequencies[0]
    assert 0.0 < f_hot < f_cold


def test_tension_pattern_has_no_buckling_mode():
    sec = _section("Al/Al2O3", h=0.01)
    mesh = rectangle_mesh(PlateGeometry(1.0, 1.0), 12, 12)
    with pytest.raises(NumericError):
        sv.buckling_solve(mesh, sec, np.array([1.0, 0.0, 0.0]), "SSSS")


def test_boundary_condition_dof_tables():
    mesh = rectangle_mesh(PlateGeometry(1.0, 1.0), 4, 4)
    assert len(sv.constrained_dofs(mesh, "SSSS")) == 56
    assert len(sv.constrained_dofs(mesh, "SSSS-movable")) == 56
    assert len(sv.constrained_dofs(mesh, "CCCC")) == 80
    assert len(sv.constrained_dofs(mesh, "SSSS-soft")) == 16
    assert len(sv.constrained_dofs(mesh, "free")) == 0
    custom = sv.constrained_dofs(mesh, {"x0": "clamped", "xa": "simple",
                                        "y0": "free", "yb": "simple"})
    # 25 + 15 + 15 minus corner overlaps: clamped set already holds the three
    # yb components, and the xa/yb corner shares only the deflection dof
    assert len(custom) == 25 + 15 + 15 - 3 - 1
    with pytest.raises(ConfigError):
        sv.constrained_dofs(mesh, "XXXX")
    with pytest.raises(ConfigError):
        sv.constrained_dofs(mesh, {"x0": "weird"})
    with pytest.raises(ConfigError):
        sv.constrained_dofs(mesh, {"rim": "simple"})
    with pytest.raises(ConfigError):
        sv.constrained_dofs(mesh, 3.14)


def test_pressure_assembly_totals():
    mesh = rectangle_mesh(PlateGeometry(1.3, 0.8), 6, 4)
    f = sv.assemble_pressure(mesh, -250.0)
    assert f[2::5].sum() == pytest.approx(-250.0 * 1.3 * 0.8, rel=1e-12)
    assert np.abs(f[0::5]).max() == 0.0 and np.abs(f[3::5]).max() == 0.0


def test_normalization_identities():
    fgm = preset("Al/ZrO2-1", thickness=0.1)
    w = sv.normalize_deflection(-0.01, fgm, 1.0, -1e4)
    assert w > 0.0
    assert sv.normalize_deflection(-0.02, fgm, 1.0, -1e4) == pytest.approx(2 * w)
    with pytest.raises(ConfigError):
        sv.normalize_deflection(1.0, fgm, 1.0, 0.0)
    assert sv.normalize_frequency(0.0, fgm, 1.0) == 0.0
    omega_bar = sv.normalize_frequency(1234.5, fgm, 1.0)
    fourth = sv.frequency_fourth_root(omega_bar, fgm)
    nu = fgm.ceramic.poisson
    assert fourth ** 4 * (1.0 - nu ** 2) == pytest.approx(omega_bar ** 2, rel=1e-12)
    with pytest.raises(ConfigError):
        sv.reference_phase(fgm, "plastic")
    # metal and ceramic references differ by the modulus ratio
    e_ratio = fgm.ceramic.youngs_modulus(300.0) / fgm.metal.youngs_modulus(300.0)
    w_metal = sv.normalize_deflection(-0.01, fgm, 1.0, -1e4, reference="metal")
    assert w / w_metal == pytest.approx(e_ratio, rel=1e-12)


def test_run_case_config_errors():
    good = {
        "analysis": "static",
        "geometry": {"a": 1.0, "b": 1.0},
        "mesh": {"nx": 4, "ny": 4},
        "material": {"preset": "Al/ZrO2-1", "n": 0.0, "h": 0.1},
        "bc": "SSSS",
        "load": {"pressure": -1e4},
    }
    out = sv.run_case(good)
    assert out["analysis"] == "static" and np.isfinite(out["w_center"])
    bad = dict(good, analysis="clairvoyance")
    with pytest.raises(ConfigError):
        sv.run_case(bad)
    with pytest.raises(MeshError):
        sv.run_case(dict(good, mesh={"nx": 0, "ny": 4}))
    with pytest.raises(ConfigError):
        sv.run_case(dict(good, bc="nope"))


def test_run_case_mesh_refinement_settles():
    """One refinement step at the working resolution moves the answer by
    less than half a percent."""
    cfg = {
        "analysis": "static",
        "geometry": {"a": 1.0, "b": 1.0},
        "material": {"preset": "Al/ZrO2-1", "n": 1.0, "h": 0.2,
                     "shear_correction": "constant"},
        "bc": "SSSS",
        "load": {"pressure": -1e6},
        "normalize": {"reference": "metal"},
    }
    coarse = sv.run_case(dict(cfg, mesh={"nx": 32, "ny": 32}))
    fine = sv.run_case(dict(cfg, mesh={"nx": 40, "ny": 40}))
    shift = abs(fine["w_center_norm"] / coarse["w_center_norm"] - 1.0)
    assert shift < 0.005
