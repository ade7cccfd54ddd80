"""Mesh generation, validation, and plmesh serialization tests."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fgplates.errors import MeshError, ParseError
from fgplates.meshing import (
    Mesh,
    PlateGeometry,
    mesh_from_text,
    mesh_to_text,
    perforated_mesh,
    read_mesh,
    rectangle_mesh,
    validate_mesh,
    write_mesh,
)


def test_rectangle_counts_and_sets():
    mesh = rectangle_mesh(PlateGeometry(2.0, 1.0), 6, 4)
    assert mesh.node_count == 7 * 5
    assert mesh.triangle_count == 2 * 6 * 4
    for name, count in (("x0", 5), ("xa", 5), ("y0", 7), ("yb", 7)):
        assert len(mesh.node_sets[name]) == count
    np.testing.assert_allclose(mesh.nodes[mesh.node_sets["x0"], 0], 0.0)
    np.testing.assert_allclose(mesh.nodes[mesh.node_sets["xa"], 0], 2.0)
    np.testing.assert_allclose(mesh.nodes[mesh.node_sets["yb"], 1], 1.0)


@pytest.mark.parametrize("diagonal", ["alternating", "right", "left"])
def test_rectangle_area_partition(diagonal):
    mesh = rectangle_mesh(PlateGeometry(1.4, 0.6), 5, 3, diagonal)
    areas = mesh.areas()
    assert np.all(areas > 0.0)
    assert areas.sum() == pytest.approx(1.4 * 0.6, rel=1e-12)


def test_skew_area_partition():
    """Shearing the planform by angle psi scales its area by cos(psi)."""
    mesh = rectangle_mesh(PlateGeometry(1.0, 1.0, 30.0), 4, 4)
    assert mesh.areas().sum() == pytest.approx(np.cos(np.radians(30.0)), rel=1e-12)


def test_perforated_counts_and_hole_ring():
    geometry = PlateGeometry(1.0, 1.0, hole_radius=0.2)
    mesh = perforated_mesh(geometry, 16, 3)
    assert mesh.node_count == 16 * (3 + 1)
    assert mesh.triangle_count == 2 * 16 * 3
    hole = mesh.node_sets["hole"]
    assert len(hole) == 16
    center = np.array([0.5, 0.5])
    radii = np.linalg.norm(mesh.nodes[hole] - center, axis=1)
    np.testing.assert_allclose(radii, 0.2, atol=1e-12)
    # quarter symmetry of the ring
    ring = mesh.nodes[hole] - center
    rotated = ring @ np.array([[0.0, 1.0], [-1.0, 0.0]])
    for point in rotated:
        assert np.min(np.linalg.norm(ring - point, axis=1)) < 1e-12


def test_perforated_area_matches_annular_planform():
    geometry = PlateGeometry(1.0, 1.0, hole_radius=0.2)
    mesh = perforated_mesh(geometry, 32, 5)
    areas = mesh.areas()
    assert np.all(areas > 0.0)
    expected = 1.0 - np.pi * 0.2 ** 2
    # the polygonal hole rim keeps slightly more material than the circle
    assert abs(areas.sum() / expected - 1.0) < 0.005


def test_geometry_errors():
    with pytest.raises(MeshError):
        PlateGeometry(-1.0, 1.0)
    with pytest.raises(MeshError):
        PlateGeometry(1.0, 1.0, 95.0)
    with pytest.raises(MeshError):
        PlateGeometry(1.0, 1.0, hole_radius=0.6)


def test_mesh_builder_errors():
    geometry = PlateGeometry(1.0, 1.0)
    with pytest.raises(MeshError):
        rectangle_mesh(geometry, 0, 2)
    with pytest.raises(MeshError):
        rectangle_mesh(geometry, 2, 2, "diag")
    with pytest.raises(MeshError):
        perforated_mesh(geometry, 16, 3)  # no hole radius
    with pytest.raises(MeshError):
        perforated_mesh(PlateGeometry(1.0, 1.0, hole_radius=0.2), 7, 3)


def test_validate_mesh_rejects_bad_connectivity():
    mesh = rectangle_mesh(PlateGeometry(1.0, 1.0), 2, 2)
    clockwise = Mesh(nodes=mesh.nodes, triangles=mesh.triangles[:, ::-1].copy(),
                     node_sets=mesh.node_sets, geometry=mesh.geometry)
    with pytest.raises(MeshError):
        validate_mesh(clockwise)
    dangling = Mesh(nodes=mesh.nodes, triangles=np.array([[0, 1, 99]]),
                    node_sets={}, geometry=mesh.geometry)
    with pytest.raises(MeshError):
        validate_mesh(dangling)


def test_plmesh_file_roundtrip(tmp_path):
    mesh = perforated_mesh(PlateGeometry(1.0, 1.0, hole_radius=0.25), 16, 4)
    path = tmp_path / "plate.plmesh"
    write_mesh(mesh, path)
    back = read_mesh(path)
    assert np.array_equal(mesh.nodes, back.nodes)
    assert np.array_equal(mesh.triangles, back.triangles)
    assert set(mesh.node_sets) == set(back.node_sets)
    for name, ids in mesh.node_sets.items():
        assert np.array_equal(ids, back.node_sets[name])
    assert back.geometry.hole_radius == mesh.geometry.hole_radius


def test_parse_errors():
    with pytest.raises(ParseError):
        mesh_from_text("garbage\n")
    with pytest.raises(ParseError):
        mesh_from_text("plmesh 1\nnodes 1\n0.0\n")  # wrong column count
    good = mesh_to_text(rectangle_mesh(PlateGeometry(1.0, 1.0), 2, 2))
    truncated = "\n".join(good.splitlines()[:5])
    with pytest.raises(ParseError):
        mesh_from_text(truncated)


def test_read_mesh_missing_file(tmp_path):
    with pytest.raises((ParseError, OSError)):
        read_mesh(tmp_path / "absent.plmesh")


@given(nx=st.integers(1, 5), ny=st.integers(1, 5),
       diagonal=st.sampled_from(["alternating", "right", "left"]),
       length=st.floats(0.3, 3.0), width=st.floats(0.3, 3.0),
       skew=st.floats(-40.0, 40.0))
@settings(max_examples=40, deadline=None)
def test_plmesh_text_roundtrip_exact(nx, ny, diagonal, length, width, skew):
    """Serialization uses repr floats, so the round trip is bit-exact."""
    mesh = rectangle_mesh(PlateGeometry(length, width, skew), nx, ny, diagonal)
    back = mesh_from_text(mesh_to_text(mesh))
    assert np.array_equal(mesh.nodes, back.nodes)
    assert np.array_equal(mesh.triangles, back.triangles)
    assert back.geometry.skew_deg == mesh.geometry.skew_deg
    validate_mesh(back)
