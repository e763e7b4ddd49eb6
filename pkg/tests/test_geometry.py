"""Surface builders, link geometry and the pair-distance factorization."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hmimo import (
    DegenerateGeometryError,
    LinkGeometry,
    alpha_factor,
    build_planar_surface,
    gamma_factor,
    global_rx_positions,
    pair_displacement,
    pairwise_offsets,
    rayleigh_distance,
    wavevector,
)


def test_single_element_sits_at_origin():
    s = build_planar_surface(1, 1, 0.01)
    np.testing.assert_array_equal(s.positions, [[0.0, 0.0, 0.0]])
    assert s.element_area == pytest.approx(1e-4)
    assert s.count == 1


def test_two_element_row_is_centered():
    s = build_planar_surface(2, 1, 0.5)
    np.testing.assert_allclose(s.positions, [[-0.25, 0.0, 0.0], [0.25, 0.0, 0.0]])


def test_grid_order_is_row_major_and_centered():
    s = build_planar_surface(3, 2, 1.0)
    assert s.count == 6
    np.testing.assert_allclose(s.positions.mean(axis=0), [0, 0, 0], atol=1e-15)
    # x sweeps fastest: the first three elements share one y value
    assert len(set(s.positions[:3, 1])) == 1
    assert s.positions[0, 0] < s.positions[1, 0] < s.positions[2, 0]
    assert s.positions[3, 1] - s.positions[0, 1] == pytest.approx(1.0)


def test_odd_grids_nest():
    # the 3x3 element set is a subset of the 5x5 set at the same spacing
    small = build_planar_surface(3, 3, 0.2)
    big = build_planar_surface(5, 5, 0.2)
    big_set = {tuple(np.round(p, 12)) for p in big.positions}
    assert all(tuple(np.round(p, 12)) in big_set for p in small.positions)


def test_positions_are_read_only():
    s = build_planar_surface(2, 2, 0.1)
    with pytest.raises(ValueError):
        s.positions[0, 0] = 1.0


def test_surface_rejects_bad_inputs():
    with pytest.raises(ValueError):
        build_planar_surface(0, 1, 0.1)
    with pytest.raises(ValueError):
        build_planar_surface(1, 1, 0.0)


def test_wavevector_directions():
    np.testing.assert_allclose(wavevector(0.0, 0.0), [0, 0, 1], atol=1e-16)
    np.testing.assert_allclose(wavevector(np.pi / 2, 0.0), [1, 0, 0], atol=1e-15)
    assert np.linalg.norm(wavevector(0.7, 2.1)) == pytest.approx(1.0, rel=1e-15)


def test_link_rejects_nonpositive_distance():
    with pytest.raises(DegenerateGeometryError):
        LinkGeometry.from_angles(0.0)
    with pytest.raises(DegenerateGeometryError):
        LinkGeometry.from_angles(-1.0)


def test_alpha_for_perpendicular_offset():
    # offset 0.3*d0 perpendicular to the link axis: alpha = sqrt(1 + 0.09)
    link = LinkGeometry.from_angles(2.0)
    q = np.array([0.6, 0.0, 0.0])
    assert alpha_factor(link, np.zeros(3), q) == pytest.approx(np.sqrt(1.09), rel=1e-12)


def test_alpha_equals_gamma_for_collinear_offset():
    link = LinkGeometry.from_angles(5.0)
    q = np.array([0.0, 0.0, 0.5])
    assert alpha_factor(link, np.zeros(3), q) == pytest.approx(1.1, rel=1e-12)
    assert gamma_factor(link, np.zeros(3), q) == pytest.approx(1.1, rel=1e-12)


def test_gamma_rejects_pair_behind_reference_plane():
    link = LinkGeometry.from_angles(1.0)
    with pytest.raises(DegenerateGeometryError):
        gamma_factor(link, np.array([0.0, 0.0, 1.5]), np.zeros(3))


_offsets = st.floats(-0.4, 0.4)


@given(px=_offsets, py=_offsets, qx=_offsets, qy=_offsets, qz=st.floats(-0.3, 0.3))
@settings(max_examples=200, deadline=None)
def test_alpha_factorizes_the_pair_distance(px, py, qx, qy, qz):
    link = LinkGeometry.from_angles(1.0, theta=0.4, phi=1.3)
    p = np.array([px, py, 0.0])
    q = np.array([qx, qy, qz])
    dist = np.linalg.norm(pair_displacement(link, p, q))
    alpha = alpha_factor(link, p, q)
    assert dist == pytest.approx(alpha * link.d0, rel=1e-10)
    # the projection factor never exceeds the true distance ratio
    assert gamma_factor(link, p, q) <= alpha + 1e-12


def test_rayleigh_two_single_elements():
    # each 1x1 aperture diagonal is s*sqrt(2), so 2*(2*s*sqrt(2))^2 = 16 s^2
    s = 0.3
    tx = build_planar_surface(1, 1, s)
    rx = build_planar_surface(1, 1, s)
    assert rayleigh_distance(tx, rx, 1.0) == pytest.approx(16 * s * s, rel=1e-12)


def test_rayleigh_doubling_apertures_quadruples():
    lam = 0.5
    base = rayleigh_distance(build_planar_surface(4, 4, 0.1), build_planar_surface(2, 2, 0.1), lam)
    double = rayleigh_distance(build_planar_surface(8, 8, 0.1), build_planar_surface(4, 4, 0.1), lam)
    assert double == pytest.approx(4 * base, rel=1e-12)


def test_rayleigh_is_symmetric_in_the_surfaces():
    tx = build_planar_surface(5, 3, 0.2)
    rx = build_planar_surface(2, 7, 0.11)
    assert rayleigh_distance(tx, rx, 0.7) == rayleigh_distance(rx, tx, 0.7)


def test_rayleigh_rejects_bad_wavelength():
    s = build_planar_surface(2, 2, 0.1)
    with pytest.raises(ValueError):
        rayleigh_distance(s, s, 0.0)


def test_rx_rotation_maps_local_offsets():
    # 90 degree rotation about z sends +x offsets to +y
    rot = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    link = LinkGeometry.from_angles(3.0, rx_rotation=rot)
    rx = build_planar_surface(2, 1, 1.0)
    np.testing.assert_allclose(
        global_rx_positions(link, rx), [[0.0, -0.5, 0.0], [0.0, 0.5, 0.0]], atol=1e-15
    )


def test_rotation_must_be_3x3():
    with pytest.raises(ValueError):
        LinkGeometry.from_angles(1.0, rx_rotation=np.eye(2))


def test_pairwise_offsets_shape_and_content():
    tx = build_planar_surface(3, 1, 0.5)
    rx = build_planar_surface(2, 1, 0.5)
    link = LinkGeometry.from_angles(1.0)
    off = pairwise_offsets(tx, rx, link)
    assert off.shape == (2, 3, 3)
    np.testing.assert_allclose(off[1, 0], rx.positions[1] - tx.positions[0])
