"""Planar antenna-surface layouts and pairwise link geometry.

The channel assemblers consume three geometric ingredients: a transmit
surface, a receive surface, and the center-to-center link between them.
Surfaces are uniform rectangular element grids centered on their local
origin and lying in their local x-y plane.  The transmit surface's local
frame doubles as the global frame; the receive surface center sits at
``d0 * kappa`` and the receive grid may optionally be rotated.

All functions here are pure and purely geometric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError

__all__ = [
    "SurfaceLayout",
    "LinkGeometry",
    "build_planar_surface",
    "wavevector",
    "global_rx_positions",
    "pairwise_offsets",
    "pair_displacement",
    "alpha_factor",
    "gamma_factor",
    "rayleigh_distance",
]


@dataclass(frozen=True)
class SurfaceLayout:
    """Uniform rectangular element grid centered at the local origin.

    ``positions`` holds one row per element (meters, local frame, z = 0),
    ordered row-major over (vertical index, horizontal index).
    ``aperture_diag`` is the diagonal of the n_h*spacing by n_v*spacing
    rectangle the grid covers.
    """

    n_h: int
    n_v: int
    spacing: float
    positions: np.ndarray
    element_area: float
    aperture_diag: float

    @property
    def count(self) -> int:
        return self.n_h * self.n_v


@dataclass(frozen=True)
class LinkGeometry:
    """Center-to-center link: distance ``d0`` along the unit vector ``kappa``.

    ``kappa`` points from the TX surface center toward the RX surface center
    and is built from the elevation/azimuth pair via :func:`wavevector`.
    ``rx_rotation``, when given, maps RX-local element offsets into the
    global frame; when absent the two surfaces are parallel.
    """

    d0: float
    theta: float
    phi: float
    kappa: np.ndarray
    rx_rotation: np.ndarray | None = None

    @classmethod
    def from_angles(
        cls,
        d0: float,
        theta: float = 0.0,
        phi: float = 0.0,
        rx_rotation: np.ndarray | None = None,
    ) -> "LinkGeometry":
        """Construct a link at distance ``d0`` toward direction (theta, phi)."""
        if d0 <= 0:
            raise DegenerateGeometryError(f"link distance must be positive, got {d0}")
        if rx_rotation is not None:
            rx_rotation = np.asarray(rx_rotation, dtype=float)
            if rx_rotation.shape != (3, 3):
                raise ValueError("rx_rotation must be a 3x3 matrix")
            rx_rotation.setflags(write=False)
        return cls(float(d0), float(theta), float(phi), wavevector(theta, phi), rx_rotation)


def build_planar_surface(n_h: int, n_v: int, spacing: float) -> SurfaceLayout:
    """Build a centered ``n_h`` x ``n_v`` grid with the given element spacing.

    Element (i, j), both indices 0-based, sits at
    ``((i - (n_h-1)/2)*spacing, (j - (n_v-1)/2)*spacing, 0)``; the flat
    element order runs j-major (all of row j before row j+1).  Element
    area is ``spacing**2``.
    """
    if n_h < 1 or n_v < 1:
        raise ValueError(f"element counts must be >= 1, got {n_h} x {n_v}")
    if spacing <= 0:
        raise ValueError(f"element spacing must be positive, got {spacing}")
    xs = (np.arange(n_h) - (n_h - 1) / 2.0) * spacing
    ys = (np.arange(n_v) - (n_v - 1) / 2.0) * spacing
    gx, gy = np.meshgrid(xs, ys)
    positions = np.column_stack([gx.ravel(), gy.ravel(), np.zeros(n_h * n_v)])
    positions.setflags(write=False)
    return SurfaceLayout(
        n_h=int(n_h),
        n_v=int(n_v),
        spacing=float(spacing),
        positions=positions,
        element_area=float(spacing) ** 2,
        aperture_diag=float(np.hypot(n_h * spacing, n_v * spacing)),
    )


def wavevector(theta: float, phi: float) -> np.ndarray:
    """Unit propagation vector [sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)]."""
    st = np.sin(theta)
    kappa = np.array([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])
    kappa.setflags(write=False)
    return kappa


def global_rx_positions(link: LinkGeometry, rx: SurfaceLayout) -> np.ndarray:
    """RX element offsets from the RX center, expressed in the global frame."""
    if link.rx_rotation is None:
        return rx.positions
    return rx.positions @ link.rx_rotation.T


def pairwise_offsets(tx: SurfaceLayout, rx: SurfaceLayout, link: LinkGeometry) -> np.ndarray:
    """All pair offsets q_m - p_n in the global frame, shape (M, N, 3)."""
    qs = global_rx_positions(link, rx)
    return qs[:, None, :] - tx.positions[None, :, :]


def pair_displacement(link: LinkGeometry, p_n: np.ndarray, q_m: np.ndarray) -> np.ndarray:
    """Displacement from TX element at p_n to RX element at q_m.

    Both offsets must already be expressed in the global frame; the result
    is ``d0*kappa - p_n + q_m``.
    """
    return link.d0 * link.kappa - np.asarray(p_n, dtype=float) + np.asarray(q_m, dtype=float)


def alpha_factor(link: LinkGeometry, p_n: np.ndarray, q_m: np.ndarray) -> float:
    """Exact pair distance divided by d0.

    alpha = sqrt(1 + 2*(q-p)'kappa/d0 + |q-p|^2/d0^2), so that the pair
    distance is exactly alpha*d0.
    """
    diff = np.asarray(q_m, dtype=float) - np.asarray(p_n, dtype=float)
    d0 = link.d0
    radicand = 1.0 + 2.0 * float(diff @ link.kappa) / d0 + float(diff @ diff) / d0**2
    if radicand <= 0.0:
        raise DegenerateGeometryError(
            "element pair coincides with the link axis origin (zero pair distance)"
        )
    return float(np.sqrt(radicand))


def gamma_factor(link: LinkGeometry, p_n: np.ndarray, q_m: np.ndarray) -> float:
    """Projection-based lower bound on the pair distance ratio.

    gamma = 1 + (q-p)'kappa/d0.  By Cauchy-Schwarz gamma <= alpha, with
    equality when q - p is parallel to kappa.  Pairs with gamma <= 0 sit
    behind the phase reference plane and are rejected.
    """
    diff = np.asarray(q_m, dtype=float) - np.asarray(p_n, dtype=float)
    gamma = 1.0 + float(diff @ link.kappa) / link.d0
    if gamma <= 0.0:
        raise DegenerateGeometryError(
            f"projection factor {gamma:g} is not positive; element pair lies behind "
            "the phase reference plane"
        )
    return gamma


def rayleigh_distance(tx: SurfaceLayout, rx: SurfaceLayout, wavelength: float) -> float:
    """Far-field onset distance 2*(D_tx + D_rx)^2 / wavelength.

    D is each surface's aperture diagonal; the result is symmetric in the
    two surfaces.
    """
    if wavelength <= 0:
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    total = tx.aperture_diag + rx.aperture_diag
    return 2.0 * total * total / wavelength
