"""Free-space dyadic kernel and the exact coupled reference channel.

Every TX/RX element pair couples through a 3x3 complex dyad evaluated at
the pair displacement vector.  Stacking the dyads block-wise over all
pairs yields the dense reference matrix (variant tag ``OCM``) against
which the separable approximations in :mod:`hmimo.separable` are
measured.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPointsError
from .geometry import LinkGeometry, SurfaceLayout, pairwise_offsets

__all__ = [
    "MODEL_VARIANTS",
    "SIGN_AS_PRINTED",
    "SIGN_TRANSVERSE",
    "BlockChannelMatrix",
    "green_dyadic",
    "green_dyadic_far",
    "assemble_ocm",
]

#: Recognized channel-model tags, exact reference first.
MODEL_VARIANTS = ("OCM", "PSCM", "PSCM123", "PSCM12", "FSCM")

SIGN_AS_PRINTED = "as-printed"
SIGN_TRANSVERSE = "transverse-projector"

_EYE3 = np.eye(3)


@dataclass(frozen=True)
class BlockChannelMatrix:
    """Dense complex channel matrix made of 3x3 polarization blocks.

    Block (m, n) couples RX element m to TX element n and occupies dense
    rows ``3m..3m+2`` and columns ``3n..3n+2``.  ``scale_applied`` records
    whether the physical channel scale has been multiplied in; entries are
    raw dyad values while it is False.
    """

    matrix: np.ndarray
    m_count: int
    n_count: int
    variant: str
    scale_applied: bool = False

    def __post_init__(self):
        if self.variant not in MODEL_VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}, expected one of {MODEL_VARIANTS}")
        expected = (3 * self.m_count, 3 * self.n_count)
        if self.matrix.shape != expected:
            raise ValueError(f"matrix shape {self.matrix.shape} does not match blocks {expected}")

    def block(self, m: int, n: int) -> np.ndarray:
        """The 3x3 block coupling RX element m to TX element n."""
        return self.matrix[3 * m : 3 * m + 3, 3 * n : 3 * n + 3]

    @property
    def blocks(self) -> np.ndarray:
        """View of the matrix as an (M, N, 3, 3) block array."""
        m, n = self.m_count, self.n_count
        return self.matrix.reshape(m, 3, n, 3).transpose(0, 2, 1, 3)


def green_dyadic(d_vec: np.ndarray, k0: float) -> np.ndarray:
    """Exact free-space dyad at displacement ``d_vec``.

    With d = |d_vec| and u = d_vec/d:

        (-i / (4 pi d)) * [ (1 + i/(k0 d) - 1/(k0 d)^2) I3
                            + (3/(k0 d)^2 - 3i/(k0 d) - 1) u u' ] * exp(i k0 d)

    The kernel is singular at d = 0 and that case is rejected.
    """
    d_vec = np.asarray(d_vec, dtype=float)
    dist = float(np.sqrt(d_vec @ d_vec))
    if dist == 0.0:
        raise CoincidentPointsError("field point coincides with the source point")
    if k0 <= 0:
        raise ValueError(f"wavenumber must be positive, got {k0}")
    u = d_vec / dist
    kd = k0 * dist
    c1 = 1.0 + 1j / kd - 1.0 / kd**2
    c2 = 3.0 / kd**2 - 3j / kd - 1.0
    return (-1j / (4.0 * np.pi * dist)) * np.exp(1j * kd) * (c1 * _EYE3 + c2 * np.outer(u, u))


def green_dyadic_far(d_vec: np.ndarray, k0: float, sign_variant: str = SIGN_AS_PRINTED) -> np.ndarray:
    """Leading-order point form of the dyad, two circulating sign conventions.

    ``as-printed`` keeps the historical I3 + u u' form and is the default;
    ``transverse-projector`` uses I3 - u u', which projects onto the plane
    transverse to propagation and is the form the fully separable channel
    assembler inherits.  The two differ only in that sign.
    """
    d_vec = np.asarray(d_vec, dtype=float)
    dist = float(np.sqrt(d_vec @ d_vec))
    if dist == 0.0:
        raise CoincidentPointsError("field point coincides with the source point")
    if k0 <= 0:
        raise ValueError(f"wavenumber must be positive, got {k0}")
    u = d_vec / dist
    if sign_variant == SIGN_AS_PRINTED:
        dyad = _EYE3 + np.outer(u, u)
    elif sign_variant == SIGN_TRANSVERSE:
        dyad = _EYE3 - np.outer(u, u)
    else:
        raise ValueError(
            f"unknown sign_variant {sign_variant!r}, expected "
            f"{SIGN_AS_PRINTED!r} or {SIGN_TRANSVERSE!r}"
        )
    return (-1j * np.exp(1j * k0 * dist) / (4.0 * np.pi * dist)) * dyad


def assemble_ocm(
    tx: SurfaceLayout, rx: SurfaceLayout, link: LinkGeometry, k0: float
) -> BlockChannelMatrix:
    """Exact coupled reference channel: one dyad per element pair.

    Equivalent to evaluating :func:`green_dyadic` at every pair
    displacement, but vectorized over the whole grid.
    """
    if k0 <= 0:
        raise ValueError(f"wavenumber must be positive, got {k0}")
    offsets = pairwise_offsets(tx, rx, link)  # (M, N, 3)
    dvec = link.d0 * link.kappa + offsets
    dist = np.sqrt(np.einsum("mni,mni->mn", dvec, dvec))
    if np.any(dist == 0.0):
        m, n = np.argwhere(dist == 0.0)[0]
        raise CoincidentPointsError(f"RX element {m} coincides with TX element {n}")
    u = dvec / dist[..., None]
    proj = u[..., :, None] * u[..., None, :]
    kd = k0 * dist
    c1 = 1.0 + 1j / kd - 1.0 / kd**2
    c2 = 3.0 / kd**2 - 3j / kd - 1.0
    pref = (-1j / (4.0 * np.pi * dist)) * np.exp(1j * kd)
    blocks = pref[..., None, None] * (c1[..., None, None] * _EYE3 + c2[..., None, None] * proj)
    m_count, n_count = dist.shape
    dense = blocks.transpose(0, 2, 1, 3).reshape(3 * m_count, 3 * n_count)
    return BlockChannelMatrix(dense, m_count, n_count, "OCM")
