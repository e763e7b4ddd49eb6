"""Transmit-receive separable approximations of the pairwise dyad channel.

Replacing each exact pair distance alpha*d0 by its projection lower bound
gamma*d0 splits the pair phase exactly into a TX-only factor and an
RX-only factor.  What remains per pair is an amplitude dyad built from
four 3x3 blocks; keeping all four gives the full separable model (tag
``PSCM``), truncating the sum gives the cheaper ``PSCM123`` and
``PSCM12`` variants, and taking the infinite-distance limit collapses
everything onto a rank-2 transverse projector (tag ``FSCM``).

Two construction routes are provided and must agree: :func:`pscm_pair`
builds one 3x3 block at a time, while :func:`assemble_pscm` builds the
whole dense matrix as a scaled Khatri-Rao-style product

    G = c * (theta_r theta_t' (x) e3 e3') (.) A

where (x) is a Kronecker and (.) a Hadamard product.  The rank-one
scalar factor ``theta_r theta_t'`` is broadcast over each 3x3 block, so
the e3 e3' factor is never materialized.  The pairwise route is the
slower, obviously-correct oracle; the assembler is the production path.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DegenerateGeometryError
from .geometry import LinkGeometry, SurfaceLayout, global_rx_positions
from .green import BlockChannelMatrix

__all__ = [
    "OmegaPair",
    "ABlockSet",
    "omega_pair",
    "a_blocks",
    "pscm_pair",
    "array_response",
    "assemble_pscm",
    "assemble_fscm",
]

_EYE3 = np.eye(3)

# Which of the four amplitude blocks each variant keeps.
_VARIANT_BLOCKS = {"12": 2, "123": 3, "1234": 4}
_VARIANT_TAGS = {"12": "PSCM12", "123": "PSCM123", "1234": "PSCM"}


class OmegaPair(NamedTuple):
    """Scalar weights of the identity and dyad terms at distance gamma*d0."""

    omega1: complex
    omega2: complex


class ABlockSet(NamedTuple):
    """The four 3x3 amplitude blocks of one pair, plus the gamma that scaled them."""

    a1: np.ndarray
    a2: np.ndarray
    a3: np.ndarray
    a4: np.ndarray
    gamma: float


def omega_pair(k0: float, gamma: float, d0: float) -> OmegaPair:
    """Near-field weights at effective distance gamma*d0.

    omega1 -> 1 and omega2 -> -1 as k0*gamma*d0 grows; the deviations
    decay like 1/(k0*gamma*d0).
    """
    if k0 <= 0 or gamma <= 0 or d0 <= 0:
        raise ValueError(
            f"k0, gamma and d0 must all be positive, got k0={k0}, gamma={gamma}, d0={d0}"
        )
    x = k0 * gamma * d0
    return OmegaPair(1.0 + 1j / x - 1.0 / x**2, 3.0 / x**2 - 3j / x - 1.0)


def a_blocks(
    p_n: np.ndarray, q_m: np.ndarray, kappa: np.ndarray, d0: float, k0: float
) -> ABlockSet:
    """Amplitude blocks of one TX/RX pair.

    a1 = omega1 * I3
    a2 = omega2 * kappa kappa' / gamma^2
    a3 = omega2 * (kappa (q-p)' + (q-p) kappa') / (gamma^2 d0)
    a4 = omega2 * (q-p)(q-p)' / (gamma^2 d0^2)

    a1 and a2 survive the far-field limit; a3 and a4 carry the
    offset-dependent correction and vanish as |q-p|/d0 -> 0.
    """
    diff = np.asarray(q_m, dtype=float) - np.asarray(p_n, dtype=float)
    kappa = np.asarray(kappa, dtype=float)
    gamma = 1.0 + float(diff @ kappa) / d0
    if gamma <= 0.0:
        raise DegenerateGeometryError(
            f"projection factor {gamma:g} is not positive for this pair"
        )
    w1, w2 = omega_pair(k0, gamma, d0)
    g2 = gamma * gamma
    a1 = w1 * _EYE3
    a2 = (w2 / g2) * np.outer(kappa, kappa)
    a3 = (w2 / (g2 * d0)) * (np.outer(kappa, diff) + np.outer(diff, kappa))
    a4 = (w2 / (g2 * d0 * d0)) * np.outer(diff, diff)
    return ABlockSet(a1, a2, a3, a4, gamma)


def pscm_pair(
    p_n: np.ndarray,
    q_m: np.ndarray,
    kappa: np.ndarray,
    d0: float,
    k0: float,
    variant: str = "1234",
) -> np.ndarray:
    """Separable approximation of one pair dyad.

    Returns (-i / (4 pi gamma d0)) * A * exp(i k0 d0) * exp(i k0 q'kappa)
    * exp(-i k0 p'kappa) with A the sum of the blocks the variant keeps
    ("12", "123" or "1234").  At zero offsets (p = q = 0) the result
    equals the exact dyad at d0*kappa.
    """
    try:
        keep = _VARIANT_BLOCKS[variant]
    except KeyError:
        raise ValueError(
            f"unknown variant {variant!r}, expected one of {sorted(_VARIANT_BLOCKS)}"
        ) from None
    blocks = a_blocks(p_n, q_m, kappa, d0, k0)
    amp = blocks.a1 + blocks.a2
    if keep >= 3:
        amp = amp + blocks.a3
    if keep >= 4:
        amp = amp + blocks.a4
    kappa = np.asarray(kappa, dtype=float)
    phase = (
        np.exp(1j * k0 * d0)
        * np.exp(1j * k0 * float(np.asarray(q_m, dtype=float) @ kappa))
        * np.exp(-1j * k0 * float(np.asarray(p_n, dtype=float) @ kappa))
    )
    return (-1j / (4.0 * np.pi * blocks.gamma * d0)) * amp * phase


def array_response(positions: np.ndarray, kappa: np.ndarray, k0: float) -> np.ndarray:
    """Plane-wave response of a grid: entries exp(i k0 p'kappa), unit modulus."""
    positions = np.asarray(positions, dtype=float)
    return np.exp(1j * k0 * (positions @ np.asarray(kappa, dtype=float)))


def assemble_pscm(
    tx: SurfaceLayout,
    rx: SurfaceLayout,
    link: LinkGeometry,
    k0: float,
    variant: str = "1234",
) -> BlockChannelMatrix:
    """Dense separable channel for all pairs at once.

    Matches the pairwise route blockwise: block (m, n) equals
    ``pscm_pair(p_n, q_m, kappa, d0, k0, variant)``.  Any pair with a
    non-positive projection factor makes the whole configuration
    degenerate and is rejected.
    """
    try:
        keep = _VARIANT_BLOCKS[variant]
    except KeyError:
        raise ValueError(
            f"unknown variant {variant!r}, expected one of {sorted(_VARIANT_BLOCKS)}"
        ) from None
    if k0 <= 0:
        raise ValueError(f"wavenumber must be positive, got {k0}")
    ps = tx.positions
    qs = global_rx_positions(link, rx)
    kappa = link.kappa
    d0 = link.d0

    theta_t = array_response(ps, kappa, k0)
    theta_r = array_response(qs, kappa, k0)

    diff = qs[:, None, :] - ps[None, :, :]  # (M, N, 3)
    gamma = 1.0 + (diff @ kappa) / d0
    if np.any(gamma <= 0.0):
        m, n = np.argwhere(gamma <= 0.0)[0]
        raise DegenerateGeometryError(
            f"projection factor is not positive for RX element {m}, TX element {n}"
        )
    x = k0 * gamma * d0
    w1 = 1.0 + 1j / x - 1.0 / x**2
    w2 = 3.0 / x**2 - 3j / x - 1.0
    g2 = gamma * gamma

    amp = w1[..., None, None] * _EYE3 + (w2 / g2)[..., None, None] * np.outer(kappa, kappa)
    if keep >= 3:
        cross = (
            kappa[None, None, :, None] * diff[..., None, :]
            + diff[..., :, None] * kappa[None, None, None, :]
        )
        amp = amp + (w2 / (g2 * d0))[..., None, None] * cross
    if keep >= 4:
        amp = amp + (w2 / (g2 * d0 * d0))[..., None, None] * (
            diff[..., :, None] * diff[..., None, :]
        )

    pair_phase = theta_r[:, None] * np.conj(theta_t)[None, :]
    pref = -1j * np.exp(1j * k0 * d0) / (4.0 * np.pi * d0)
    blocks = (pref * pair_phase / gamma)[..., None, None] * amp
    m_count, n_count = gamma.shape
    dense = blocks.transpose(0, 2, 1, 3).reshape(3 * m_count, 3 * n_count)
    return BlockChannelMatrix(dense, m_count, n_count, _VARIANT_TAGS[variant])


def assemble_fscm(
    tx: SurfaceLayout, rx: SurfaceLayout, link: LinkGeometry, k0: float
) -> BlockChannelMatrix:
    """Fully separable far-field channel.

    Block (m, n) is the rank-2 transverse projector I3 - kappa kappa'
    scaled by (-i exp(i k0 d0) / (4 pi d0)) and the pair phase
    theta_r[m] * conj(theta_t[n]); the whole matrix is the Kronecker
    product of the rank-one phase matrix with the projector.
    """
    if k0 <= 0:
        raise ValueError(f"wavenumber must be positive, got {k0}")
    qs = global_rx_positions(link, rx)
    theta_t = array_response(tx.positions, link.kappa, k0)
    theta_r = array_response(qs, link.kappa, k0)
    projector = _EYE3 - np.outer(link.kappa, link.kappa)
    pref = -1j * np.exp(1j * k0 * link.d0) / (4.0 * np.pi * link.d0)
    dense = np.kron(pref * np.outer(theta_r, np.conj(theta_t)), projector)
    return BlockChannelMatrix(dense, rx.count, tx.count, "FSCM")
