#!/usr/bin/env python3
"""Regenerate tests/_goldens.json from scratch-built scalar reference code.

Every value here is computed straight from the channel-model formulas with
deliberately naive scalar arithmetic: per-pair Python loops, mpmath for the
single-point dyads, exact fsum accumulation for the Frobenius sums, and a
QR-based LAPACK driver (scipy's gesvd) for the one spectrum that needs a
decomposition.  Nothing is imported from the hmimo package, so these values
stand as an independent oracle for its tests.

Runtime is dominated by the pure-Python pair loop over the full-size
41x41 / 15x15 geometry (a few minutes).  Requires numpy, scipy and mpmath.

Usage: python3 tools/compute_goldens.py [output.json]
"""

import cmath
import json
import math
import sys
import time
from pathlib import Path

import numpy as np
from mpmath import mp, mpc, pi as mp_pi, exp as mp_exp, sqrt as mp_sqrt
from scipy.linalg import svd as scipy_svd

mp.dps = 50

C_LIGHT = 299792458.0
FREQ = 2.4e9


# ---------------------------------------------------------------- mpmath dyads

def green_exact_mp(dvec, k0):
    """Exact dyad, term by term, at 50 digits."""
    dx, dy, dz = dvec
    dist = mp_sqrt(dx * dx + dy * dy + dz * dz)
    kd = k0 * dist
    c1 = 1 + mpc(0, 1) / kd - 1 / (kd * kd)
    c2 = 3 / (kd * kd) - mpc(0, 3) / kd - 1
    pref = (mpc(0, -1) / (4 * mp_pi * dist)) * mp_exp(mpc(0, 1) * kd)
    u = (dx / dist, dy / dist, dz / dist)
    out = [[None] * 3 for _ in range(3)]
    for a in range(3):
        for b in range(3):
            entry = c2 * u[a] * u[b]
            if a == b:
                entry += c1
            out[a][b] = pref * entry
    return out


def omega_mp(k0, gamma, d0):
    x = k0 * gamma * d0
    w1 = 1 + mpc(0, 1) / x - 1 / (x * x)
    w2 = 3 / (x * x) - mpc(0, 3) / x - 1
    return w1, w2


def a_sum_mp(p, q, kappa, d0, k0, keep=4):
    """a1 + a2 (+ a3) (+ a4), each block written out symbol by symbol."""
    diff = [q[i] - p[i] for i in range(3)]
    gamma = 1 + sum(diff[i] * kappa[i] for i in range(3)) / d0
    w1, w2 = omega_mp(k0, gamma, d0)
    g2 = gamma * gamma
    out = [[None] * 3 for _ in range(3)]
    for a in range(3):
        for b in range(3):
            entry = mpc(0, 0)
            if a == b:
                entry += w1                                            # a1
            entry += w2 * kappa[a] * kappa[b] / g2                     # a2
            if keep >= 3:                                              # a3
                entry += w2 * (kappa[a] * diff[b] + diff[a] * kappa[b]) / (g2 * d0)
            if keep >= 4:                                              # a4
                entry += w2 * diff[a] * diff[b] / (g2 * d0 * d0)
            out[a][b] = entry
    return out, gamma


def pscm_pair_mp(p, q, kappa, d0, k0):
    amp, gamma = a_sum_mp(p, q, kappa, d0, k0, keep=4)
    qk = sum(q[i] * kappa[i] for i in range(3))
    pk = sum(p[i] * kappa[i] for i in range(3))
    phase = (
        mp_exp(mpc(0, 1) * k0 * d0)
        * mp_exp(mpc(0, 1) * k0 * qk)
        * mp_exp(mpc(0, -1) * k0 * pk)
    )
    pref = (mpc(0, -1) / (4 * mp_pi * gamma * d0)) * phase
    return [[pref * amp[a][b] for b in range(3)] for a in range(3)]


def mat_to_json(mat):
    return {
        "re": [[float(mp.re(mat[a][b])) for b in range(3)] for a in range(3)],
        "im": [[float(mp.im(mat[a][b])) for b in range(3)] for a in range(3)],
    }


# ------------------------------------------------- full-size benchmark-point loop

def grid_positions(side, spacing):
    """Centered side x side grid, j-major order, z = 0."""
    offs = [(i - (side - 1) / 2.0) * spacing for i in range(side)]
    return [(offs[i], offs[j], 0.0) for j in range(side) for i in range(side)]


def benchmark_point_values(d0_lambda=4.25):
    """NMSE(PSCM vs OCM) and the OCM gain spectrum at one benchmark-sized point.

    Pure scalar loops over all M*N element pairs; boresight geometry
    (kappa = e_z, parallel centered surfaces).
    """
    lam = C_LIGHT / FREQ
    k0 = 2 * math.pi / lam
    spacing = 0.01 * lam
    d0 = d0_lambda * lam
    tx = grid_positions(41, spacing)
    rx = grid_positions(15, spacing)
    n, m = len(tx), len(rx)
    area = spacing * spacing

    ocm = np.zeros((3 * m, 3 * n), dtype=complex)
    row_diff_sums = []
    row_ref_sums = []
    four_pi = 4 * math.pi
    exp_ikd0 = cmath.exp(1j * k0 * d0)
    started = time.time()
    for mi, (qx, qy, _) in enumerate(rx):
        diff_terms = []
        ref_terms = []
        for ni, (px, py, _) in enumerate(tx):
            ex, ey = qx - px, qy - py
            # exact dyad at the pair displacement (ex, ey, d0)
            dist = math.sqrt(ex * ex + ey * ey + d0 * d0)
            kd = k0 * dist
            c1 = 1 + 1j / kd - 1 / (kd * kd)
            c2 = 3 / (kd * kd) - 3j / kd - 1
            pref = (-1j / (four_pi * dist)) * cmath.exp(1j * kd)
            ux, uy, uz = ex / dist, ey / dist, d0 / dist
            u = (ux, uy, uz)
            # separable pair: kappa = (0,0,1), diff = (ex, ey, 0)
            gamma = 1.0 + (ex * 0.0 + ey * 0.0 + 0.0 * 1.0) / d0
            x = k0 * gamma * d0
            w1 = 1 + 1j / x - 1 / (x * x)
            w2 = 3 / (x * x) - 3j / x - 1
            g2 = gamma * gamma
            qk = 0.0  # q . kappa  (in-plane offsets)
            pk = 0.0  # p . kappa
            phase = exp_ikd0 * cmath.exp(1j * k0 * qk) * cmath.exp(-1j * k0 * pk)
            spref = (-1j / (four_pi * gamma * d0)) * phase
            kvec = (0.0, 0.0, 1.0)
            dvec = (ex, ey, 0.0)
            for a in range(3):
                for b in range(3):
                    exact = c2 * u[a] * u[b]
                    if a == b:
                        exact += c1
                    exact *= pref
                    ocm[3 * mi + a, 3 * ni + b] = exact
                    sep = w2 * kvec[a] * kvec[b] / g2
                    sep += w2 * (kvec[a] * dvec[b] + dvec[a] * kvec[b]) / (g2 * d0)
                    sep += w2 * dvec[a] * dvec[b] / (g2 * d0 * d0)
                    if a == b:
                        sep += w1
                    sep *= spref
                    delta = sep - exact
                    diff_terms.append(delta.real * delta.real + delta.imag * delta.imag)
                    ref_terms.append(exact.real * exact.real + exact.imag * exact.imag)
        row_diff_sums.append(math.fsum(diff_terms))
        row_ref_sums.append(math.fsum(ref_terms))
    nmse = math.fsum(row_diff_sums) / math.fsum(row_ref_sums)
    print(f"  pair loop done in {time.time() - started:.0f}s; nmse = {nmse:.9e}")

    started = time.time()
    sigma = scipy_svd(ocm, compute_uv=False, lapack_driver="gesvd")
    print(f"  gesvd done in {time.time() - started:.0f}s")
    gains = [area * s for s in sigma[:8]]  # sqrt(a_r * a_t) = area
    return nmse, [float(s) for s in sigma[:8]], [float(g) for g in gains]


def main():
    out_path = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parent.parent / "tests" / "_goldens.json"
    )
    lam_mp = mp.mpf(299792458) / mp.mpf(2400000000)
    k0_mp = 2 * mp_pi / lam_mp

    print("[goldens] single-point dyads (mpmath)")
    green_unit = green_exact_mp((mp.mpf(0), mp.mpf(0), mp.mpf(1)), 2 * mp_pi)
    green_wavelength = green_exact_mp((mp.mpf(0), mp.mpf(0), lam_mp), k0_mp)

    w1, w2 = omega_mp(mp.mpf(1), mp.mpf("7.3"), mp.mpf(1))
    p = (mp.mpf("0.02"), mp.mpf(0), mp.mpf(0))
    q = (mp.mpf(0), mp.mpf("0.01"), mp.mpf(0))
    kappa = (mp.mpf(0), mp.mpf(0), mp.mpf(1))
    pair = pscm_pair_mp(p, q, kappa, mp.mpf(2), 2 * mp_pi)
    a_sum, _ = a_sum_mp(p, q, kappa, mp.mpf(2), 2 * mp_pi, keep=4)

    # channel scale spot value at the documented inputs
    eta = mp.mpf("376.73")
    lam_doc = mp.mpf("0.124913")
    area_doc = (mp.mpf("0.01") * lam_doc) ** 2
    channel_scale = eta / (2 * lam_doc) * area_doc * area_doc

    print("[goldens] benchmark-sized point (pure-python pair loop)")
    nmse, sigma8, gains8 = benchmark_point_values(4.25)

    payload = {
        "meta": {
            "generator": "tools/compute_goldens.py",
            "note": "independent scalar reference values; do not edit by hand",
        },
        "green_unit": mat_to_json(green_unit),
        "green_wavelength": mat_to_json(green_wavelength),
        "omega_7p3": {
            "omega1": [float(mp.re(w1)), float(mp.im(w1))],
            "omega2": [float(mp.re(w2)), float(mp.im(w2))],
        },
        "pscm_pair_generic": mat_to_json(pair),
        "a_sum_generic": mat_to_json(a_sum),
        "channel_scale": float(channel_scale),
        "benchmark_point": {
            "frequency": FREQ,
            "tx_side": 41,
            "rx_side": 15,
            "spacing_lambda": 0.01,
            "d0_lambda": 4.25,
            "nmse_pscm_vs_ocm": nmse,
            "sigma_top8": sigma8,
            "gains_top8": gains8,
        },
    }
    out_path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"[goldens] wrote {out_path}")


if __name__ == "__main__":
    main()
