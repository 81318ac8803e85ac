"""NumPy fallback for the window-sum kernel.

Same contract as the compiled extension in ``_core``: sum the Fourier-
weighted dipole dyadic over the square window lx, ly in [-L, L] at fixed
out-of-plane offset. Rows are vectorized over ly and the per-row partial
sums are reduced with a single pairwise np.sum at the end, which keeps the
roundoff of multi-million-term sums at the 1e-12 level needed by the
tensor invariants.
"""

from __future__ import annotations

import numpy as np


def window_sums(qx, qy, cutoff, lz_scaled, exclude_origin):
    """Six independent dyadic sums over the window, as complex scalars.

    Returns (xx, yy, zz, xy, xz, yz) with the phase factor
    exp(i (qx lx + qy ly)) applied termwise. ``lz_scaled`` is the plane
    offset in units of a; ``exclude_origin`` must be True when it is zero.
    """
    L = int(cutoff)
    idx = np.arange(-L, L + 1)
    fidx = idx.astype(float)
    c = float(lz_scaled)
    c2 = c * c

    # Phase tables: exp(i q l) built from one cos/sin call per row index.
    cosx = np.cos(qx * fidx)
    sinx = np.sin(qx * fidx)
    cosy = np.cos(qy * fidx)
    siny = np.sin(qy * fidx)

    ly2 = fidx * fidx
    rows = np.empty((2 * L + 1, 6), dtype=complex)
    for i, lx in enumerate(idx):
        r2 = lx * lx + ly2 + c2
        if exclude_origin and lx == 0:
            r2[L] = 1.0  # placeholder, masked below
        ir5 = 1.0 / (r2 * r2 * np.sqrt(r2))
        if exclude_origin and lx == 0:
            ir5[L] = 0.0
        ir3 = r2 * ir5
        phase = (cosx[i] * cosy - sinx[i] * siny) + 1j * (sinx[i] * cosy + cosx[i] * siny)
        rows[i, 0] = np.sum((ir3 - 3.0 * lx * lx * ir5) * phase)
        rows[i, 1] = np.sum((ir3 - 3.0 * ly2 * ir5) * phase)
        rows[i, 2] = np.sum((ir3 - 3.0 * c2 * ir5) * phase)
        rows[i, 3] = np.sum((-3.0 * lx * fidx * ir5) * phase)
        rows[i, 4] = np.sum((-3.0 * lx * c * ir5) * phase)
        rows[i, 5] = np.sum((-3.0 * fidx * c * ir5) * phase)
    tot = np.sum(rows, axis=0)
    return tot[0], tot[1], tot[2], tot[3], tot[4], tot[5]
