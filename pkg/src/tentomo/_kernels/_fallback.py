"""Pure-numpy implementation of the chord-integration kernel.

Same contract and same arithmetic as the compiled backend in ``_chords.pyx``
(composite Simpson along each chord, bilinear sampling with zero outside the
grid); rays are processed in chunks to bound memory.
"""
from __future__ import annotations

from math import comb

import numpy as np


def chord_integrals(comps, betas, phis, intervals, chunk: int = 256):
    comps = np.asarray(comps, dtype=float)
    betas = np.asarray(betas, dtype=float)
    phis = np.asarray(phis, dtype=float)
    ncomp, ny, nx = comps.shape
    m = ncomp - 1
    nrays = betas.shape[0]
    out = np.zeros(nrays)
    if intervals < 2:
        return out

    u = np.arange(intervals + 1) / intervals
    simpson = np.ones(intervals + 1)
    simpson[1:-1:2] = 4.0
    simpson[2:-1:2] = 2.0
    binom = np.array([comb(m, k) for k in range(ncomp)], dtype=float)

    for lo in range(0, nrays, chunk):
        b = betas[lo:lo + chunk]
        p = phis[lo:lo + chunk]
        L = 2.0 * np.cos(b - p)
        good = L > 0.0
        Lg = np.where(good, L, 0.0)
        cphi = np.cos(p)
        sphi = np.sin(p)
        x = (-np.cos(2.0 * p - b))[:, None] + (Lg * cphi)[:, None] * u[None, :]
        y = (-np.sin(2.0 * p - b))[:, None] + (Lg * sphi)[:, None] * u[None, :]
        gx = (x + 1.0) * nx / 2.0 - 0.5
        gy = (y + 1.0) * ny / 2.0 - 0.5
        i0 = np.floor(gx).astype(np.int64)
        j0 = np.floor(gy).astype(np.int64)
        fx = gx - i0
        fy = gy - j0

        cw = np.empty((len(b), ncomp))
        for s in range(ncomp):
            cw[:, s] = binom[m - s] * cphi ** (m - s) * sphi**s

        integrand = np.zeros_like(x)
        corners = (
            (0, 0, (1.0 - fx) * (1.0 - fy)),
            (1, 0, fx * (1.0 - fy)),
            (0, 1, (1.0 - fx) * fy),
            (1, 1, fx * fy),
        )
        for di, dj, wq in corners:
            ii = i0 + di
            jj = j0 + dj
            ok = (ii >= 0) & (ii < nx) & (jj >= 0) & (jj < ny)
            iic = np.clip(ii, 0, nx - 1)
            jjc = np.clip(jj, 0, ny - 1)
            for s in range(ncomp):
                vals = np.where(ok, comps[s][jjc, iic], 0.0)
                integrand += cw[:, s:s + 1] * (wq * vals)
        out[lo:lo + chunk] = np.where(
            good, (Lg / (3.0 * intervals)) * (simpson[None, :] * integrand).sum(axis=1), 0.0
        )
    return out
