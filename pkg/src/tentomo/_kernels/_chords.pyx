# Chord integration of gridded tensor fields: compiled backend.
#
# For each ray (beta, phi) with the vertex at exp(1j*beta) on the unit circle
# and chord direction exp(1j*phi) (callers guarantee cos(beta - phi) >= 0),
# integrates the directionally contracted field
#     sum_k C(m, k) cos(phi)^k sin(phi)^(m-k) a_k
# along the chord by composite Simpson quadrature, sampling each component
# array by bilinear interpolation (zero outside the grid).
#
# comps[s] holds component a_{m-s} at pixel centers x_i = -1 + (2i+1)/nx,
# y_j = -1 + (2j+1)/ny; comps has shape (m+1, ny, nx).

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, floor, sin

cnp.import_array()


def chord_integrals(double[:, :, ::1] comps, double[::1] betas,
                    double[::1] phis, Py_ssize_t intervals):
    cdef Py_ssize_t ncomp = comps.shape[0]
    cdef Py_ssize_t ny = comps.shape[1]
    cdef Py_ssize_t nx = comps.shape[2]
    cdef Py_ssize_t nrays = betas.shape[0]
    cdef Py_ssize_t m = ncomp - 1

    out_arr = np.zeros(nrays, dtype=np.float64)
    cdef double[::1] out = out_arr
    cw_arr = np.empty(ncomp, dtype=np.float64)
    cdef double[::1] cw = cw_arr
    binom_arr = np.empty(ncomp, dtype=np.float64)
    cdef double[::1] binom = binom_arr

    cdef Py_ssize_t r, j, s, t, i0, j0
    cdef double beta, phi, L, h, taux, tauy, dirx, diry, cphi, sphi
    cdef double x, y, gx, gy, fx, fy, w00, w01, w10, w11
    cdef double wj, integrand, val, pc, ps, acc

    binom[0] = 1.0
    for s in range(1, ncomp):
        binom[s] = binom[s - 1] * (m - s + 1) / s

    for r in range(nrays):
        beta = betas[r]
        phi = phis[r]
        L = 2.0 * cos(beta - phi)
        if L <= 0.0 or intervals < 2:
            out[r] = 0.0
            continue
        cphi = cos(phi)
        sphi = sin(phi)
        taux = -cos(2.0 * phi - beta)
        tauy = -sin(2.0 * phi - beta)
        dirx = cphi
        diry = sphi
        h = L / intervals
        # directional weight for slot s (holds a_{m-s}): C(m, m-s) cphi^(m-s) sphi^s
        for s in range(ncomp):
            pc = 1.0
            for t in range(m - s):
                pc *= cphi
            ps = 1.0
            for t in range(s):
                ps *= sphi
            cw[s] = binom[m - s] * pc * ps
        acc = 0.0
        for j in range(intervals + 1):
            if j == 0 or j == intervals:
                wj = 1.0
            elif j % 2 == 1:
                wj = 4.0
            else:
                wj = 2.0
            x = taux + j * h * dirx
            y = tauy + j * h * diry
            gx = (x + 1.0) * nx / 2.0 - 0.5
            gy = (y + 1.0) * ny / 2.0 - 0.5
            i0 = <Py_ssize_t> floor(gx)
            j0 = <Py_ssize_t> floor(gy)
            fx = gx - i0
            fy = gy - j0
            w00 = (1.0 - fx) * (1.0 - fy)
            w10 = fx * (1.0 - fy)
            w01 = (1.0 - fx) * fy
            w11 = fx * fy
            integrand = 0.0
            if 0 <= i0 and i0 + 1 < nx and 0 <= j0 and j0 + 1 < ny:
                for s in range(ncomp):
                    val = (w00 * comps[s, j0, i0] + w10 * comps[s, j0, i0 + 1]
                           + w01 * comps[s, j0 + 1, i0] + w11 * comps[s, j0 + 1, i0 + 1])
                    integrand += cw[s] * val
            else:
                for s in range(ncomp):
                    val = 0.0
                    if 0 <= i0 < nx and 0 <= j0 < ny:
                        val += w00 * comps[s, j0, i0]
                    if 0 <= i0 + 1 < nx and 0 <= j0 < ny:
                        val += w10 * comps[s, j0, i0 + 1]
                    if 0 <= i0 < nx and 0 <= j0 + 1 < ny:
                        val += w01 * comps[s, j0 + 1, i0]
                    if 0 <= i0 + 1 < nx and 0 <= j0 + 1 < ny:
                        val += w11 * comps[s, j0 + 1, i0 + 1]
                    integrand += cw[s] * val
            acc += wj * integrand
        out[r] = acc * h / 3.0
    return out_arr
