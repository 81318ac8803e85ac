# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled window-sum kernel.

Contract and semantics match ``_core_py.window_sums``; this version runs
the double loop in C with Kahan-compensated accumulation on all twelve
real lanes (six complex components), so results stay at the 1e-12 level
even for 10^7 mixed-sign terms. The lanes are explicit scalars rather
than arrays: the compiler cannot prove pointer-indexed lanes alias-free,
and keeping them in registers is worth an order of magnitude here.
"""

from libc.math cimport cos, sin, sqrt

import numpy as np


def window_sums(double qx, double qy, int cutoff, double lz_scaled, bint exclude_origin):
    """Six dyadic sums over lx, ly in [-L, L]; returns complex scalars."""
    cdef int L = cutoff
    cdef int n = 2 * L + 1
    cdef double c = lz_scaled
    cdef double c2 = c * c

    tab = np.empty((4, n), dtype=np.float64)
    cdef double[:, ::1] t = tab
    cdef int i
    for i in range(n):
        t[0, i] = cos(qx * (i - L))
        t[1, i] = sin(qx * (i - L))
        t[2, i] = cos(qy * (i - L))
        t[3, i] = sin(qy * (i - L))

    cdef double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, s5 = 0
    cdef double s6 = 0, s7 = 0, s8 = 0, s9 = 0, s10 = 0, s11 = 0
    cdef double e0 = 0, e1 = 0, e2 = 0, e3 = 0, e4 = 0, e5 = 0
    cdef double e6 = 0, e7 = 0, e8 = 0, e9 = 0, e10 = 0, e11 = 0

    cdef int ix, iy, lx, ly
    cdef double r2, ir5, ir3, pre, pim, coef, x, y, cx, sx, lx2, w3lx, w3c
    with nogil:
        for ix in range(n):
            lx = ix - L
            cx = t[0, ix]
            sx = t[1, ix]
            lx2 = <double>(lx * lx)
            w3lx = 3.0 * lx
            w3c = 3.0 * c
            for iy in range(n):
                ly = iy - L
                if exclude_origin and lx == 0 and ly == 0:
                    continue
                r2 = lx2 + <double>(ly * ly) + c2
                ir5 = 1.0 / (r2 * r2 * sqrt(r2))
                ir3 = r2 * ir5
                pre = cx * t[2, iy] - sx * t[3, iy]
                pim = sx * t[2, iy] + cx * t[3, iy]

                coef = ir3 - 3.0 * lx2 * ir5
                x = coef * pre - e0; y = s0 + x; e0 = (y - s0) - x; s0 = y
                x = coef * pim - e1; y = s1 + x; e1 = (y - s1) - x; s1 = y
                coef = ir3 - 3.0 * <double>(ly * ly) * ir5
                x = coef * pre - e2; y = s2 + x; e2 = (y - s2) - x; s2 = y
                x = coef * pim - e3; y = s3 + x; e3 = (y - s3) - x; s3 = y
                coef = ir3 - 3.0 * c2 * ir5
                x = coef * pre - e4; y = s4 + x; e4 = (y - s4) - x; s4 = y
                x = coef * pim - e5; y = s5 + x; e5 = (y - s5) - x; s5 = y
                coef = -w3lx * ly * ir5
                x = coef * pre - e6; y = s6 + x; e6 = (y - s6) - x; s6 = y
                x = coef * pim - e7; y = s7 + x; e7 = (y - s7) - x; s7 = y
                coef = -w3lx * c * ir5
                x = coef * pre - e8; y = s8 + x; e8 = (y - s8) - x; s8 = y
                x = coef * pim - e9; y = s9 + x; e9 = (y - s9) - x; s9 = y
                coef = -w3c * ly * ir5
                x = coef * pre - e10; y = s10 + x; e10 = (y - s10) - x; s10 = y
                x = coef * pim - e11; y = s11 + x; e11 = (y - s11) - x; s11 = y

    return (
        complex(s0, s1),
        complex(s2, s3),
        complex(s4, s5),
        complex(s6, s7),
        complex(s8, s9),
        complex(s10, s11),
    )
