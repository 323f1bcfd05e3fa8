# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled 0-1 risk surface kernel.

Floating-point evaluation order matches ``_grid_py.risk_surface_kernel``
exactly (see the note there); the build disables FP contraction so the two
backends return bitwise-identical surfaces.
"""
import numpy as np


def risk_surface_kernel(double[::1] t1_axis, double[::1] c_axis,
                        double[::1] x1, double[::1] x2, double beta2,
                        double[::1] y, double[::1] w):
    """Dense 0-1 risk over the (t1, c) grid; see the NumPy twin for details."""
    cdef Py_ssize_t nb = t1_axis.shape[0]
    cdef Py_ssize_t nc = c_axis.shape[0]
    cdef Py_ssize_t m = x1.shape[0]
    if not (x2.shape[0] == m and y.shape[0] == m and w.shape[0] == m):
        raise ValueError("atom arrays must share one length")

    out_arr = np.zeros((nb, nc), dtype=np.float64)
    a_arr = np.empty(m, dtype=np.float64)
    bx_arr = np.empty(m, dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double[::1] a = a_arr
    cdef double[::1] bx = bx_arr
    cdef Py_ssize_t i, j, k
    cdef double t1, acc

    for k in range(m):
        bx[k] = beta2 * x2[k]
    for i in range(nb):
        t1 = t1_axis[i]
        for k in range(m):
            a[k] = t1 * x1[k] + bx[k]
        for j in range(nc):
            acc = 0.0
            for k in range(m):
                if (a[k] + c_axis[j]) * y[k] <= 0.0:
                    acc += w[k]
            out[i, j] = acc
    return out_arr
