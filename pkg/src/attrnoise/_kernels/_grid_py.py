"""NumPy fallback for the 0-1 risk surface kernel.

Keep the floating-point evaluation order in lockstep with ``_grid_cy.pyx``:
per atom, the decision contribution is ``fl(fl(t1*x1) + fl(beta2*x2))``, the
margin is ``fl(fl(a + c) * y)``, and weights accumulate in atom order
(adding exactly 0.0 for non-erring atoms, which never changes a nonnegative
accumulator).  Any change here must be mirrored in the Cython kernel or the
backends stop being bitwise interchangeable.
"""
import numpy as np


def risk_surface_kernel(t1_axis, c_axis, x1, x2, beta2, y, w):
    """Dense 0-1 risk over the (t1, c) grid.

    Parameters
    ----------
    t1_axis, c_axis : float64 arrays
        Grid coordinates of the two searched parameters.
    x1, x2 : float64 arrays, length m
        First and second feature coordinate per atom.
    beta2 : float
        Fixed coefficient multiplying ``x2`` (0.0 for one-dimensional data).
    y, w : float64 arrays, length m
        Atom labels (+-1) and weights.

    Returns
    -------
    float64 array of shape (len(t1_axis), len(c_axis))
        ``out[i, j]`` is the weighted mass of atoms with
        ``(t1[i]*x1 + beta2*x2 + c[j]) * y <= 0``.
    """
    t1_axis = np.ascontiguousarray(t1_axis, dtype=np.float64)
    c_axis = np.ascontiguousarray(c_axis, dtype=np.float64)
    x1 = np.ascontiguousarray(x1, dtype=np.float64)
    x2 = np.ascontiguousarray(x2, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    if not (x1.size == x2.size == y.size == w.size):
        raise ValueError("atom arrays must share one length")

    out = np.zeros((t1_axis.size, c_axis.size), dtype=np.float64)
    row_c = c_axis[None, :]
    for k in range(x1.size):
        a = t1_axis * x1[k] + beta2 * x2[k]
        margin = (a[:, None] + row_c) * y[k]
        out += np.where(margin <= 0.0, w[k], 0.0)
    return out
