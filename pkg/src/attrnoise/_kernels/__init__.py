"""Backend selection for the dense 0-1 risk surface kernel.

Imports the compiled Cython kernel when it is built, otherwise the NumPy
fallback.  Both evaluate in the same floating-point operation order, so the
surfaces they return are bitwise identical.  Set the environment variable
``ATTRNOISE_PURE_PYTHON=1`` to force the fallback.
"""
import os

if os.environ.get("ATTRNOISE_PURE_PYTHON"):
    from ._grid_py import risk_surface_kernel

    BACKEND = "numpy"
else:
    try:
        from ._grid_cy import risk_surface_kernel

        BACKEND = "cython"
    except ImportError:
        from ._grid_py import risk_surface_kernel

        BACKEND = "numpy"

__all__ = ["risk_surface_kernel", "BACKEND"]
