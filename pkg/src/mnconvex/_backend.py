"""Select the kernel implementation at import time.

The compiled module is used when it was built; set ``MNCONVEX_BACKEND=python``
to force the pure-Python fallback.
"""
import os

if os.environ.get("MNCONVEX_BACKEND", "").lower() == "python":
    from mnconvex import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from mnconvex import _kernels as kernels

        BACKEND = "cython"
    except ImportError:
        from mnconvex import _kernels_py as kernels

        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
