"""Backend selection for the integer kernels.

The compiled module is used when it was built and importable; setting
``CKEPOLY_PURE_PYTHON=1`` forces the pure-Python fallback.
"""
import os

BACKEND = "python"

if os.environ.get("CKEPOLY_PURE_PYTHON", "") not in ("", "0"):
    from ._pykernels import back_reduce, echelon, int_matmul, poly_mulmod, vec_matmul
else:
    try:
        from ._ckernels import back_reduce, echelon, int_matmul, poly_mulmod, vec_matmul

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import back_reduce, echelon, int_matmul, poly_mulmod, vec_matmul

__all__ = ["BACKEND", "back_reduce", "echelon", "int_matmul", "poly_mulmod", "vec_matmul"]
