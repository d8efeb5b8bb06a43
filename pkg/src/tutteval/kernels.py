"""Kernel selection: compiled Cython module when available, pure Python otherwise.

Set TUTTEVAL_PURE=1 to force the pure-Python kernels (used by the benchmark
and by CI to exercise both code paths).
"""

import os

if os.environ.get("TUTTEVAL_PURE") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
mul_trunc3 = _impl.mul_trunc3
mul_trunc2 = _impl.mul_trunc2
mul_poly = _impl.mul_poly
