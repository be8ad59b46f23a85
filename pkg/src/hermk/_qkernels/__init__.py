"""Exact rational kernel backends.

Two interchangeable implementations of the four hot kernels (matmul,
rref, det, permanent): _fast, a Cython module working fraction-free
over the integers, and pure, the stdlib Fraction reference. The
compiled one is preferred when importable; set HERMK_PURE=1 to force
the reference backend. hermk.linalg is the only intended consumer.
"""

import os

if os.environ.get("HERMK_PURE"):
    from . import pure as _impl
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import pure as _impl

BACKEND = _impl.BACKEND
matmul = _impl.matmul
rref = _impl.rref
det = _impl.det
permanent = _impl.permanent
