"""Kernel selection: the compiled extension when importable, else numpy.

Set ``CURVEQUOT_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("CURVEQUOT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

sssp = _impl.sssp
distance_rows = _impl.distance_rows
four_point_max = _impl.four_point_max
four_point_exhaustive = _impl.four_point_exhaustive
