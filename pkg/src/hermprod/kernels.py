"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it was built; otherwise,
or when the environment variable ``HERMPROD_PURE_PYTHON`` is set to a
non-empty value, the NumPy fallback in ``_pykernels`` is used.
"""
import os

from . import _pykernels

if os.environ.get("HERMPROD_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

hermite_fn_paper = _impl.hermite_fn_paper
hermite_fn_table = _impl.hermite_fn_table
hermite_fn_pair = _impl.hermite_fn_pair
w2_log_abs_grid = _impl.w2_log_abs_grid
