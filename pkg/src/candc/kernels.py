"""Backend selection for the search kernels.

The compiled extension is used when it imports; setting ``CANDC_PURE_PYTHON=1``
forces the pure-Python twins (handy for the benchmark and for debugging).
"""
from __future__ import annotations

import os

from . import _pykernels

FOUND = _pykernels.FOUND
EXHAUSTED = _pykernels.EXHAUSTED
BUDGET = _pykernels.BUDGET
Z4 = _pykernels.Z4
Z2Z2 = _pykernels.Z2Z2

_impl = _pykernels
if os.environ.get("CANDC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND: str = _impl.BACKEND
color_search = _impl.color_search
at_count = _impl.at_count
nonnested_max = _impl.nonnested_max
ramsey_avoid = _impl.ramsey_avoid
shift_or = _impl.shift_or


def backends() -> dict:
    """Both implementations, keyed by name (compiled one only if built)."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
