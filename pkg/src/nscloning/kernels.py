"""Kernel backend selection.

The compiled extension is used when importable; set ``NSCLONING_PURE_PYTHON=1``
to force the numpy fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("NSCLONING_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"
    else:
        BACKEND = "cython"

wigner_d_matrix = _impl.wigner_d_matrix
symmetrized_product = _impl.symmetrized_product

__all__ = ["BACKEND", "wigner_d_matrix", "symmetrized_product"]
