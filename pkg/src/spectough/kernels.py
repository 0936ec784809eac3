"""Backend selection for the hot loops.

The Cython extension is used when it was built; otherwise, or when the
environment variable ``SPECTOUGH_PURE_PYTHON`` is set to a non-empty value,
the pure-Python implementation is used. Both expose ``components``,
``scan_cuts`` and ``jacobi_eigh`` with identical semantics.
"""
from __future__ import annotations

import os

from spectough import _pykernels

if os.environ.get("SPECTOUGH_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from spectough import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

components = _impl.components
scan_cuts = _impl.scan_cuts
jacobi_eigh = _impl.jacobi_eigh
