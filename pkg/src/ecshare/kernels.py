"""Backend selection for the enumeration kernels.

The compiled module is used when it was built and ``ECSHARE_PURE_PYTHON`` is
unset; otherwise the numpy implementation is loaded.  Both expose
``codewords``, ``min_weight``, ``nearest`` and ``qualified_flags``.
"""
from __future__ import annotations

import os

from . import _kernels_py as python_backend

compiled_backend = None
try:
    from . import _kernels_c as compiled_backend  # type: ignore[no-redef]
except ImportError:  # extension not built
    pass

if compiled_backend is not None and not os.environ.get("ECSHARE_PURE_PYTHON"):
    backend = compiled_backend
    BACKEND = "cython"
else:
    backend = python_backend
    BACKEND = "python"

codewords = backend.codewords
min_weight = backend.min_weight
nearest = backend.nearest
qualified_flags = backend.qualified_flags
