"""Kernel dispatch: compiled extension when available, numpy fallback otherwise.

Set DIRSR_KERNELS=python to force the pure-python backend.
"""

import os

from . import _ref

BACKEND = "python"
_impl = _ref

if os.environ.get("DIRSR_KERNELS", "").lower() not in ("python", "ref", "numpy"):
    try:
        from . import _fast as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

stage_apply = _impl.stage_apply
stage_adjoint = _impl.stage_adjoint
rows_analyze = _impl.rows_analyze
rows_synthesize = _impl.rows_synthesize
mad_scan = _impl.mad_scan
