"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``MODQUOT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("MODQUOT_PURE_PYTHON", "") not in ("", "0"):
    from ._pykernels import adjacent_lcp, bounce_run
else:
    try:
        from ._ckernels import adjacent_lcp, bounce_run

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import adjacent_lcp, bounce_run

python_kernels = _pykernels

__all__ = ["BACKEND", "adjacent_lcp", "bounce_run", "python_kernels"]
