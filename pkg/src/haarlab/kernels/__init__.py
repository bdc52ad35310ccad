"""Integer Haar kernels.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
pure-Python module takes over.  Set ``HAARLAB_PURE_PYTHON=1`` to force the
fallback.  Both backends return identical integers.
"""

from __future__ import annotations

import os

from . import _pure

BACKEND = "python"

if os.environ.get("HAARLAB_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pure

analyze = _impl.analyze
synthesize = _impl.synthesize
abs_sum = _impl.abs_sum
abs_sum_pair = _impl.abs_sum_pair

__all__ = ["BACKEND", "analyze", "synthesize", "abs_sum", "abs_sum_pair"]
