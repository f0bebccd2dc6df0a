"""Selects the straightening kernel: compiled extension or pure Python.

The compiled kernel is behaviourally identical; SOCENTER_PURE=1 forces the
fallback (the benchmark uses this to compare the two).
"""

import os

from . import _straighten_py

if os.environ.get("SOCENTER_PURE") == "1":
    _impl = _straighten_py
    BACKEND = "pure"
else:
    try:
        from . import _straighten as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _straighten_py
        BACKEND = "pure"

straighten = _impl.straighten
straighten_general = _impl.straighten_general
