"""Select the compiled kernel when available, else the pure-Python one.

Set ``MOMENTCUT_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _ddcore_py

BACKEND = "python"
adjacent_pairs = _ddcore_py.adjacent_pairs

if os.environ.get("MOMENTCUT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ddcore
    except ImportError:  # extension not built
        _ddcore = None
    else:
        adjacent_pairs = _ddcore.adjacent_pairs
        BACKEND = "cython"
