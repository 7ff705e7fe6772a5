"""Kernel selection: the compiled minor search when built, else pure Python.

Set ``KNOTLINK_PURE=1`` to force the pure-Python kernel.
"""
import os

if os.environ.get("KNOTLINK_PURE"):
    from ._purecore import search

    BACKEND = "python"
else:
    try:
        from ._minorcore import search

        BACKEND = "cython"
    except ImportError:
        from ._purecore import search

        BACKEND = "python"

__all__ = ["search", "BACKEND"]
