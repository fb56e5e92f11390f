"""Kernel selection: the compiled ``_core`` extension when importable, else ``_fallback``.

Set ``SPECTRAL_TURAN_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _fallback

try:
    if os.environ.get("SPECTRAL_TURAN_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from . import _core as backend

    BACKEND = "cython"
except ImportError:
    backend = _fallback
    BACKEND = "python"

__all__ = ["backend", "BACKEND"]
