"""Backend selection for the hot numerical kernel.

At import time the compiled Cython extension is preferred; the pure-NumPy
fallback is used when it is missing or when KRYLOVFLOW_BACKEND=python is set.
`BACKEND` records which one is active.
"""
import os

from . import _stieltjes_fallback

if os.environ.get("KRYLOVFLOW_BACKEND", "").lower() == "python":
    stieltjes = _stieltjes_fallback.stieltjes
    BACKEND = "python"
else:
    try:
        from ._stieltjes import stieltjes

        BACKEND = "cython"
    except ImportError:
        stieltjes = _stieltjes_fallback.stieltjes
        BACKEND = "python"

stieltjes_python = _stieltjes_fallback.stieltjes
