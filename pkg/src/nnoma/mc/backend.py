"""Kernel backend selection: compiled extension if importable, numpy otherwise.

Set NNOMA_BACKEND=python or =cython to force one (forcing cython raises if
the extension is missing).
"""
from __future__ import annotations

import os

from . import fallback

_FORCED = os.environ.get("NNOMA_BACKEND", "").strip().lower()

try:
    from . import _mckernel as _compiled
except ImportError:
    _compiled = None

if _FORCED == "python":
    _active = fallback
elif _FORCED == "cython":
    if _compiled is None:
        raise ImportError("NNOMA_BACKEND=cython but the compiled kernel is not built")
    _active = _compiled
else:
    _active = _compiled if _compiled is not None else fallback


def active_backend() -> str:
    """Name of the kernel backend in use: 'cython' or 'python'."""
    return _active.BACKEND_NAME


def available_backends() -> tuple:
    return ("cython", "python") if _compiled is not None else ("python",)


def get_kernel(backend: str | None = None):
    """The run_trials callable for ``backend`` (None = active)."""
    if backend is None:
        return _active.run_trials
    if backend == "python":
        return fallback.run_trials
    if backend == "cython":
        if _compiled is None:
            raise ImportError("compiled kernel not available")
        return _compiled.run_trials
    raise ValueError(f"unknown backend {backend!r}")
