"""Closure-kernel selection: the compiled extension when importable, else pure Python.

Set ``PARTGROUP_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _closure_py

BACKEND = "python"
_impl: ModuleType = _closure_py

if not os.environ.get("PARTGROUP_PURE_PYTHON"):
    try:
        from . import _closure_c as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        pass


def get_kernel(name: str | None = None) -> ModuleType:
    """Kernel module by name (``"python"``, ``"cython"``) or the default one."""
    if name is None:
        return _impl
    if name == "python":
        return _closure_py
    if name == "cython":
        from . import _closure_c
        return _closure_c
    raise ValueError(f"unknown kernel {name!r}")
