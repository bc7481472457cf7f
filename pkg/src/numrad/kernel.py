"""Eigensolver backend selection: compiled extension if available, else pure Python.

Set ``NUMRAD_PURE_PYTHON=1`` to force the fallback (used by the benchmark
and by tests that exercise both backends).
"""

from __future__ import annotations

import os

from . import _jacobi_py

if os.environ.get("NUMRAD_PURE_PYTHON", "") not in ("", "0"):
    _impl = _jacobi_py
    BACKEND = "python"
else:
    try:
        from . import _jacobi_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _jacobi_py
        BACKEND = "python"

jacobi_eigh = _impl.jacobi_eigh


def available_backends():
    """Name -> jacobi_eigh callable, for every importable backend."""
    out = {"python": _jacobi_py.jacobi_eigh}
    try:
        from . import _jacobi_cy  # type: ignore[attr-defined]

        out["compiled"] = _jacobi_cy.jacobi_eigh
    except ImportError:
        pass
    return out
