"""Select the phase-loop kernel at import time.

The compiled extension is optional; the pure-Python kernel is always
available and produces bit-identical results. Set CSAR_BACKEND to
``python`` or ``cython`` to force one, or leave it (or set ``auto``) to
prefer the extension when it imported cleanly.
"""

from __future__ import annotations

import os

from . import _phase_py

try:
    from . import _phase_cy
except ImportError:
    _phase_cy = None


def available_backends() -> tuple[str, ...]:
    """Names of the kernels importable in this environment."""
    if _phase_cy is None:
        return ("python",)
    return ("python", "cython")


def _select() -> tuple[str, object]:
    choice = os.environ.get("CSAR_BACKEND", "auto").strip().lower()
    if choice not in ("auto", "python", "cython"):
        raise ValueError(
            f"CSAR_BACKEND must be 'auto', 'python', or 'cython', got {choice!r}"
        )
    if choice == "python":
        return "python", _phase_py.run_phase_loop
    if choice == "cython":
        if _phase_cy is None:
            raise ImportError(
                "CSAR_BACKEND=cython but the compiled extension is not available"
            )
        return "cython", _phase_cy.run_phase_loop
    if _phase_cy is not None:
        return "cython", _phase_cy.run_phase_loop
    return "python", _phase_py.run_phase_loop


BACKEND_NAME, run_phase_loop = _select()


def get_kernel(name: str):
    """Fetch a kernel by name regardless of the import-time default."""
    if name == "python":
        return _phase_py.run_phase_loop
    if name == "cython":
        if _phase_cy is None:
            raise ImportError("compiled extension is not available")
        return _phase_cy.run_phase_loop
    raise ValueError(f"unknown backend {name!r}")
