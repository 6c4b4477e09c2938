"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``LOCGAME_BACKEND=python`` to force the fallback.
"""

from __future__ import annotations

import os

from ._pykernel import ProbeKernel as PyProbeKernel

try:
    from ._ckernel import ProbeKernel as CProbeKernel
except ImportError:  # extension not built
    CProbeKernel = None

_requested = os.environ.get("LOCGAME_BACKEND", "").lower()
if _requested == "python" or CProbeKernel is None:
    DEFAULT_BACKEND = "python"
else:
    DEFAULT_BACKEND = "cython"


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if CProbeKernel is not None else [])


def kernel_class(backend: str | None = None):
    name = backend or DEFAULT_BACKEND
    if name == "python":
        return PyProbeKernel
    if name == "cython":
        if CProbeKernel is None:
            raise RuntimeError("compiled kernel is not available; reinstall with Cython")
        return CProbeKernel
    raise ValueError(f"unknown backend {name!r}")
