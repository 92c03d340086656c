"""Kernel backend selection: compiled core with a pure-NumPy fallback.

The compiled extension is used when it imported cleanly; set
RINGBLOCH_BACKEND=python (or pass backend="python") to force the
fallback, e.g. for cross-checking or benchmarking.
"""

from __future__ import annotations

import os

from . import _core_py

try:
    from . import _core
except ImportError:  # pragma: no cover - depends on the build environment
    _core = None

_KERNELS = {"python": _core_py}
if _core is not None:
    _KERNELS["compiled"] = _core

ENV_VAR = "RINGBLOCH_BACKEND"


def has_compiled() -> bool:
    return _core is not None


def available_backends() -> list[str]:
    return sorted(_KERNELS)


def default_backend() -> str:
    env = os.environ.get(ENV_VAR)
    if env:
        if env not in _KERNELS:
            raise ValueError(
                f"{ENV_VAR}={env!r} is not available; choose from {available_backends()}"
            )
        return env
    return "compiled" if _core is not None else "python"


def get_kernel(name: str | None = None):
    """Return the kernel module for a backend name (None = default)."""
    if name is None:
        name = default_backend()
    try:
        return _KERNELS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; choose from {available_backends()}"
        ) from None
