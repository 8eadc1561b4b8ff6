"""Kernel backend selection.

The compiled extension is preferred when present; POINTLOC_KERNELS=py|c
forces a backend (useful for the backend-comparison benchmark and tests).
"""

import os

from . import pykernels

_forced = os.environ.get("POINTLOC_KERNELS", "").strip().lower()

if _forced == "py":
    impl = pykernels
else:
    try:
        from . import _ckernels as impl  # type: ignore[attr-defined]
    except ImportError:
        if _forced == "c":
            raise
        impl = pykernels


def get_backend(name: str = ""):
    """Return a kernel module by name ('c', 'py', or '' for the default)."""
    name = name.strip().lower()
    if name in ("", "auto"):
        return impl
    if name == "py":
        return pykernels
    if name == "c":
        from . import _ckernels  # type: ignore[attr-defined]
        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")


BACKEND = impl.BACKEND
COORD_LIMIT = impl.COORD_LIMIT
