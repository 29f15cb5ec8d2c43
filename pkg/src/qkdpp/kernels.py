"""Backend selection for the bit-level kernels.

The compiled extension is used when it imported; otherwise the numpy
implementation. Both produce identical outputs.
"""

from importlib import import_module

from . import _pykernels

try:
    from . import _ckernels as _default
except ImportError:  # extension not built
    _default = _pykernels

BACKENDS = ("cython", "python")


def get_backend(name: str | None = None):
    """Kernel module by name; ``None`` returns the import-time default."""
    if name is None:
        return _default
    if name == "python":
        return _pykernels
    if name == "cython":
        return import_module("._ckernels", __package__)
    raise ValueError(f"unknown kernel backend {name!r}")


def available() -> list[str]:
    names = ["python"]
    if _default is not _pykernels:
        names.insert(0, "cython")
    return names


backend = _default
BACKEND = _default.NAME
fisher_yates = _default.fisher_yates
toeplitz_hash = _default.toeplitz_hash
cascade = _default.cascade
