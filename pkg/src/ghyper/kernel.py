"""Kernel selection: compiled extension when available, numpy otherwise.

Set the environment variable GHYPER_PURE_PYTHON=1 before import to force the
numpy kernel (used by the benchmark and by tests comparing the two).
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("GHYPER_PURE_PYTHON"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

tensor_sums = _impl.tensor_sums


def active_kernel_name() -> str:
    """'compiled' or 'python', depending on what was importable."""
    return _impl.kernel_name()


def available_kernels() -> dict:
    """Map of kernel name -> module, for benchmarks and equivalence tests."""
    kernels = {"python": _kernel_py}
    try:
        from . import _kernel_cy
        kernels["compiled"] = _kernel_cy
    except ImportError:
        pass
    return kernels
