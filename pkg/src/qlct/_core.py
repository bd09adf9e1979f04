"""Backend selection for the direct-quadrature kernel.

The compiled Cython extension is preferred when importable; the pure-NumPy
fallback is otherwise used transparently.  Set ``QLCT_PURE_PYTHON=1`` to force
the fallback (used by the benchmark to compare both).
"""

import os

from . import _kernels_py

if os.environ.get("QLCT_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

sandwich_sum = _impl.sandwich_sum


def backend_name() -> str:
    return "compiled" if _impl.__name__.endswith("._kernels") else "numpy"
