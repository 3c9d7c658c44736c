"""Backend selection for the Riccati order solver.

The compiled extension ``pslet._ckernel`` handles hardware doubles; any
other number type (mpmath at raised precision) goes through the pure-Python
routine.  Set ``PSLET_PURE_PYTHON=1`` to force the fallback everywhere.
"""
from __future__ import annotations

import os

from . import _kernel_py

try:
    if os.environ.get("PSLET_PURE_PYTHON"):
        raise ImportError("pure Python forced by environment")
    from . import _ckernel
except ImportError:
    _ckernel = None

HAVE_COMPILED = _ckernel is not None


def backend_name() -> str:
    return "compiled" if HAVE_COMPILED else "python"


def solve_orders(v, omega, k, s_max, zero=0.0, limit=None, backend="auto"):
    """Dispatch to the compiled kernel when possible.

    ``backend`` is ``"auto"``, ``"python"`` or ``"compiled"``.
    """
    use_c = isinstance(zero, float) and backend != "python" and HAVE_COMPILED
    if backend == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled kernel not built")
        if not isinstance(zero, float):
            raise TypeError("compiled kernel only handles floats")
    if use_c:
        return _ckernel.solve_orders(
            [[float(x) for x in p] for p in v], float(omega), int(k), int(s_max),
            float("inf") if limit is None else float(limit),
        )
    return _kernel_py.solve_orders(v, omega, k, s_max, zero=zero, limit=limit)
