"""Backend selection for the curvature kernel.

The compiled extension (_curvcore, Cython) and the numpy twin
(_curvnumpy) implement the identical curvature_from_jets contract.  The
compiled one is loaded when present; set ORBIKIT_PURE=1 to force the numpy
path (useful for benchmarking and for debugging suspected kernel issues).
"""
import os

from . import _curvnumpy

numpy_backend = _curvnumpy

compiled_backend = None
if os.environ.get("ORBIKIT_PURE", "") != "1":
    try:
        from . import _curvcore as compiled_backend  # type: ignore[no-redef]
    except ImportError:
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else numpy_backend


def active_backend_name() -> str:
    return "compiled" if _active is compiled_backend and compiled_backend is not None else "numpy"


def curvature_from_jets(g, dg, ddg):
    return _active.curvature_from_jets(g, dg, ddg)
