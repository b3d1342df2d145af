"""Integration kernels with import-time backend selection.

The compiled extension (_core, built from _core.pyx) is preferred; the
pure Python module (_pure) is the fallback. Both implement the same
functions with the same arithmetic, so results are bit-identical. Set
DUFFDRIVE_PURE=1 to force the fallback.
"""
import os

from . import _pure

if os.environ.get("DUFFDRIVE_PURE") == "1":
    _impl = _pure
    BACKEND = "pure-python"
else:
    try:
        from . import _core as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "pure-python"

integrate_driver = _impl.integrate_driver
integrate_response = _impl.integrate_response


def available_backends() -> dict:
    """Name -> module for every importable backend (for benchmarks/tests)."""
    out = {"pure-python": _pure}
    try:
        from . import _core
        out["compiled"] = _core
    except ImportError:
        pass
    return out
