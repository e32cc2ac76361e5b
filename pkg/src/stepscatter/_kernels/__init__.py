"""Hot-kernel backend selection.

The compiled Cython core is preferred when the extension built; the
pure-Python module is the fallback and the semantic reference.  Set
STEPSCATTER_PURE=1 in the environment to force the fallback (useful for
benchmarking and for debugging suspected extension issues).
"""
import os

from . import _pure

try:
    from . import _core
    HAVE_COMPILED = True
except ImportError:
    _core = None
    HAVE_COMPILED = False

if os.environ.get("STEPSCATTER_PURE") or not HAVE_COMPILED:
    _impl = _pure
else:
    _impl = _core

hyp2f1_series = _impl.hyp2f1_series
rk4_scatter = _impl.rk4_scatter


def backend_name():
    """Name of the active backend: 'compiled' or 'pure'."""
    return "compiled" if _impl is _core else "pure"
