"""Backend selection for the inner loops.

The compiled Cython module is preferred. Set ``EXTBLOCH_PURE=1`` before import
to force the numpy fallback. Both backends accept C-contiguous complex128 /
float64 arrays and return freshly allocated arrays.
"""

import os

import numpy as np

from . import _pykernels

_compiled = None
if os.environ.get("EXTBLOCH_PURE") != "1":
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "numpy"
_impl = _compiled if _compiled is not None else _pykernels


def _c(x, dtype=np.complex128):
    return np.ascontiguousarray(x, dtype=dtype)


def kron(a, b):
    return _impl.kron(_c(a), _c(b))


def partial_trace(d, na, nb, trace_out_b):
    return _impl.partial_trace(_c(d), int(na), int(nb), bool(trace_out_b))


def trace_products(d, gens):
    return _impl.trace_products(_c(d), _c(gens))


def count_outcomes(uniforms, cdf):
    return _impl.count_outcomes(_c(uniforms, np.float64), _c(cdf, np.float64))


def backends():
    """Return ``{name: module}`` for every importable backend."""
    found = {"numpy": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
