"""Kernel dispatch: the compiled extension when importable, numpy otherwise.

Set ``JACKSONQ_PURE_PYTHON=1`` to force the fallback.
"""
import os

import numpy as np

from jacksonq import _kernels_py

try:
    from jacksonq import _kernels as _compiled
except ImportError:
    _compiled = None

_forced = bool(os.environ.get("JACKSONQ_PURE_PYTHON"))
_impl = _compiled if _compiled is not None and not _forced else _kernels_py
BACKEND = "cython" if _impl is _compiled else "python"


def available_backends():
    """Map backend name to module, for tests and benchmarks. Ignores the override."""
    found = {"python": _kernels_py}
    if _compiled is not None:
        found["cython"] = _compiled
    return found


def horner_derivs(coeffs, z):
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    z = np.ascontiguousarray(z, dtype=np.complex128)
    return _impl.horner_derivs(coeffs, z)


def log_qpoch_inf(a, q, cutoff, max_terms):
    return _impl.log_qpoch_inf(float(a), float(q), float(cutoff), int(max_terms))
