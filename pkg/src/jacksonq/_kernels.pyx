# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Mirrors ``_kernels_py`` exactly."""
import numpy as np

from libc.math cimport fabs, log1p


def horner_derivs(const double complex[::1] coeffs, const double complex[::1] z):
    """Evaluate p, p' and p'' at every point of ``z``.

    ``coeffs[k]`` is the coefficient of ``z**k``.
    """
    cdef Py_ssize_t n = coeffs.shape[0]
    cdef Py_ssize_t m = z.shape[0]
    out = np.zeros((3, m), dtype=np.complex128)
    cdef double complex[:, ::1] res = out
    cdef Py_ssize_t i, k
    cdef double complex zi, p, dp, ddp
    if n == 0:
        return out[0], out[1], out[2]
    with nogil:
        for i in range(m):
            zi = z[i]
            p = coeffs[n - 1]
            dp = 0
            ddp = 0
            for k in range(n - 2, -1, -1):
                ddp = ddp * zi + dp
                dp = dp * zi + p
                p = p * zi + coeffs[k]
            res[0, i] = p
            res[1, i] = dp
            res[2, i] = 2.0 * ddp
    return out[0], out[1], out[2]


def log_qpoch_inf(double a, double q, double cutoff, long max_terms):
    """Return ``(sum of log(1 - a q**k), number of factors)``.

    The factor count is -1 when ``max_terms`` factors did not reach the cutoff.
    """
    cdef double s = 0.0
    cdef double x = a
    cdef long k = 0
    while fabs(x) >= cutoff:
        if k >= max_terms:
            return s, -1
        s += log1p(-x)
        x *= q
        k += 1
    return s, k
