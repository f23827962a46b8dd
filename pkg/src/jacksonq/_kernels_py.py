"""Pure numpy versions of the compiled kernels (same signatures, same results)."""
import math

import numpy as np


def horner_derivs(coeffs, z):
    """Evaluate p, p' and p'' at every point of ``z``; ``coeffs[k]`` multiplies ``z**k``."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    n = coeffs.shape[0]
    if n == 0:
        zero = np.zeros_like(z)
        return zero, zero.copy(), zero.copy()
    p = np.full_like(z, coeffs[n - 1])
    dp = np.zeros_like(z)
    ddp = np.zeros_like(z)
    for k in range(n - 2, -1, -1):
        ddp = ddp * z + dp
        dp = dp * z + p
        p = p * z + coeffs[k]
    return p, dp, 2.0 * ddp


def log_qpoch_inf(a, q, cutoff, max_terms):
    """Return ``(sum of log(1 - a q**k), number of factors)``; count -1 on overrun."""
    if abs(a) < cutoff:
        return 0.0, 0
    # smallest k with |a| q**k < cutoff
    needed = math.ceil(math.log(cutoff / abs(a)) / math.log(q))
    while abs(a) * q ** needed >= cutoff:
        needed += 1
    while needed > 0 and abs(a) * q ** (needed - 1) < cutoff:
        needed -= 1
    count = min(needed, max_terms)
    x = a * q ** np.arange(count, dtype=np.float64)
    s = float(np.sum(np.log1p(-x)))
    if needed > max_terms:
        return s, -1
    return s, count
