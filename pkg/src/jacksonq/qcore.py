"""q-series primitives, closed-form geometric sums and the classical Bessel series."""
from __future__ import annotations

import cmath
import decimal
import math
from decimal import Decimal
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from jacksonq import kernels


class ConvergenceError(ArithmeticError):
    """A truncated series or product hit ``max_terms`` before its cutoff."""


@dataclass(frozen=True)
class QDomain:
    """Parameter pair (q, nu) with 0 < q < 1 and nu > -1."""

    q: float
    nu: float

    def __post_init__(self):
        if not (0.0 < self.q < 1.0) or math.isnan(self.q):
            raise ValueError("q must lie in (0,1)")
        if not self.nu > -1.0:
            raise ValueError("nu must be greater than -1")


@dataclass(frozen=True)
class Tolerance:
    """Series truncation policy."""

    term_cutoff: float = 1e-16
    max_terms: int = 512

    def __post_init__(self):
        if not self.term_cutoff > 0:
            raise ValueError("term_cutoff must be positive")
        if self.max_terms < 2:
            raise ValueError("max_terms must be at least 2")


DEFAULT_TOL = Tolerance()
_EPS = 2.220446049250313e-16


class Estimate(NamedTuple):
    """A computed value with an absolute error bound."""

    value: complex | float
    error: float


def qpochhammer(a: float, q: float, n: int) -> float:
    """Finite q-Pochhammer symbol (a; q)_n = prod_{k=1..n} (1 - a q^(k-1))."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = 1.0
    factor = a
    for _ in range(n):
        result *= 1.0 - factor
        factor *= q
    return result


def log_qpochhammer_inf(a: float, q: float, tol: Tolerance = DEFAULT_TOL) -> Estimate:
    """log (a; q)_inf for |a| < 1, with a bound on the dropped tail of the log.

    Factors are taken until |a q^(k-1)| < term_cutoff. The remaining factors
    change the logarithm by at most about term_cutoff / (1 - q); the error
    also carries a floating-point allowance of a few ulps per factor.
    """
    if not abs(a) < 1.0:
        raise ValueError("|a| must be < 1 for (a;q)_inf to converge")
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0,1)")
    s, count = kernels.log_qpoch_inf(a, q, tol.term_cutoff, tol.max_terms)
    if count < 0:
        raise ConvergenceError(
            f"(a;q)_inf with a={a}, q={q} needs more than {tol.max_terms} factors"
        )
    # -log(1-x) <= x/(1-x) summed over the geometric tail
    tail = tol.term_cutoff / ((1.0 - q) * (1.0 - tol.term_cutoff))
    rounding = (count + 1) * _EPS * (abs(s) + 1.0)
    return Estimate(s, tail + rounding)


def qpochhammer_inf(a: float, q: float, tol: Tolerance = DEFAULT_TOL) -> Estimate:
    """Infinite q-Pochhammer symbol (a; q)_inf with an absolute error estimate."""
    log_value, log_err = log_qpochhammer_inf(a, q, tol)
    value = math.exp(log_value)
    return Estimate(value, value * (math.expm1(log_err) + _EPS))


def c_nu(qd: QDomain, tol: Tolerance = DEFAULT_TOL) -> float:
    """(q; q)_inf / (q^(nu+1); q)_inf, formed as a difference of logarithms."""
    num = log_qpochhammer_inf(qd.q, qd.q, tol)
    den = log_qpochhammer_inf(qd.q ** (qd.nu + 1.0), qd.q, tol)
    return math.exp(num.value - den.value)


class SumKind(str, Enum):
    """Geometric-type sums over n >= 2."""

    S1 = "S1"  # sum r^(n-1)
    S2 = "S2"  # sum n r^(n-1)
    S3 = "S3"  # sum n^2 r^(n-1)
    S4 = "S4"  # sum r^n / n


def geom_sum_closed(kind: SumKind | str, r: float) -> float:
    """Closed form of the selected sum over n >= 2, valid for |r| < 1."""
    kind = SumKind(kind)
    if not abs(r) < 1.0:
        raise ValueError("|r| must be < 1")
    if kind is SumKind.S1:
        return r / (1.0 - r)
    if kind is SumKind.S2:
        return r * (2.0 - r) / (1.0 - r) ** 2
    if kind is SumKind.S3:
        return r * (r * r - 3.0 * r + 4.0) / (1.0 - r) ** 3
    return -math.log1p(-r) - r


def geom_sum_partial(kind: SumKind | str, r: float, n_max: int = 400) -> float:
    """Direct summation of the same series for 2 <= n <= n_max."""
    kind = SumKind(kind)
    terms = []
    for n in range(2, n_max + 1):
        if kind is SumKind.S1:
            terms.append(r ** (n - 1))
        elif kind is SumKind.S2:
            terms.append(n * r ** (n - 1))
        elif kind is SumKind.S3:
            terms.append(n * n * r ** (n - 1))
        else:
            terms.append(r**n / n)
    return math.fsum(terms)


def _principal_power(z: complex, nu: float) -> complex:
    if z == 0:
        if nu == 0:
            return 1.0 + 0j
        if nu > 0:
            return 0j
        raise ValueError("z**nu is singular at z = 0 for nu < 0")
    return cmath.exp(nu * cmath.log(z))


def classical_bessel_j(nu: float, z: complex, tol: Tolerance = DEFAULT_TOL) -> Estimate:
    """J_nu(z) from its power series, principal branch for (z/2)^nu.

    J = (z/2)^nu / Gamma(nu+1) * sum_n w^n / (n! (nu+1)_n) with w = -(z/2)^2.
    The leading factor uses log-gamma. For |z| of a few tens the partial sums
    cancel by many orders of magnitude, so the sum runs in decimal arithmetic
    with enough guard digits to cover the largest term (about e^|z|).
    """
    if not nu > -1.0:
        raise ValueError("nu must be greater than -1")
    z = complex(z)
    half = z / 2.0
    if z == 0:
        if nu == 0:
            return Estimate(1.0 + 0j, 0.0)
        return Estimate(_principal_power(half, nu), 0.0)
    lead = cmath.exp(nu * cmath.log(half) - math.lgamma(nu + 1.0))
    w = -(half * half)
    digits = 20 + int(abs(z) / math.log(10.0)) + 1
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        wr, wi = Decimal(w.real), Decimal(w.imag)
        dnu = Decimal(nu)
        tr, ti = Decimal(1), Decimal(0)
        sr, si = Decimal(1), Decimal(0)
        aw = abs(w)
        for n in range(1, tol.max_terms + 1):
            den = n * (n + dnu)
            tr, ti = (tr * wr - ti * wi) / den, (tr * wi + ti * wr) / den
            sr += tr
            si += ti
            ratio = aw / ((n + 1) * (n + 1 + nu))
            if ratio < 1.0:
                mag = math.hypot(float(tr), float(ti))
                total = math.hypot(float(sr), float(si))
                tail = mag * ratio / (1.0 - ratio)
                if tail < tol.term_cutoff * max(1.0, total):
                    value = lead * complex(float(sr), float(si))
                    # tail plus a few ulps from the leading factor and rounding back
                    err = abs(lead) * tail + 4.0 * _EPS * abs(value)
                    return Estimate(value, err)
    raise ConvergenceError(f"J_nu series for z={z} did not converge in {tol.max_terms} terms")
