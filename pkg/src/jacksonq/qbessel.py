"""Jackson's second and third q-Bessel functions and their normalized forms.

The normalized functions

    h2(z) = z + sum_{n>=2} (-1)^(n-1) q^((n-1)(n-1+nu)) / (4^(n-1) (q;q)_(n-1) (q^(nu+1);q)_(n-1)) z^n
    h3(z) = z + sum_{n>=2} (-1)^(n-1) q^(n(n-1)/2)     / (        (q;q)_(n-1) (q^(nu+1);q)_(n-1)) z^n

are represented by their coefficient sequences only. The identity relating
them to J2/J3 involves z^(1 - nu/2) and is used purely as a cross-check on
the positive real axis.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from jacksonq import kernels
from jacksonq.qcore import (
    DEFAULT_TOL,
    ConvergenceError,
    Estimate,
    QDomain,
    Tolerance,
    c_nu,
    classical_bessel_j,
    log_qpochhammer_inf,
    qpochhammer,
)


class FamilyKind(str, Enum):
    SECOND = "second"
    THIRD = "third"


@dataclass(frozen=True)
class CoefficientSeries:
    """Truncated power series z + a2 z^2 + ... + aN z^N of a normalized function.

    ``coeffs[0]`` is a1 and must equal 1. ``tail_bound`` bounds sum_{n>N} |a_n|.
    ``tail_ratio``, when known, bounds |a_(n+1)| / |a_n| for every n > N and lets
    weighted tails be bounded too. ``rho`` records a geometric majorant
    |a_n| <= rho^(n-1) valid for all n >= 2, if one is known.
    """

    coeffs: np.ndarray
    tail_bound: float = 0.0
    label: str = ""
    tail_ratio: float | None = None
    rho: float | None = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.size == 0 or c[0] != 1:
            raise ValueError("normalized series must start with a1 = 1")
        if not self.tail_bound >= 0:
            raise ValueError("tail_bound must be nonnegative")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def identity(cls) -> CoefficientSeries:
        return cls(np.array([1.0]), 0.0, "z")

    @property
    def order(self) -> int:
        """Index N of the last stored coefficient."""
        return self.coeffs.size

    def coefficient(self, n: int) -> complex:
        """a_n (zero beyond the stored truncation)."""
        if n < 1:
            raise ValueError("coefficients are indexed from 1")
        return complex(self.coeffs[n - 1]) if n <= self.order else 0j

    def power_coeffs(self) -> np.ndarray:
        """Coefficients indexed by power of z, i.e. with a leading zero."""
        return np.concatenate(([0j], self.coeffs))


def _kind(kind) -> FamilyKind:
    return kind if isinstance(kind, FamilyKind) else FamilyKind(str(kind).lower())


def coeff_h(kind: FamilyKind | str, n: int, qd: QDomain) -> float:
    """Coefficient of z^n in the normalized function h2 or h3."""
    kind = _kind(kind)
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 1.0
    q, nu = qd.q, qd.nu
    m = n - 1
    den = qpochhammer(q, q, m) * qpochhammer(q ** (nu + 1.0), q, m)
    if kind is FamilyKind.SECOND:
        mag = q ** (m * (m + nu)) / (4.0**m * den)
    else:
        mag = q ** (n * m / 2.0) / den
    return -mag if m % 2 else mag


def coeff_ratio(kind: FamilyKind | str, n: int, qd: QDomain) -> float:
    """b_(n+1) / b_n in closed form, for n >= 1."""
    kind = _kind(kind)
    if n < 1:
        raise ValueError("n must be >= 1")
    q, nu = qd.q, qd.nu
    den = (1.0 - q**n) * (1.0 - q ** (nu + n))
    if kind is FamilyKind.SECOND:
        return -(q ** (2 * n - 1 + nu)) / (4.0 * den)
    return -(q**n) / den


def majorant_ratio(kind: FamilyKind | str, qd: QDomain) -> float | None:
    """rho with |b_n| <= rho^(n-1): q^nu/(4(1-q)(1-q^nu)) or sqrt(q)/((1-q)(1-q^nu)).

    None when nu <= 0, where 1 - q^nu is not positive and no such bound follows.
    """
    kind = _kind(kind)
    if qd.nu <= 0:
        return None
    c = (1.0 - qd.q) * (1.0 - qd.q**qd.nu)
    if kind is FamilyKind.SECOND:
        return qd.q**qd.nu / (4.0 * c)
    return math.sqrt(qd.q) / c


def series_h(kind: FamilyKind | str, qd: QDomain, tol: Tolerance = DEFAULT_TOL) -> CoefficientSeries:
    """Coefficient series of h2/h3, truncated once |b_n| drops below term_cutoff.

    The term ratio |b_(n+1)/b_n| decreases monotonically in n, so once it is
    below 1 the omitted tail is bounded geometrically by that ratio. When the
    majorant rho < 1 is available its bound is used too and the smaller wins.
    """
    kind = _kind(kind)
    coeffs = [1.0]
    b = 1.0
    n = 1
    while True:
        r = coeff_ratio(kind, n, qd)
        nxt = b * r
        if abs(nxt) < tol.term_cutoff and abs(coeff_ratio(kind, n + 1, qd)) < 1.0:
            break
        if len(coeffs) >= tol.max_terms:
            raise ConvergenceError(f"h series did not reach cutoff within {tol.max_terms} terms")
        b = nxt
        coeffs.append(b)
        n += 1
    # first omitted coefficient is b_(N+1) = nxt; later ones shrink by at most r_next
    r_next = abs(coeff_ratio(kind, n + 1, qd))
    tail = abs(nxt) / (1.0 - r_next)
    rho = majorant_ratio(kind, qd)
    if rho is not None and rho < 1.0:
        tail = min(tail, rho**n / (1.0 - rho))
    else:
        rho = None
    label = f"h{'2' if kind is FamilyKind.SECOND else '3'}(q={qd.q!r}, nu={qd.nu!r})"
    return CoefficientSeries(np.array(coeffs), tail, label, tail_ratio=r_next, rho=rho)


def eval_series(s: CoefficientSeries, z):
    """Sum a_n z^n over the stored coefficients; scalar or array ``z`` with |z| <= 1.

    The truncation error is at most ``s.tail_bound`` on the closed disk.
    """
    zarr = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(zarr) > 1.0 + 1e-12):
        raise ValueError("eval_series requires |z| <= 1")
    f, _, _ = kernels.horner_derivs(s.power_coeffs(), zarr.ravel())
    if zarr.ndim == 0:
        return complex(f[0])
    return f.reshape(zarr.shape)


def derivative_coeffs(s: CoefficientSeries) -> np.ndarray:
    """Coefficients of f' by power of z: entry k is (k+1) a_(k+1)."""
    n = np.arange(1, s.order + 1)
    return s.coeffs * n


def eval_jackson(
    kind: FamilyKind | str, qd: QDomain, z: complex, tol: Tolerance = DEFAULT_TOL
) -> Estimate:
    """J_nu^(2)(z; q) or J_nu^(3)(z; q) from the defining series.

    The prefactor (q^(nu+1);q)_inf / (q;q)_inf is built from logarithms so it
    stays finite for q close to 1. Fractional powers use the principal branch.
    """
    kind = _kind(kind)
    q, nu = qd.q, qd.nu
    z = complex(z)
    base = z / 2.0 if kind is FamilyKind.SECOND else z
    num = log_qpochhammer_inf(q ** (nu + 1.0), q, tol)
    den = log_qpochhammer_inf(q, q, tol)
    log_pref = num.value - den.value
    pref = math.exp(log_pref)
    pref_rel = math.expm1(num.error + den.error)
    if z == 0:
        if nu == 0:
            return Estimate(pref + 0j, pref * pref_rel)
        if nu > 0:
            return Estimate(0j, 0.0)
        raise ValueError("J_nu is singular at z = 0 for nu < 0")
    term = cmath.exp(nu * cmath.log(base))
    b2 = base * base
    total = term
    for n in range(0, tol.max_terms):
        if kind is FamilyKind.SECOND:
            r = b2 * q ** (2 * n + 1 + nu)
        else:
            r = b2 * q ** (n + 1)
        r = -r / ((1.0 - q ** (n + 1)) * (1.0 - q ** (nu + n + 1)))
        term = term * r
        total += term
        # |ratio| is decreasing in n, so the next ratio bounds all later ones
        if kind is FamilyKind.SECOND:
            r_next = abs(b2) * q ** (2 * n + 3 + nu)
        else:
            r_next = abs(b2) * q ** (n + 2)
        r_next /= (1.0 - q ** (n + 2)) * (1.0 - q ** (nu + n + 2))
        if r_next < 1.0:
            tail = abs(term) * r_next / (1.0 - r_next)
            if tail <= tol.term_cutoff * max(abs(total), 1e-300):
                value = pref * total
                return Estimate(value, pref * tail + abs(value) * pref_rel)
    raise ConvergenceError(f"Jackson series at z={z} did not converge in {tol.max_terms} terms")


def normalized_from_jackson(
    kind: FamilyKind | str, qd: QDomain, w: float, tol: Tolerance = DEFAULT_TOL
) -> Estimate:
    """h(w) recovered from J at sqrt(w) for real w in (0, 1].

    h2(w) = 2^nu c_nu w^(1 - nu/2) J2(sqrt w), h3(w) = c_nu w^(1 - nu/2) J3(sqrt w).
    """
    kind = _kind(kind)
    if not 0.0 < w <= 1.0:
        raise ValueError("w must lie in (0, 1]")
    j = eval_jackson(kind, qd, math.sqrt(w), tol)
    scale = c_nu(qd, tol) * w ** (1.0 - qd.nu / 2.0)
    if kind is FamilyKind.SECOND:
        scale *= 2.0**qd.nu
    return Estimate(scale * j.value, scale * j.error)


# the q -> 1 probe needs (q;q)_inf with tens of thousands of factors
LIMIT_TOL = Tolerance(term_cutoff=1e-16, max_terms=2_000_000)


def limit_relation_error(
    kind: FamilyKind | str, nu: float, z: complex, q: float, tol: Tolerance = LIMIT_TOL
) -> float:
    """|J^(k)((1-q) z; q) - J_nu(m z)| with m = 1 for the second kind, 2 for the third."""
    kind = _kind(kind)
    qd = QDomain(q, nu)
    lhs = eval_jackson(kind, qd, (1.0 - q) * complex(z), tol)
    m = 1.0 if kind is FamilyKind.SECOND else 2.0
    rhs = classical_bessel_j(nu, m * complex(z), tol)
    return abs(lhs.value - rhs.value)
