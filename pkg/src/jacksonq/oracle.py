"""Brute-force probes of the disk conditions, independent of the coefficient bounds.

Everything here samples the actual functions on a fixed polar grid. A sampled
minimum can confirm a certificate numerically but never refutes membership.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from jacksonq import kernels
from jacksonq.geomclass import (
    Property,
    _prop,
    kappa_closed_bound,
    p0_alpha_bound,
    positivity_condition,
)
from jacksonq.qbessel import CoefficientSeries, FamilyKind, _kind, series_h
from jacksonq.qcore import DEFAULT_TOL, QDomain, Tolerance

IMPLICATION_TOL = 1e-3
SINGULAR_TOL = 1e-12


class Functional(str, Enum):
    STARLIKE_QUOTIENT = "starlike"  # z f'(z) / f(z)
    CONVEX_QUOTIENT = "convex"  # 1 + z f''(z) / f'(z)
    RATIO_OVER_Z = "p0"  # f(z) / z


_FUNCTIONAL_FOR = {
    Property.STARLIKE: Functional.STARLIKE_QUOTIENT,
    Property.CONVEX: Functional.CONVEX_QUOTIENT,
    Property.P0: Functional.RATIO_OVER_Z,
}


@dataclass(frozen=True)
class DiskGrid:
    """Polar sample grid: ``radial_count`` circles crowding toward ``radius``."""

    radius: float = 0.999
    angular_count: int = 4096
    radial_count: int = 16

    def __post_init__(self):
        if not 0.0 < self.radius < 1.0:
            raise ValueError("radius must lie in (0,1)")
        if self.angular_count < 1 or self.radial_count < 1:
            raise ValueError("grid counts must be >= 1")

    def radii(self) -> np.ndarray:
        if self.radial_count == 1:
            return np.array([self.radius])
        # distance to the unit circle shrinks geometrically from 1 - radius/2
        inner = 1.0 - self.radius / 2.0
        outer = 1.0 - self.radius
        t = np.arange(self.radial_count) / (self.radial_count - 1)
        r = 1.0 - inner * (outer / inner) ** t
        r[-1] = self.radius
        return r

    def points(self) -> np.ndarray:
        m = self.angular_count
        rows = []
        for j, r in enumerate(self.radii()):
            # fixed irrational offset per circle so nodes do not line up radially
            shift = ((j * 0.6180339887498949) % 1.0) * 2.0 * math.pi / m
            theta = 2.0 * math.pi * np.arange(m) / m + shift
            rows.append(r * np.exp(1j * theta))
        return np.concatenate(rows)


def _functional_values(s: CoefficientSeries, functional: Functional, z: np.ndarray):
    f, fp, fpp = kernels.horner_derivs(s.power_coeffs(), z)
    if functional is Functional.STARLIKE_QUOTIENT:
        den = f
        val = z * fp / np.where(np.abs(den) < SINGULAR_TOL, 1.0, den)
    elif functional is Functional.CONVEX_QUOTIENT:
        den = fp
        val = 1.0 + z * fpp / np.where(np.abs(den) < SINGULAR_TOL, 1.0, den)
    else:
        den = z
        val = f / z
    return val, np.abs(den) < SINGULAR_TOL


def min_re_functional(
    s: CoefficientSeries, functional: Functional | str, grid: DiskGrid = DiskGrid()
) -> float:
    """Minimum of Re of the chosen functional over the grid.

    Returns ``-inf`` if any sampled denominator is below 1e-12 in modulus:
    the functional is unbounded near that sample.
    """
    functional = Functional(functional)
    val, singular = _functional_values(s, functional, grid.points())
    if np.any(singular):
        return -math.inf
    return float(np.min(val.real))


def integral_mean(s: CoefficientSeries, r: float, p: float, angular_count: int = 4096) -> float:
    """M_p(r, f): trapezoidal mean of |f(r e^(i t))|^p, or the max for p = inf."""
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie in (0,1)")
    if not p > 0:
        raise ValueError("p must be positive")
    theta = 2.0 * math.pi * np.arange(angular_count) / angular_count
    f, _, _ = kernels.horner_derivs(s.power_coeffs(), r * np.exp(1j * theta))
    mod = np.abs(f)
    if math.isinf(p):
        return float(np.max(mod))
    return float(np.mean(mod**p) ** (1.0 / p))


def m2_squared_exact(s: CoefficientSeries, r: float) -> float:
    """sum |a_n|^2 r^(2n), the exact value of M_2(r, f)^2 for the stored polynomial."""
    n = np.arange(1, s.order + 1)
    return math.fsum((np.abs(s.coeffs) ** 2 * r ** (2 * n)).tolist())


@dataclass(frozen=True)
class CrosscheckReport:
    kind: FamilyKind
    q: float
    nu: float
    alpha: float
    prop: Property
    certified: bool
    sampled_min: float
    implication_ok: bool
    reason: str = ""

    def as_dict(self):
        return {
            "kind": self.kind.value,
            "q": self.q,
            "nu": self.nu,
            "alpha": self.alpha,
            "property": self.prop.value,
            "certified": self.certified,
            "sampled_min": self.sampled_min,
            "implication_ok": self.implication_ok,
            "reason": self.reason,
        }


def certificate(kind: FamilyKind | str, qd: QDomain, alpha: float, prop: Property | str) -> tuple[bool, str]:
    """The coefficient-bound verdict for one property, without raising."""
    kind, prop = _kind(kind), _prop(prop)
    pos = positivity_condition(kind, qd)
    if not pos.holds:
        return False, f"{pos.condition_id.value} fails"
    if prop is Property.P0:
        bound = p0_alpha_bound(kind, qd).value
        return alpha < bound, f"P0 bound {bound:.12g}"
    rep = kappa_closed_bound(kind, prop, qd, alpha)
    return rep.holds, f"{rep.condition_id.value} lhs {rep.lhs_value:.12g}"


def crosscheck_sufficient_vs_sampled(
    kind: FamilyKind | str,
    qd: QDomain,
    alpha: float,
    prop: Property | str,
    grid: DiskGrid = DiskGrid(),
    tol: Tolerance = DEFAULT_TOL,
) -> CrosscheckReport:
    """Run the certificate and the grid sample; check certificate => min >= alpha - 1e-3."""
    kind, prop = _kind(kind), _prop(prop)
    certified, reason = certificate(kind, qd, alpha, prop)
    s = series_h(kind, qd, tol)
    sampled = min_re_functional(s, _FUNCTIONAL_FOR[prop], grid)
    ok = (not certified) or sampled >= alpha - IMPLICATION_TOL
    return CrosscheckReport(kind, qd.q, qd.nu, alpha, prop, certified, sampled, ok, reason)
