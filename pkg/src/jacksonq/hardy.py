"""Hardy-space classification and Hadamard-product certificates."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from jacksonq.geomclass import (
    HypothesisError,
    Property,
    gamma_combine,
    kappa_closed_bound,
    p0_alpha_bound,
    positivity_condition,
)
from jacksonq.qbessel import CoefficientSeries, FamilyKind, _kind, majorant_ratio, series_h
from jacksonq.qcore import QDomain, Tolerance, DEFAULT_TOL


class HardyKind(str, Enum):
    FINITE_EXPONENT = "finite_exponent"
    INFINITY = "infinity"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class HardyMembership:
    kind: HardyKind
    exponent: float | None = None
    basis: str = ""

    def as_dict(self):
        return {"kind": self.kind.value, "exponent": self.exponent, "basis": self.basis}


# residual below which a series is treated as matching an exceptional form
EXCEPTIONAL_TOL = 1e-12
# boundary coefficients such as 2/n e^(i phi) round to a few ulps above 2/n
MACGREGOR_SLACK = 1e-12


def exceptional_form_residual(s: CoefficientSeries, alpha: float) -> float:
    """Distance of ``s`` from the extremal convex functions of order alpha.

    Those are k + l z (1 - z e^(i theta))^(2 alpha - 1) for alpha != 1/2 and
    k + l log(1 - z e^(i theta)) for alpha = 1/2. Matching z^0, z^1, z^2
    fixes k, l and w = e^(i theta) (allowing |w| != 1); the residual is the
    larger of ||w| - 1| and the mismatch in the z^3 coefficient.
    """
    a2 = s.coefficient(2)
    a3 = s.coefficient(3)
    # k = 0 from f(0) = 0
    if abs(alpha - 0.5) < 1e-15:
        # -l sum e^(i theta n) z^(n+1) / (n+1): l = -1, a2 = w/2, a3 = w^2/3
        w = 2.0 * a2
        pred3 = w * w / 3.0
    else:
        # l sum (1-2a)_n / n! e^(i theta n) z^(n+1): l = 1
        c1 = 1.0 - 2.0 * alpha
        c2 = c1 * (c1 + 1.0) / 2.0
        w = a2 / c1
        pred3 = c2 * w * w
    return max(abs(abs(w) - 1.0), abs(a3 - pred3))


def hardy_classify(
    kind: FamilyKind | str, qd: QDomain, alpha: float, tol: Tolerance = DEFAULT_TOL
) -> HardyMembership:
    """Hardy class of h2/h3 implied by convexity of order alpha.

    H^(1/(1-2 alpha)) for alpha < 1/2, bounded (H^inf) for alpha >= 1/2.
    Unclassified when a hypothesis fails; that says nothing about membership.
    """
    kind = _kind(kind)
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must lie in [0,1)")
    pos = positivity_condition(kind, qd)
    if not pos.holds:
        return HardyMembership(HardyKind.UNCLASSIFIED, None, f"{pos.condition_id.value} fails")
    convex = kappa_closed_bound(kind, Property.CONVEX, qd, alpha)
    if not convex.holds:
        return HardyMembership(HardyKind.UNCLASSIFIED, None, f"{convex.condition_id.value} fails")
    if exceptional_form_residual(series_h(kind, qd, tol), alpha) < EXCEPTIONAL_TOL:
        return HardyMembership(HardyKind.UNCLASSIFIED, None, "matches an extremal convex form")
    if alpha < 0.5:
        return HardyMembership(HardyKind.FINITE_EXPONENT, 1.0 / (1.0 - 2.0 * alpha), "convex-order-below-half")
    if alpha == 0.5:
        return HardyMembership(HardyKind.INFINITY, None, "convex-order-half")
    return HardyMembership(HardyKind.INFINITY, None, "convex-order-above-half")


def _mul(x: float, y: float) -> float:
    # 0 * inf is an exact zero tail here, not nan
    return 0.0 if x == 0.0 or y == 0.0 else x * y


def hadamard(f: CoefficientSeries, g: CoefficientSeries) -> CoefficientSeries:
    """Coefficient-wise product z + sum a_n b_n z^n, cut to the shorter truncation.

    Beyond that length one factor's coefficients are unknown, so the tail
    bound pairs each series' tail with the other's largest stored coefficient
    (or its own tail, if larger); the smaller of the two products is kept.
    """
    n = min(f.order, g.order)
    a, b = f.coeffs[:n], g.coeffs[:n]
    # written out so the product is bitwise symmetric in f and g
    coeffs = (a.real * b.real - a.imag * b.imag) + 1j * (a.real * b.imag + a.imag * b.real)
    sup_f = max(float(np.max(np.abs(f.coeffs))), f.tail_bound)
    sup_g = max(float(np.max(np.abs(g.coeffs))), g.tail_bound)
    # omitted terms n > N: sum |a_n b_n| <= (sum_{n>N} |a_n|) sup |b_n|
    tail_f = f.tail_bound + float(np.sum(np.abs(f.coeffs[n:])))
    tail_g = g.tail_bound + float(np.sum(np.abs(g.coeffs[n:])))
    tail = min(_mul(tail_f, sup_g), _mul(tail_g, sup_f))
    ratio = None
    if f.tail_ratio is not None and g.tail_ratio is not None and f.order == g.order:
        ratio = f.tail_ratio * g.tail_ratio
    label = f"({f.label})*({g.label})"
    return CoefficientSeries(coeffs, tail, label, tail_ratio=ratio)


def macgregor_check(f: CoefficientSeries) -> bool:
    """n |a_n| <= 2 for every stored n >= 2, up to a few ulps of rounding."""
    n = np.arange(1, f.order + 1)
    return bool(np.all(n[1:] * np.abs(f.coeffs[1:]) <= 2.0 * (1.0 + MACGREGOR_SLACK)))


def _hadamard_hypothesis(kind: FamilyKind, qd: QDomain) -> tuple[str, float]:
    c = (1.0 - qd.q) * (1.0 - qd.q**qd.nu)
    if kind is FamilyKind.SECOND:
        return "CorIII", 4.0 * c - 3.0 * qd.q**qd.nu
    return "CorVI", c - 3.0 * math.sqrt(qd.q)


def hadamard_sup_bound(kind: FamilyKind | str, qd: QDomain) -> float:
    """1 + (2/rho)(log(1/(1-rho)) - rho): bound on |h * f| over the closed disk.

    Holds for every f with n|a_n| <= 2. Requires 4C - 3q^nu > 0 (second kind)
    or C - 3 sqrt(q) > 0 (third kind), which forces rho < 1/3.
    """
    kind = _kind(kind)
    name, lhs = _hadamard_hypothesis(kind, qd)
    if not lhs > 0.0:
        raise HypothesisError(name, f"{name} fails (lhs = {lhs:.12g} <= 0)")
    rho = majorant_ratio(kind, qd)
    if rho == 0.0:
        return 1.0
    # log(1/(1-rho)) - rho without cancellation
    return 1.0 + 2.0 * (-math.log1p(-rho) - rho) / rho


@dataclass(frozen=True)
class ConvolutionCertificate:
    """A certified statement about h * f, conditional on the stated assumption on f."""

    kind: FamilyKind
    assumption: str
    conclusion: str
    sup_bound: float | None = None
    gamma: float | None = None

    def as_dict(self):
        return {
            "kind": self.kind.value,
            "assumption": self.assumption,
            "conclusion": self.conclusion,
            "sup_bound": self.sup_bound,
            "gamma": self.gamma,
        }


def theorem6_verdict(kind: FamilyKind | str, qd: QDomain, f: CoefficientSeries) -> ConvolutionCertificate:
    """u = h * f is bounded with Re u' > 0, given f in R.

    f in R cannot be decided from finitely many coefficients; the necessary
    condition n|a_n| <= 2 is checked instead and the rest stays an assumption.
    Raises HypothesisError naming the failed condition.
    """
    kind = _kind(kind)
    if not macgregor_check(f):
        raise HypothesisError("MacGregor", "f violates n|a_n| <= 2, so f is not in R")
    bound = hadamard_sup_bound(kind, qd)
    return ConvolutionCertificate(
        kind,
        assumption="f in R (Re f' > 0)",
        conclusion="h*f is in H^inf and in R",
        sup_bound=bound,
        gamma=0.0,
    )


def theorem7_verdict(
    kind: FamilyKind | str, qd: QDomain, alpha: float, beta: float
) -> ConvolutionCertificate:
    """h * f in R0(gamma) with gamma = 1 - 2(1-alpha)(1-beta), given f in R0(beta).

    Needs the positivity condition and alpha below the P0 bound.
    """
    kind = _kind(kind)
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must lie in [0,1)")
    if not beta < 1.0:
        raise ValueError("beta must be < 1")
    bound = p0_alpha_bound(kind, qd)
    if not alpha < bound.value:
        cid = "P0Bound2" if kind is FamilyKind.SECOND else "P0Bound3"
        raise HypothesisError(cid, f"alpha = {alpha} is not below the P0 bound {bound.value:.12g}")
    gamma = gamma_combine(alpha, beta)
    return ConvolutionCertificate(
        kind,
        assumption=f"f in R0({beta:g})",
        conclusion=f"h*f is in R0({gamma:.12g})",
        gamma=gamma,
    )
