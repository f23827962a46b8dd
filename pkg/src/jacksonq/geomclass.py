"""Coefficient-sum certificates for starlikeness, convexity and P0(alpha).

With C = (1-q)(1-q^nu), the coefficients of h2 and h3 are dominated by
rho^(n-1) where rho = q^nu / (4C) or sqrt(q) / C. Summing the weighted
geometric series in closed form gives A - alpha*B, and the Silverman-type
criterion sum (n - alpha)|a_n| <= 1 - alpha (resp. n(n - alpha)) then
certifies the class. Everything here is a *sufficient* condition.

Thresholds are exposed as upper bounds: A - alpha*B <= 1 - alpha is the
same as alpha <= (1 - A)/(1 - B) when B < 1. When B >= 1 the check can
never pass (A - alpha*B >= (2 - alpha)B > 1 - alpha), which is reported as
``direction_valid=False``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from jacksonq.qbessel import CoefficientSeries, FamilyKind, _kind
from jacksonq.qcore import QDomain


class HypothesisError(ValueError):
    """A theorem's hypothesis does not hold for the given parameters."""

    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition


class ConditionId(str, Enum):
    POSITIVITY2 = "Positivity2"
    POSITIVITY3 = "Positivity3"
    STARLIKE_BOUND2 = "StarlikeBound2"
    CONVEX_BOUND2 = "ConvexBound2"
    STARLIKE_BOUND3 = "StarlikeBound3"
    CONVEX_BOUND3 = "ConvexBound3"
    P0_BOUND2 = "P0Bound2"
    P0_BOUND3 = "P0Bound3"
    COR_I = "CorI"
    COR_II = "CorII"
    COR_III = "CorIII"
    COR_VI = "CorVI"


class Property(str, Enum):
    STARLIKE = "starlike"
    CONVEX = "convex"
    P0 = "p0"


@dataclass(frozen=True)
class ConditionReport:
    """``holds`` is ``lhs_value > bound`` when strict, else ``lhs_value <= bound``."""

    condition_id: ConditionId
    lhs_value: float
    holds: bool
    bound: float = 0.0
    strict: bool = True

    def as_dict(self):
        return {
            "condition_id": self.condition_id.value,
            "lhs_value": self.lhs_value,
            "bound": self.bound,
            "relation": ">" if self.strict else "<=",
            "holds": self.holds,
        }


@dataclass(frozen=True)
class AlphaThreshold:
    value: float
    direction_valid: bool
    note: str = ""

    def admits(self, alpha: float) -> bool:
        """True when the threshold certifies order ``alpha``."""
        return self.direction_valid and 0.0 <= alpha <= self.value and alpha < 1.0


def _prop(prop) -> Property:
    return prop if isinstance(prop, Property) else Property(str(prop).lower())


def _cq(qd: QDomain) -> float:
    return (1.0 - qd.q) * (1.0 - qd.q**qd.nu)


def positivity_condition(kind: FamilyKind | str, qd: QDomain) -> ConditionReport:
    """4C - q^nu > 0 (second kind) or C - sqrt(q) > 0 (third kind)."""
    kind = _kind(kind)
    c = _cq(qd)
    if kind is FamilyKind.SECOND:
        lhs = 4.0 * c - qd.q**qd.nu
        cid = ConditionId.POSITIVITY2
    else:
        lhs = c - math.sqrt(qd.q)
        cid = ConditionId.POSITIVITY3
    return ConditionReport(cid, lhs, lhs > 0.0)


def _require_positivity(kind: FamilyKind, qd: QDomain) -> None:
    rep = positivity_condition(kind, qd)
    if not rep.holds:
        raise HypothesisError(
            rep.condition_id.value,
            f"{rep.condition_id.value} fails (lhs = {rep.lhs_value:.12g} <= 0)",
        )


def closed_form_ab(kind: FamilyKind | str, prop: Property | str, qd: QDomain) -> tuple[float, float]:
    """(A, B) such that the weighted majorant sum equals A - alpha*B.

    Requires the positivity condition (otherwise the geometric series diverge).
    """
    kind, prop = _kind(kind), _prop(prop)
    _require_positivity(kind, qd)
    c = _cq(qd)
    if kind is FamilyKind.SECOND:
        p = qd.q**qd.nu
        d = 4.0 * c - p
        s1 = p / d
        s2 = p * (8.0 * c - p) / d**2
        s3 = p * (64.0 * c * c - 12.0 * p * c + p * p) / d**3
    else:
        s = math.sqrt(qd.q)
        e = c - s
        s1 = s / e
        s2 = (2.0 * s * c - qd.q) / e**2
        s3 = (4.0 * s * c * c - 3.0 * qd.q * c + qd.q * s) / e**3
    if prop is Property.STARLIKE:
        return s2, s1
    if prop is Property.CONVEX:
        return s3, s2
    raise ValueError("closed_form_ab covers starlike and convex only")


_BOUND_IDS = {
    (FamilyKind.SECOND, Property.STARLIKE): ConditionId.STARLIKE_BOUND2,
    (FamilyKind.SECOND, Property.CONVEX): ConditionId.CONVEX_BOUND2,
    (FamilyKind.THIRD, Property.STARLIKE): ConditionId.STARLIKE_BOUND3,
    (FamilyKind.THIRD, Property.CONVEX): ConditionId.CONVEX_BOUND3,
}


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must lie in [0,1)")


def kappa_closed_bound(
    kind: FamilyKind | str, prop: Property | str, qd: QDomain, alpha: float
) -> ConditionReport:
    """Check A - alpha*B <= 1 - alpha; when it holds h is starlike/convex of order alpha.

    Raises HypothesisError when the positivity condition fails.
    """
    kind, prop = _kind(kind), _prop(prop)
    _check_alpha(alpha)
    a, b = closed_form_ab(kind, prop, qd)
    lhs = a - alpha * b
    bound = 1.0 - alpha
    return ConditionReport(_BOUND_IDS[kind, prop], lhs, lhs <= bound, bound, strict=False)


def alpha_threshold(kind: FamilyKind | str, prop: Property | str, qd: QDomain) -> AlphaThreshold:
    """(1 - A) / (1 - B): the largest order certified by the closed-form bound."""
    a, b = closed_form_ab(kind, prop, qd)
    if b >= 1.0:
        value = (1.0 - a) / (1.0 - b) if b != 1.0 else math.nan
        return AlphaThreshold(value, False, "B >= 1: no order alpha in [0,1) is certified")
    value = (1.0 - a) / (1.0 - b)
    note = "clipped to 1" if value >= 1.0 else ""
    return AlphaThreshold(value, True, note)


def displayed_ratio(kind: FamilyKind | str, prop: Property | str, qd: QDomain) -> float:
    """The same thresholds written as single rational expressions in C, q^nu, sqrt(q).

    Independent algebra from ``alpha_threshold``; both must agree.
    """
    kind, prop = _kind(kind), _prop(prop)
    c = _cq(qd)
    if kind is FamilyKind.SECOND:
        p = qd.q**qd.nu
        if prop is Property.STARLIKE:
            return (p * p + 8 * c * c - 8 * p * c) / (p * p + 8 * c * c - 6 * p * c)
        num = 2 * p**3 - 24 * p * p * c + 112 * p * c * c - 64 * c**3
        den = 2 * p**3 - 24 * p * p * c + 80 * p * c * c - 64 * c**3
        return num / den
    s = math.sqrt(qd.q)
    e = c - s
    if prop is Property.STARLIKE:
        return (2 * s * c - qd.q - e * e) / (e * (2 * s - c))
    num = 4 * s * c * c - 3 * qd.q * c + qd.q * s - e**3
    den = e * (2 * s * c - qd.q - e * e)
    return num / den


def kappa_direct(s: CoefficientSeries, alpha: float, weight: Property | str) -> float:
    """sum_{n>=2} (n - alpha)|a_n|, or n(n - alpha)|a_n| for convexity, plus tail.

    The tail uses ``tail_ratio`` when the series carries one (a rigorous
    bound); otherwise it is estimated as weight(N+1) * tail_bound.
    """
    weight = _prop(weight)
    n = np.arange(1, s.order + 1, dtype=np.float64)
    w = n - alpha if weight is Property.STARLIKE else n * (n - alpha)
    mags = np.abs(s.coeffs)
    head = math.fsum((w[1:] * mags[1:]).tolist())
    return head + _weighted_tail(s, alpha, weight)


def _weighted_tail(s: CoefficientSeries, alpha: float, weight: Property) -> float:
    if s.tail_bound == 0.0:
        return 0.0
    n0 = s.order + 1

    def wt(m):
        return m - alpha if weight is Property.STARLIKE else m * (m - alpha)

    r = s.tail_ratio
    if r is None or r >= 1.0:
        return wt(n0) * s.tail_bound
    # |a_(n0+j)| <= |a_(n0)| r^j and |a_(n0)| <= tail_bound
    total = 0.0
    mag = s.tail_bound
    m = n0
    while True:
        term = wt(m) * mag
        total += term
        m += 1
        mag *= r
        # remaining terms: weights grow at most polynomially, ratio r < 1
        if mag == 0.0 or (term < 1e-30 and m > n0 + 4):
            break
        if m - n0 > 10_000:
            break
    return total


def p0_alpha_bound(kind: FamilyKind | str, qd: QDomain) -> AlphaThreshold:
    """(4C - 2q^nu)/(4C - q^nu) or (C - 2 sqrt q)/(C - sqrt q).

    For alpha below this value |p(z) - 1| < 1 with p = (h/z - alpha)/(1 - alpha),
    so h/z lies in P0(alpha).
    """
    kind = _kind(kind)
    _require_positivity(kind, qd)
    c = _cq(qd)
    if kind is FamilyKind.SECOND:
        p = qd.q**qd.nu
        value = (4 * c - 2 * p) / (4 * c - p)
    else:
        s = math.sqrt(qd.q)
        value = (c - 2 * s) / (c - s)
    return AlphaThreshold(value, True, "clipped to 1" if value >= 1.0 else "")


def p0_certifies(kind: FamilyKind | str, qd: QDomain, alpha: float) -> ConditionReport:
    """alpha < p0_alpha_bound, reported as a condition (lhs is the bound value)."""
    kind = _kind(kind)
    _check_alpha(alpha)
    bound = p0_alpha_bound(kind, qd).value
    cid = ConditionId.P0_BOUND2 if kind is FamilyKind.SECOND else ConditionId.P0_BOUND3
    return ConditionReport(cid, bound, bound > alpha, alpha, strict=True)


def corollary_flags(qd: QDomain) -> list[ConditionReport]:
    """The alpha = 0 and alpha = 1/2 specialisations of the P0 bounds."""
    c = _cq(qd)
    p = qd.q**qd.nu
    s = math.sqrt(qd.q)
    values = [
        (ConditionId.COR_I, 2 * c - p),
        (ConditionId.COR_II, c - 2 * s),
        (ConditionId.COR_III, 4 * c - 3 * p),
        (ConditionId.COR_VI, c - 3 * s),
    ]
    return [ConditionReport(cid, v, v > 0.0) for cid, v in values]


def gamma_combine(alpha: float, beta: float) -> float:
    """1 - 2(1 - alpha)(1 - beta): order of P0(alpha) * P0(beta)."""
    if not (alpha < 1 and beta < 1):
        raise ValueError("alpha and beta must be < 1")
    return 1.0 - 2.0 * (1.0 - alpha) * (1.0 - beta)
