"""Randomized invariant families behind ``jacksonq verify`` and the acceptance tests.

Each family draws its own parameters from a generator seeded by (seed, family
name), so results do not depend on which other families run or in what order.
"""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field

import numpy as np

from jacksonq.geomclass import (
    Property,
    alpha_threshold,
    closed_form_ab,
    displayed_ratio,
    kappa_closed_bound,
    kappa_direct,
    positivity_condition,
)
from jacksonq.hardy import _hadamard_hypothesis, hadamard, hadamard_sup_bound
from jacksonq.oracle import DiskGrid, crosscheck_sufficient_vs_sampled, integral_mean, m2_squared_exact
from jacksonq.qbessel import (
    CoefficientSeries,
    FamilyKind,
    coeff_h,
    eval_series,
    limit_relation_error,
    majorant_ratio,
    series_h,
)
from jacksonq.qcore import QDomain, SumKind, geom_sum_closed, geom_sum_partial

KINDS = (FamilyKind.SECOND, FamilyKind.THIRD)


@dataclass
class FamilyResult:
    name: str
    checked: int = 0
    violations: int = 0
    worst: float = 0.0
    details: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.checked > 0

    def record(self, ok: bool, excess: float = 0.0, detail=None):
        self.checked += 1
        if not ok:
            self.violations += 1
            if detail is not None and len(self.details) < 5:
                self.details.append(detail)
        self.worst = max(self.worst, excess)

    def as_dict(self):
        return {
            "name": self.name,
            "checked": self.checked,
            "violations": self.violations,
            "worst": self.worst,
            "passed": self.passed,
            "details": self.details,
        }


def rng_for(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def _draw_positive(rng, kind, q_range, nu_range, max_tries=100_000):
    for _ in range(max_tries):
        qd = QDomain(rng.uniform(*q_range), rng.uniform(*nu_range))
        if positivity_condition(kind, qd).holds:
            return qd
    raise RuntimeError("could not sample a parameter point satisfying the positivity condition")


def coefficient_majorant(seed: int, samples: int = 500, n_max: int = 40) -> FamilyResult:
    """|b_n| <= rho^(n-1) for 2 <= n <= n_max whenever rho < 1."""
    res = FamilyResult("coefficient_majorant")
    rng = rng_for(seed, res.name)
    drawn = 0
    while drawn < samples:
        qd = QDomain(rng.uniform(0.01, 0.95), rng.uniform(0.05, 3.0))
        rhos = {k: majorant_ratio(k, qd) for k in KINDS}
        if not all(r < 1.0 for r in rhos.values()):
            continue
        drawn += 1
        for kind in KINDS:
            rho = rhos[kind]
            for n in range(2, n_max + 1):
                b = abs(coeff_h(kind, n, qd))
                bound = rho ** (n - 1)
                res.record(b <= bound, max(0.0, b - bound), (kind.value, qd.q, qd.nu, n))
    return res


def kappa_chain(seed: int, samples: int = 200) -> FamilyResult:
    """Direct weighted coefficient sums never exceed the closed form A - alpha*B."""
    res = FamilyResult("kappa_chain")
    rng = rng_for(seed, res.name)
    for i in range(samples):
        kind = KINDS[i % 2]
        qd = _draw_positive(rng, kind, (0.01, 0.95), (0.05, 3.0))
        alpha = rng.uniform(0.0, 1.0)
        s = series_h(kind, qd)
        for prop in (Property.STARLIKE, Property.CONVEX):
            a, b = closed_form_ab(kind, prop, qd)
            direct = kappa_direct(s, alpha, prop)
            closed = a - alpha * b
            res.record(direct <= closed + 1e-10, direct - closed,
                       (kind.value, qd.q, qd.nu, alpha, prop.value))
    return res


def implication(seed: int, samples: int = 200, grid: DiskGrid = DiskGrid()) -> FamilyResult:
    """certificate => sampled min of the disk functional >= alpha - 1e-3."""
    res = FamilyResult("implication")
    rng = rng_for(seed, res.name)
    certified = {p.value: 0 for p in Property}
    for i in range(samples):
        kind = KINDS[i % 2]
        qd = _draw_positive(rng, kind, (0.005, 0.6), (0.05, 3.0))
        alpha = rng.uniform(0.0, 1.0)
        for prop in Property:
            rep = crosscheck_sufficient_vs_sampled(kind, qd, alpha, prop, grid)
            certified[prop.value] += rep.certified
            gap = (alpha - 1e-3) - rep.sampled_min if rep.certified else 0.0
            res.record(rep.implication_ok, max(0.0, gap), rep.as_dict())
    res.details.append({"certified_counts": certified})
    return res


def threshold_algebra(seed: int, samples: int = 100, tol: float = 1e-12) -> FamilyResult:
    """(1 - A)/(1 - B) equals the single-fraction form of each threshold."""
    res = FamilyResult("threshold_algebra")
    rng = rng_for(seed, res.name)
    for i in range(samples):
        kind = KINDS[i % 2]
        qd = _draw_positive(rng, kind, (0.01, 0.95), (0.05, 3.0))
        for prop in (Property.STARLIKE, Property.CONVEX):
            a = alpha_threshold(kind, prop, qd).value
            b = displayed_ratio(kind, prop, qd)
            err = abs(a - b) / max(1.0, abs(b))
            res.record(err <= tol, err, (kind.value, qd.q, qd.nu, prop.value, a, b))
    return res


def threshold_exactness(seed: int, samples: int = 100) -> FamilyResult:
    """The bound check flips exactly at the threshold (relative offsets 1e-9)."""
    res = FamilyResult("threshold_exactness")
    rng = rng_for(seed, res.name)
    drawn = 0
    while drawn < samples:
        kind = KINDS[drawn % 2]
        qd = _draw_positive(rng, kind, (0.01, 0.95), (0.05, 3.0))
        prop = (Property.STARLIKE, Property.CONVEX)[rng.integers(2)]
        th = alpha_threshold(kind, prop, qd)
        if not (th.direction_valid and 0.0 < th.value < 1.0 and th.value * (1 + 1e-9) < 1.0):
            continue
        drawn += 1
        below = kappa_closed_bound(kind, prop, qd, th.value * (1 - 1e-9)).holds
        above = kappa_closed_bound(kind, prop, qd, th.value * (1 + 1e-9)).holds
        res.record(below and not above, 0.0, (kind.value, qd.q, qd.nu, prop.value, th.value))
    return res


def series_sums(seed: int, samples: int = 50, tol: float = 1e-12) -> FamilyResult:
    """Closed forms of the four geometric-type sums against partial sums to n = 400."""
    res = FamilyResult("series_sums")
    for r in np.linspace(-0.9, 0.9, samples):
        for kind in SumKind:
            d = abs(geom_sum_closed(kind, r) - geom_sum_partial(kind, r, 400))
            res.record(d <= tol, d, (kind.value, float(r)))
    return res


def random_series(rng, max_order: int = 40) -> CoefficientSeries:
    n = int(rng.integers(2, max_order + 1))
    mag = rng.uniform(0.0, 1.0, n) / np.arange(1, n + 1)
    arg = rng.uniform(0.0, 2 * math.pi, n)
    c = mag * np.exp(1j * arg)
    c[0] = 1.0
    return CoefficientSeries(c, 0.0, "random")


def m2_identity(seed: int, samples: int = 20, tol: float = 1e-8) -> FamilyResult:
    """M_2(r, f)^2 by quadrature against sum |a_n|^2 r^(2n)."""
    res = FamilyResult("m2_identity")
    rng = rng_for(seed, res.name)
    for _ in range(samples):
        s = random_series(rng)
        r = rng.uniform(0.05, 0.99)
        d = abs(integral_mean(s, r, 2.0) ** 2 - m2_squared_exact(s, r))
        res.record(d <= tol, d, (s.order, r))
    return res


def admissible_series(index: int, order: int = 64) -> CoefficientSeries:
    """Test functions with n|a_n| <= 2: rotations/dilations of -z - 2 log(1 - z)."""
    t = (1.0, 0.9, 0.5, 1.0, 0.75, 1.0, 0.3, 1.0, 0.95, 0.6)[index % 10]
    phi = (0.0, 0.0, 0.0, math.pi, 1.0, 2.5, 0.7, -2.0, 3.0, 1.9)[index % 10]
    n = np.arange(1, order + 1)
    c = (2.0 / n) * (t * np.exp(1j * phi)) ** (n - 1)
    c[0] = 1.0
    tail = math.inf if t == 1.0 else 2.0 / (order + 1) * t**order / (1.0 - t)
    return CoefficientSeries(c, tail, f"admissible(t={t}, phi={phi})")


def hadamard_bound(seed: int, points: int = 50, functions: int = 10, angular_count: int = 4096) -> FamilyResult:
    """max |h * f| on |z| = 1 stays below the logarithmic bound plus the tail."""
    res = FamilyResult("hadamard_bound")
    rng = rng_for(seed, res.name)
    theta = 2.0 * math.pi * np.arange(angular_count) / angular_count
    circle = np.exp(1j * theta)
    for i in range(points):
        kind = KINDS[i % 2]
        while True:
            qd = QDomain(rng.uniform(0.001, 0.3), rng.uniform(0.05, 3.0))
            if _hadamard_hypothesis(kind, qd)[1] > 0.0:
                break
        h = series_h(kind, qd)
        bound = hadamard_sup_bound(kind, qd)
        for j in range(functions):
            f = admissible_series(j)
            u = hadamard(h, f)
            # omitted terms: sum_{n>N} |b_n| |a_n| <= tail(h) * 2/(N+1)
            allowance = h.tail_bound * 2.0 / (u.order + 1) + 1e-12
            top = float(np.max(np.abs(eval_series(u, circle))))
            res.record(top <= bound + allowance, max(0.0, top - bound), (kind.value, qd.q, qd.nu, j))
    return res


def limit_relations(seed: int = 0) -> FamilyResult:
    """Errors of the q -> 1 limits decrease along q = 0.9, 0.99, 0.999 and end below 1e-2."""
    res = FamilyResult("limit_relations")
    for kind in KINDS:
        for nu in (0.5, 1.0, 2.0):
            for z in (0.5, 1.0):
                errs = [limit_relation_error(kind, nu, z, q) for q in (0.9, 0.99, 0.999)]
                ok = errs[0] > errs[1] > errs[2] and errs[2] < 1e-2
                res.record(ok, errs[2], (kind.value, nu, z, errs))
    return res


FAMILIES = {
    "coefficient_majorant": lambda seed, n: coefficient_majorant(seed, max(1, n * 5 // 2)),
    "kappa_chain": lambda seed, n: kappa_chain(seed, n),
    "implication": lambda seed, n: implication(seed, n),
    "threshold_algebra": lambda seed, n: threshold_algebra(seed, max(1, n // 2)),
    "threshold_exactness": lambda seed, n: threshold_exactness(seed, max(1, n // 2)),
    "series_sums": lambda seed, n: series_sums(seed, 50),
    "m2_identity": lambda seed, n: m2_identity(seed, max(1, n // 10)),
    "hadamard_bound": lambda seed, n: hadamard_bound(seed, max(1, n // 4)),
    "limit_relations": lambda seed, n: limit_relations(seed),
}


def run_family(name: str, seed: int, samples: int) -> FamilyResult:
    return FAMILIES[name](seed, samples)
