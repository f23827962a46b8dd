import math

import numpy as np
import pytest

from jacksonq import kernels
from jacksonq.geomclass import Property, alpha_threshold, p0_alpha_bound
from jacksonq.oracle import (
    IMPLICATION_TOL,
    DiskGrid,
    Functional,
    crosscheck_sufficient_vs_sampled,
    integral_mean,
    m2_squared_exact,
    min_re_functional,
)
from jacksonq.qbessel import CoefficientSeries, FamilyKind, derivative_coeffs, eval_series, series_h
from jacksonq.qcore import QDomain
from jacksonq.suites import random_series

SMALL = DiskGrid(0.99, 512, 4)


@pytest.mark.parametrize("functional", list(Functional))
def test_identity_functionals(functional):
    assert min_re_functional(CoefficientSeries.identity(), functional, SMALL) == pytest.approx(1.0, abs=1e-15)


def test_grid_validation_and_shape():
    with pytest.raises(ValueError):
        DiskGrid(1.0)
    with pytest.raises(ValueError):
        DiskGrid(0.5, 0, 3)
    g = DiskGrid()
    r = g.radii()
    assert r.size == 16 and r[-1] == 0.999
    assert np.all(np.diff(r) > 0)
    # geometric approach to the outer radius
    gaps = 1 - r
    np.testing.assert_allclose(gaps[1:] / gaps[:-1], gaps[1] / gaps[0], rtol=1e-9)
    assert g.points().size == 16 * 4096
    assert np.array_equal(DiskGrid(0.5, 8, 1).radii(), [0.5])


def test_starlike_sample_above_threshold():
    qd = QDomain(0.1, 1.0)
    s = series_h(FamilyKind.SECOND, qd)
    m = min_re_functional(s, Functional.STARLIKE_QUOTIENT)
    assert m >= alpha_threshold(FamilyKind.SECOND, Property.STARLIKE, qd).value - 0.01


def test_singular_sample_reports_unbounded():
    # f = z - z^2 has f'(1/2) = 0, a node of the one-circle grid at radius 1/2
    s = CoefficientSeries(np.array([1.0, -1.0]))
    assert min_re_functional(s, "convex", DiskGrid(0.5, 4, 1)) == -math.inf


def test_integral_mean_examples():
    ident = CoefficientSeries.identity()
    assert integral_mean(ident, 0.5, 2.0) == pytest.approx(0.5, abs=1e-15)
    assert integral_mean(ident, 0.9, math.inf) == pytest.approx(0.9, abs=1e-15)
    s = series_h(FamilyKind.SECOND, QDomain(0.1, 1.0))
    seq = [integral_mean(s, r, math.inf) for r in (0.9, 0.99, 0.999)]
    assert seq[0] <= seq[1] <= seq[2]
    assert seq[2] - seq[0] < 0.2
    assert seq[2] < 2.0
    with pytest.raises(ValueError):
        integral_mean(ident, 1.0, 2.0)
    with pytest.raises(ValueError):
        integral_mean(ident, 0.5, 0.0)


@pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 4.0, math.inf])
def test_integral_mean_monotone_in_r(p):
    rng = np.random.default_rng(3)
    for _ in range(5):
        s = random_series(rng)
        vals = [integral_mean(s, r, p) for r in np.linspace(0.05, 0.99, 25)]
        assert all(b >= a - 1e-9 for a, b in zip(vals, vals[1:]))


def test_m2_identity():
    rng = np.random.default_rng(11)
    for _ in range(20):
        s = random_series(rng)
        r = rng.uniform(0.05, 0.99)
        assert integral_mean(s, r, 2.0) ** 2 == pytest.approx(m2_squared_exact(s, r), abs=1e-8)


def test_derivative_shift_against_finite_differences():
    rng = np.random.default_rng(5)
    s = series_h(FamilyKind.THIRD, QDomain(0.01, 1.0))
    dc = derivative_coeffs(s)
    h = 1e-5
    for _ in range(10):
        z = 0.8 * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
        fd = (eval_series(s, z + h) - eval_series(s, z - h)) / (2 * h)
        exact = np.polynomial.polynomial.polyval(z, dc)
        _, fp, _ = kernels.horner_derivs(s.power_coeffs(), np.array([z]))
        assert abs(fp[0] - exact) <= 1e-14 * abs(exact)
        assert abs(fd - exact) <= 1e-6 * abs(exact)


def test_crosscheck_examples():
    rep = crosscheck_sufficient_vs_sampled(FamilyKind.SECOND, QDomain(0.1, 1.0), 0.0, "starlike", SMALL)
    assert rep.certified and rep.sampled_min > 0 and rep.implication_ok
    rep = crosscheck_sufficient_vs_sampled(FamilyKind.SECOND, QDomain(0.5, 1.0), 0.0, "starlike", SMALL)
    assert not rep.certified and rep.implication_ok
    assert math.isfinite(rep.sampled_min) or rep.sampled_min == -math.inf
    for kind in FamilyKind:
        for prop in Property:
            rep = crosscheck_sufficient_vs_sampled(kind, QDomain(1e-9, 1.0), 0.0, prop, SMALL)
            assert rep.certified
            assert rep.sampled_min == pytest.approx(1.0, abs=1e-3)


def test_crosscheck_positivity_failure_is_reported():
    rep = crosscheck_sufficient_vs_sampled(FamilyKind.THIRD, QDomain(0.5, 1.0), 0.2, Property.P0, SMALL)
    assert not rep.certified and "Positivity3" in rep.reason
    d = rep.as_dict()
    assert d["kind"] == "third" and d["property"] == "p0"


@pytest.mark.parametrize("prop", list(Property))
def test_implication_near_threshold(prop):
    # alpha just below each certified order still samples above alpha - tol
    for kind, qd in ((FamilyKind.SECOND, QDomain(0.1, 1.0)), (FamilyKind.THIRD, QDomain(0.01, 1.0))):
        if prop is Property.P0:
            alpha = p0_alpha_bound(kind, qd).value * (1 - 1e-9)
        else:
            alpha = alpha_threshold(kind, prop, qd).value * (1 - 1e-9)
        rep = crosscheck_sufficient_vs_sampled(kind, qd, alpha, prop)
        assert rep.certified
        assert rep.sampled_min >= alpha - IMPLICATION_TOL


def test_sampling_is_deterministic():
    s = series_h(FamilyKind.SECOND, QDomain(0.3, 2.0))
    a = min_re_functional(s, Functional.CONVEX_QUOTIENT)
    b = min_re_functional(s, Functional.CONVEX_QUOTIENT)
    assert a == b
    assert np.array_equal(DiskGrid().points(), DiskGrid().points())
