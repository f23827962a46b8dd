import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacksonq.qbessel import (
    CoefficientSeries,
    FamilyKind,
    coeff_h,
    coeff_ratio,
    derivative_coeffs,
    eval_jackson,
    eval_series,
    limit_relation_error,
    majorant_ratio,
    normalized_from_jackson,
    series_h,
)
from jacksonq.qcore import QDomain, Tolerance, qpochhammer

KINDS = list(FamilyKind)
qs = st.floats(min_value=0.01, max_value=0.95)
nus = st.floats(min_value=-0.95, max_value=4.0)


def test_coeff_examples():
    qd = QDomain(0.5, 0.0)
    assert coeff_h(FamilyKind.SECOND, 1, qd) == 1.0
    assert coeff_h(FamilyKind.SECOND, 2, qd) == pytest.approx(-0.5, rel=1e-15)
    assert coeff_h(FamilyKind.THIRD, 2, qd) == pytest.approx(-2.0, rel=1e-15)
    assert coeff_h("Third", 1, QDomain(0.2, 3.0)) == 1.0


def test_coeff_rejects_n0():
    with pytest.raises(ValueError):
        coeff_h(FamilyKind.SECOND, 0, QDomain(0.5, 1.0))


def test_series_examples():
    s = series_h(FamilyKind.SECOND, QDomain(0.5, 0.0))
    assert s.coefficient(1) == 1
    assert s.coefficient(2) == pytest.approx(-0.5, rel=1e-15)
    assert s.coefficient(3).real == pytest.approx(1 / 36, rel=1e-14)
    t = series_h(FamilyKind.THIRD, QDomain(0.1, 1.0))
    assert t.coefficient(2).real == pytest.approx(-0.1 / (0.9 * 0.99), rel=1e-14)
    assert t.coefficient(2).real == pytest.approx(-0.112233, abs=1e-6)


def test_series_h_rows_are_short_and_readonly():
    s = series_h(FamilyKind.SECOND, QDomain(0.9, 0.5))
    assert s.order <= 40
    with pytest.raises(ValueError):
        s.coeffs[1] = 0.0


@settings(max_examples=200, deadline=None)
@given(q=qs, nu=nus, n=st.integers(1, 30))
def test_sign_alternation(q, nu, n):
    qd = QDomain(q, nu)
    for kind in KINDS:
        b = coeff_h(kind, n, qd)
        if b != 0.0:
            assert math.copysign(1.0, b) == (-1.0) ** (n - 1)


@settings(max_examples=200, deadline=None)
@given(q=qs, nu=st.floats(0.05, 4.0))
def test_coefficient_majorant(q, nu):
    qd = QDomain(q, nu)
    for kind in KINDS:
        rho = majorant_ratio(kind, qd)
        if rho >= 1.0:
            continue
        for n in range(2, 41):
            assert abs(coeff_h(kind, n, qd)) <= rho ** (n - 1) * (1 + 1e-12)


def test_majorant_undefined_for_nonpositive_nu():
    assert majorant_ratio(FamilyKind.SECOND, QDomain(0.5, 0.0)) is None
    assert majorant_ratio(FamilyKind.THIRD, QDomain(0.5, -0.5)) is None


@settings(max_examples=200, deadline=None)
@given(q=st.floats(0.05, 0.9), nu=nus, n=st.integers(1, 12))
def test_ratio_formula_matches_quotient(q, nu, n):
    qd = QDomain(q, nu)
    for kind in KINDS:
        quotient = coeff_h(kind, n + 1, qd) / coeff_h(kind, n, qd)
        assert coeff_ratio(kind, n, qd) == pytest.approx(quotient, rel=1e-13)


def test_third_kind_exponent_is_triangular():
    # n(n-1)/2 written out directly for n = 4
    q, nu = 0.3, 0.4
    direct = -(q**6) / (qpochhammer(q, q, 3) * qpochhammer(q ** (nu + 1), q, 3))
    assert coeff_h(FamilyKind.THIRD, 4, QDomain(q, nu)) == pytest.approx(direct, rel=1e-14)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("q, nu", [(0.1, 1.0), (0.5, 0.0), (0.9, 0.5), (0.95, -0.5), (0.3, 3.0)])
def test_tail_bound_dominates_omitted_terms(kind, q, nu):
    qd = QDomain(q, nu)
    s = series_h(kind, qd)
    longer = series_h(kind, qd, Tolerance(term_cutoff=1e-300, max_terms=4000))
    omitted = math.fsum(np.abs(longer.coeffs[s.order:]).tolist())
    assert omitted <= s.tail_bound
    assert s.tail_bound < 1e-14


def test_eval_series_examples():
    ident = CoefficientSeries.identity()
    assert eval_series(ident, 0.3 + 0.4j) == pytest.approx(0.3 + 0.4j, abs=1e-16)
    s = series_h(FamilyKind.SECOND, QDomain(0.5, 0.0))
    # 1 - 1/2 + 1/36 - ..., summed at 40 digits
    assert eval_series(s, 1.0) == pytest.approx(0.52749496061966123658, abs=1e-15)
    assert eval_series(s, 0.0) == 0
    arr = eval_series(s, np.array([[0.0, 0.5], [-0.5, 1j]]))
    assert arr.shape == (2, 2)
    assert arr[0, 1] == pytest.approx(eval_series(s, 0.5), abs=1e-16)


def test_eval_series_rejects_outside_disk():
    with pytest.raises(ValueError):
        eval_series(CoefficientSeries.identity(), 1.01)


@pytest.mark.parametrize("kind", KINDS)
def test_normalization_at_origin(kind):
    s = series_h(kind, QDomain(0.4, 1.2))
    assert derivative_coeffs(s)[0] == 1
    assert eval_series(s, 0j) == 0


def test_constructor_requires_a1():
    with pytest.raises(ValueError):
        CoefficientSeries(np.array([2.0, 1.0]))
    with pytest.raises(ValueError):
        CoefficientSeries(np.array([1.0]), tail_bound=-1.0)


def test_eval_jackson_zero():
    assert eval_jackson(FamilyKind.SECOND, QDomain(0.3, 1.0), 0).value == 0
    j = eval_jackson(FamilyKind.THIRD, QDomain(0.3, 0.0), 0)
    # J_0(0) equals the prefactor (q;q)_inf / (q;q)_inf
    assert j.value == pytest.approx(1.0, abs=1e-15)


def test_eval_jackson_second_kind_at_half():
    # for nu = 0 the prefactor cancels and J2(1) equals h2(1)
    j = eval_jackson(FamilyKind.SECOND, QDomain(0.5, 0.0), 1.0)
    partial = math.fsum(
        (-1) ** n * 0.25**n * 0.5 ** (n * n) / qpochhammer(0.5, 0.5, n) ** 2 for n in range(30)
    )
    assert j.value.real == pytest.approx(partial, abs=1e-15)
    assert j.value.real == pytest.approx(0.52749496061966123658, abs=1e-15)


# reference values from mpmath at 40 digits, summing the defining series
@pytest.mark.parametrize(
    "kind, q, nu, z, expected",
    [
        (FamilyKind.THIRD, 0.25, 0.5, 0.5, 0.78082911147855801364),
        (FamilyKind.SECOND, 0.7, 1.5, 0.3 + 0.4j, 0.19761726282467126209 + 0.60510070473453866610j),
        (FamilyKind.THIRD, 0.3, 0.7, 1.2 - 0.5j, 0.84785766137486982974 + 0.51603896771239249648j),
    ],
)
def test_eval_jackson_reference(kind, q, nu, z, expected):
    est = eval_jackson(kind, QDomain(q, nu), z)
    assert abs(est.value - expected) <= 1e-14 * abs(expected)
    assert abs(est.value - expected) <= est.error
    assert est.error < 1e-12


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("q, nu", [(0.25, 0.5), (0.1, 1.0), (0.6, 2.3), (0.5, 0.0)])
@pytest.mark.parametrize("w", [0.05, 0.4, 0.9, 1.0])
def test_normalization_identity(kind, q, nu, w):
    qd = QDomain(q, nu)
    s = series_h(kind, qd)
    via_j = normalized_from_jackson(kind, qd, w)
    direct = eval_series(s, w)
    assert abs(via_j.value - direct) <= via_j.error + s.tail_bound + 1e-12


def test_normalized_from_jackson_domain():
    with pytest.raises(ValueError):
        normalized_from_jackson(FamilyKind.SECOND, QDomain(0.5, 1.0), 0.0)


def test_limit_relation_examples():
    e = [limit_relation_error(FamilyKind.SECOND, 0.5, 1.0, q) for q in (0.9, 0.99, 0.999)]
    assert e[0] > 0
    assert e[0] > e[1] > e[2]
    assert limit_relation_error(FamilyKind.THIRD, 0.0, 0.0, 0.7) == 0.0


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("nu", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("z", [0.5, 1.0])
def test_limit_relations_decrease(kind, nu, z):
    e = [limit_relation_error(kind, nu, z, q) for q in (0.9, 0.99, 0.999)]
    assert e[0] > e[1] > e[2]
    assert e[2] < 1e-2
