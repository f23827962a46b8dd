"""Acceptance gate: one PASS/FAIL line per criterion, printed in the terminal summary."""
import io
import time

from jacksonq.cli import main
from jacksonq.geomclass import Property, alpha_threshold
from jacksonq.hardy import hadamard_sup_bound
from jacksonq.qbessel import FamilyKind, majorant_ratio
from jacksonq.qcore import QDomain
from jacksonq import suites

SEED = 20240611
RESULTS = {}


def record(number, title, ok, detail):
    RESULTS[number] = (ok, f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})")
    return ok


def timed(fn, *args):
    t0 = time.perf_counter()
    res = fn(*args)
    return res, time.perf_counter() - t0


def test_criterion_1_coefficient_majorant():
    res, dt = timed(suites.coefficient_majorant, SEED, 500, 40)
    ok = res.passed and res.checked == 500 * 2 * 39 and dt < 5.0
    assert record(1, "coefficient majorant", ok,
                  f"{res.checked} checks, {res.violations} violations, {dt:.2f} s")


def test_criterion_2_kappa_chain():
    res, dt = timed(suites.kappa_chain, SEED, 200)
    ok = res.passed and res.checked == 400
    assert record(2, "closed form vs direct kappa", ok,
                  f"{res.checked} checks, {res.violations} violations, worst excess {res.worst:.2e}")


def test_criterion_3_implication():
    res, dt = timed(suites.implication, SEED, 200)
    counts = res.details[-1]["certified_counts"]
    ok = res.passed and res.checked == 600 and dt < 60.0 and all(v > 0 for v in counts.values())
    assert record(3, "certificate implies sampled minimum", ok,
                  f"{res.checked} checks, {res.violations} violations, certified {counts}, {dt:.1f} s")


def test_criterion_4_threshold_algebra():
    res, _ = timed(suites.threshold_algebra, SEED, 100)
    worked = alpha_threshold(FamilyKind.SECOND, Property.STARLIKE, QDomain(0.1, 1.0)).value
    target = 4.6108 / 4.7728
    ok = res.passed and res.checked == 200 and abs(worked - target) <= 1e-6
    assert record(4, "threshold algebra", ok,
                  f"worst rel diff {res.worst:.1e}; worked value {worked:.9f} vs 4.6108/4.7728 = {target:.9f}")


def test_criterion_5_series_sums():
    res, _ = timed(suites.series_sums, SEED, 50)
    ok = res.passed and res.checked == 200
    assert record(5, "geometric sum closed forms", ok, f"worst abs diff {res.worst:.1e}")


def test_criterion_6_limit_relations():
    res, dt = timed(suites.limit_relations, SEED)
    ok = res.passed and res.checked == 12 and dt < 5.0
    assert record(6, "q -> 1 limit relations", ok,
                  f"{res.checked} cases, worst error at q=0.999 {res.worst:.2e}, {dt:.2f} s")


def test_criterion_7_hadamard_bound():
    res, _ = timed(suites.hadamard_bound, SEED, 50, 10)
    qd = QDomain(0.1, 1.0)
    rho = majorant_ratio(FamilyKind.SECOND, qd)
    bound = hadamard_sup_bound(FamilyKind.SECOND, qd)
    ok = (res.passed and res.checked == 500
          and abs(rho - 0.030864) < 1e-6 and abs(bound - 1.0314) <= 1e-3)
    assert record(7, "Hadamard sup bound", ok,
                  f"{res.checked} checks, {res.violations} violations; rho1 {rho:.6f}, bound {bound:.7f}")


def test_criterion_8_m2_identity():
    res, _ = timed(suites.m2_identity, SEED, 20)
    ok = res.passed and res.checked == 20 and res.worst <= 1e-8
    assert record(8, "M2 quadrature identity", ok, f"worst abs diff {res.worst:.1e}")


def test_criterion_9_cli_determinism(tmp_path):
    outputs = []
    for tag, workers in (("a", 1), ("b", 1), ("c", 4)):
        path = tmp_path / f"{tag}.csv"
        code = main(["scan", "--kind", "third", "--q", "0.001:0.2", "--nu", "0.1:3", "--steps", "20",
                     "--workers", str(workers), "--output", str(path)], out=io.StringIO())
        assert code == 0
        outputs.append(path.read_bytes())
    ok = outputs[0] == outputs[1] == outputs[2]
    assert record(9, "scan byte-identical across runs and workers", ok,
                  f"{len(outputs[0])} bytes, workers 1/1/4")
