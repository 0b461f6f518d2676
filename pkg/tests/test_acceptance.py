"""Acceptance gate: ten criteria, each with its tolerance and wall-clock limit.

Every test prints one line ``PASS|FAIL criterion N: ...`` (visible with -v or -s).
"""
import time
from collections import Counter

import pytest

from mirtrace.exactnum import ZetaExpression
from mirtrace.mirabolic import GroupElement, local_eisenstein_integral
from mirtrace.oracles import eisenstein_double_sum
from mirtrace.partitions import datum_from_pairs, predict_zeta_multiset, render_prediction
from mirtrace.schwartz import SchwartzFunction
from mirtrace.suites import run_suite
from mirtrace.tate import LocalZetaFactor as Z

SEED = 1


@pytest.fixture
def report(capsys):
    """Call report(n, description, passed, elapsed, limit); prints and asserts."""
    def emit(n, description, passed, elapsed, limit):
        ok = passed and elapsed < limit
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {description.rstrip()} "
                  f"({elapsed:.2f} s, limit {limit} s)")
        assert passed, f"criterion {n} failed"
        assert elapsed < limit, f"criterion {n} took {elapsed:.2f} s (limit {limit} s)"
    return emit


def _suites(*names):
    start = time.perf_counter()
    checks = [c for name in names for c in run_suite(name, SEED)]
    elapsed = time.perf_counter() - start
    failed = [c.to_json() for c in checks if not c.passed]
    return checks, failed, elapsed


def test_criterion_01_gl2_table(report):
    start = time.perf_counter()
    cases = {
        "elliptic": ([((-5, 0, 1), [1])], {Z(2, 1, 0): 1}),
        "hyperbolic": ([((-1, 1), [1]), ((-2, 1), [1])], {Z(1, 1, 0): 2}),
        "parabolic": ([((-1, 1), [2])], {Z(1, 1, 0): 1, Z(1, 2, 1): 1}),
        "central": ([((-1, 1), [1, 1])], {Z(1, 1, 0): 1, Z(1, 2, 0): 1}),
    }
    results = {name: predict_zeta_multiset(datum_from_pairs(pairs)) == Counter(expected)
               for name, (pairs, expected) in cases.items()}
    symbols = [render_prediction(datum_from_pairs(pairs)) for pairs, _ in cases.values()]
    results["symbols"] = symbols == ["ζ_E1(s)", "ζ_F(s)ζ_F(s)", "ζ_F(s)ζ_F(2s-1)", "ζ_F(s)ζ_F(2s)"]
    report(1, "gl(2) golden table " + str(results), all(results.values()),
           time.perf_counter() - start, 1)


def test_criterion_02_regular_chain(report):
    start = time.perf_counter()
    ok = True
    for poly, deg in (((-1, 1), 1), ((1, 0, 1), 2), ((-2, 0, 0, 1), 3)):
        for m in range(1, 7):
            got = predict_zeta_multiset(datum_from_pairs([(poly, [m])]))
            ok &= got == Counter({Z(deg, k, k - 1): 1 for k in range(1, m + 1)})
    report(2, "regular chain {ζ_E(ks-k+1)}, m = 1..6", ok, time.perf_counter() - start, 1)


def test_criterion_03_hooks(report):
    checks, failed, elapsed = _suites("hooks")
    report(3, f"hook formula, all partitions of n <= 12 ({len(checks)} sizes) {failed or ''}",
           not failed and len(checks) == 12, elapsed, 10)


def test_criterion_04_conjugation(report):
    checks, failed, elapsed = _suites("conjugation")
    report(4, f"conjugate-partition multiset identity, n <= 12 {failed or ''}",
           not failed and len(checks) == 12, elapsed, 10)


def test_criterion_05_fourier_plancherel(report):
    checks, failed, elapsed = _suites("fourier", "plancherel")
    report(5, f"Fourier involution + Plancherel, {len(checks)} exact checks {failed[:3] or ''}",
           not failed and len(checks) == 200, elapsed, 60)


def test_criterion_06_tate_functional_equation(report):
    checks, failed, elapsed = _suites("tate-fe")
    report(6, f"Tate functional equation + shell sums at 1e-9, {len(checks)} pairs "
           f"{failed[:3] or ''}", not failed and len(checks) == 200, elapsed, 60)


def test_criterion_07_kernel_swap(report):
    checks, failed, elapsed = _suites("kernel-swap")
    report(7, f"kernel Plancherel swap, {len(checks)} triples {failed[:3] or ''}",
           not failed and len(checks) == 100, elapsed, 120)


def test_criterion_08_frobenius(report):
    checks, failed, elapsed = _suites("frobenius")
    report(8, f"Frobenius chain/certificate/invariance, {len(checks)} matrices {failed[:3] or ''}",
           not failed and len(checks) == 200, elapsed, 60)


def test_criterion_09_gl1_trace(report):
    checks, failed, elapsed = _suites("gl1-trace")
    report(9, f"GL(1) local trace swap, {len(checks)} quadruples {failed[:3] or ''}",
           not failed and len(checks) == 50, elapsed, 30)


def test_criterion_10_eisenstein(report):
    start = time.perf_counter()
    ok = True
    for p in (2, 3, 5):
        unit = SchwartzFunction.unit_ball(p)
        value = local_eisenstein_integral(GroupElement.identity(1), unit, unit)
        closed = ZetaExpression.geometric(1, 1, p) + ZetaExpression.geometric(p, 1, p, numerator=-1)
        ok &= value == closed
        ok &= abs(value.evaluate(0.5) - eisenstein_double_sum(unit, unit, 0.5)) <= 1e-9
    checks = run_suite("eisenstein", SEED)
    failed = [c.to_json() for c in checks if not c.passed]
    ok &= not failed and len(checks) == 20
    report(10, f"Eisenstein closed form and 20 random inputs vs double sum {failed[:3] or ''}",
           ok, time.perf_counter() - start, 30)
