"""Randomized and exhaustive verification suites.

Each case draws from its own generator seeded by (seed, case index), so any
failing case can be replayed alone.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .canonical import (char_poly, class_datum, frobenius_normal_form, invariant_factors)
from .mirabolic import (local_eisenstein_integral, verify_gl1_trace_swap,
                        verify_kernel_swap)
from .oracles import eisenstein_double_sum, tate_shell_sums
from .partitions import h_prop4, hook_arm_leg, partitions_of, verify_conjugation_symmetry
from .sampling import (random_diagonal_element, random_group_element, random_invertible,
                       random_matrix, random_schwartz, random_structured_matrix)
from .tate import local_tate_integral, verify_local_functional_equation

PRIMES = (2, 3, 5)
TATE_POINTS = (0.25, 0.5, 0.75)
NUMERIC_TOL = 1e-9


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict | None = field(default=None)

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _case_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


def _guard(name: str, body: Callable[[], Check]) -> Check:
    try:
        return body()
    except Exception as exc:  # a crash is a failed check, with the error as witness
        return Check(name, False, {"error": f"{type(exc).__name__}: {exc}"})


def _pair_witness(left, right) -> dict:
    return {"left": str(left), "right": str(right)}


# -- Schwartz-Bruhat --------------------------------------------------------

def _random_fourier_setup(rng):
    p = rng.choice(PRIMES)
    pairing = rng.choice(["dot", "trace"])
    d = rng.choice([1, 4]) if pairing == "trace" else rng.randint(1, 4)
    return p, d, pairing


def suite_fourier(seed: int, count: int) -> list[Check]:
    out = []
    for i in range(count):
        rng = _case_rng(seed, i)
        p, d, pairing = _random_fourier_setup(rng)
        f = random_schwartz(rng, p, d)
        name = f"fourier[{i}] p={p} d={d} {pairing}"

        def body(f=f, name=name, pairing=pairing):
            twice = f.fourier(pairing).fourier(pairing)
            expected = f.reflect()
            ok = twice == expected
            return Check(name, ok, None if ok else _pair_witness(twice, expected))
        out.append(_guard(name, body))
    return out


def suite_plancherel(seed: int, count: int) -> list[Check]:
    out = []
    for i in range(count):
        rng = _case_rng(seed, i)
        p, d, pairing = _random_fourier_setup(rng)
        f1, f2 = random_schwartz(rng, p, d), random_schwartz(rng, p, d)
        name = f"plancherel[{i}] p={p} d={d} {pairing}"

        def body(f1=f1, f2=f2, name=name, pairing=pairing):
            left = f1.fourier(pairing).pointwise(f2).integrate()
            right = f1.pointwise(f2.fourier(pairing)).integrate()
            ok = left == right
            return Check(name, ok, None if ok else _pair_witness(left, right))
        out.append(_guard(name, body))
    return out


# -- Tate -----------------------------------------------------------------------

def suite_tate_fe(seed: int, count: int, numeric: bool = True) -> list[Check]:
    out = []
    for i in range(count):
        rng = _case_rng(seed, i)
        p = rng.choice(PRIMES)
        f1, f2 = random_schwartz(rng, p, 1), random_schwartz(rng, p, 1)
        name = f"tate-fe[{i}] p={p}"

        def body(f1=f1, f2=f2, name=name):
            holds, left, right = verify_local_functional_equation(f1, f2)
            if not holds:
                return Check(name, False, _pair_witness(left, right))
            if numeric:
                for f in (f1, f2, f1.fourier(), f2.fourier()):
                    exact = local_tate_integral(f)
                    for s, b in zip(TATE_POINTS, tate_shell_sums(f, TATE_POINTS)):
                        a = exact.evaluate(s)
                        if abs(a - b) > NUMERIC_TOL:
                            return Check(name, False, {"s": s, "function": f.to_json(),
                                                       "exact": str(a), "shell_sum": str(b)})
            return Check(name, True)
        out.append(_guard(name, body))
    return out


# -- mirabolic --------------------------------------------------------------

def suite_kernel_swap(seed: int, count: int) -> list[Check]:
    out = []
    for i in range(count):
        rng = _case_rng(seed, i)
        p = rng.choice((2, 3))
        n = rng.randint(1, 3)
        g = random_group_element(rng, p, n)
        f1 = random_schwartz(rng, p, n * n, max_terms=2)
        f2 = random_schwartz(rng, p, n * n, max_terms=2)
        name = f"kernel-swap[{i}] p={p} n={n}"

        def body(g=g, f1=f1, f2=f2, name=name):
            holds, left, right = verify_kernel_swap(g, f1, f2)
            return Check(name, holds, None if holds else _pair_witness(left, right))
        out.append(_guard(name, body))
    return out


def suite_gl1_trace(seed: int, count: int) -> list[Check]:
    out = []
    for i in range(count):
        rng = _case_rng(seed, i)
        p = rng.choice(PRIMES)
        f1, f2, phi1, phi2 = (random_schwartz(rng, p, 1, max_terms=2) for _ in range(4))
        name = f"gl1-trace[{i}] p={p}"

        def body(args=(f1, f2, phi1, phi2), name=name):
            holds, left, right = verify_gl1_trace_swap(*args)
            return Check(name, holds, None if holds else _pair_witness(left, right))
        out.append(_guard(name, body))
    return out


def suite_eisenstein(seed: int, count: int) -> list[Check]:
    """n = 1: exact value against the Tate factorization, and numerically against
    the truncated double sum at s = 1/2."""
    out = []
    for i in range(count):
        rng = _case_rng(seed, i)
        p = rng.choice(PRIMES)
        phi1 = random_schwartz(rng, p, 1, max_terms=2)
        phi2 = random_schwartz(rng, p, 1, max_terms=2)
        g = random_diagonal_element(rng, p, 1)
        name = f"eisenstein[{i}] p={p} g={g.matrix[0, 0]}"

        def body(g=g, phi1=phi1, phi2=phi2, name=name, p=p):
            value = local_eisenstein_integral(g, phi1, phi2)
            factored = local_tate_integral(phi1).reflect() * local_tate_integral(phi2) \
                * Fraction(p - 1, p)
            if not value.equals(factored):
                return Check(name, False, _pair_witness(value, factored))
            a, b = value.evaluate(0.5), eisenstein_double_sum(phi1, phi2, 0.5)
            ok = abs(a - b) <= NUMERIC_TOL
            return Check(name, ok, None if ok else {"exact": str(a), "double_sum": str(b)})
        out.append(_guard(name, body))
    return out


# -- combinatorics ------------------------------------------------------------

def suite_hooks(seed: int, count: int) -> list[Check]:
    """Exhaustive over all partitions of n <= count; the seed is unused."""
    out = []
    for n in range(1, count + 1):
        bad = None
        for lam in partitions_of(n):
            for j, k in lam.boxes():
                if h_prop4(lam, j, k) != hook_arm_leg(lam, j, k)[0]:
                    bad = {"partition": list(lam.rows), "box": [j, k],
                           "left": h_prop4(lam, j, k), "right": hook_arm_leg(lam, j, k)[0]}
                    break
            if bad:
                break
        out.append(Check(f"hooks n={n}", bad is None, bad))
    return out


def suite_conjugation(seed: int, count: int) -> list[Check]:
    """Exhaustive over all partitions of n <= count; the seed is unused."""
    out = []
    for n in range(1, count + 1):
        bad = next((lam for lam in partitions_of(n) if not verify_conjugation_symmetry(lam)), None)
        out.append(Check(f"conjugation n={n}", bad is None,
                         None if bad is None else {"partition": list(bad.rows)}))
    return out


# -- canonical forms ------------------------------------------------------------

def suite_frobenius(seed: int, count: int) -> list[Check]:
    out = []
    for i in range(count):
        rng = _case_rng(seed, i)
        n = rng.randint(1, 5)
        x = random_structured_matrix(rng, n) if rng.random() < 0.5 else random_matrix(rng, n)
        g = random_invertible(rng, n)
        name = f"frobenius[{i}] n={n}"

        def body(x=x, g=g, name=name):
            factors = invariant_factors(x)
            for small, big in zip(factors, factors[1:]):
                if not small.divides(big):
                    return Check(name, False, _pair_witness(small, big))
            prod = factors[0] if factors else None
            for f in factors[1:]:
                prod = prod * f
            if prod != char_poly(x):
                return Check(name, False, _pair_witness(prod, char_poly(x)))
            form = frobenius_normal_form(x)
            s = form.certificate
            if s.inverse() @ x @ s != form.form:
                return Check(name, False, _pair_witness(s.inverse() @ x @ s, form.form))
            a, b = class_datum(x), class_datum(x.conjugate_by(g))
            ok = a == b
            return Check(name, ok, None if ok else _pair_witness(a.to_json(), b.to_json()))
        out.append(_guard(name, body))
    return out


SUITES: dict[str, tuple[Callable[[int, int], list[Check]], int]] = {
    "fourier": (suite_fourier, 100),
    "plancherel": (suite_plancherel, 100),
    "tate-fe": (suite_tate_fe, 200),
    "kernel-swap": (suite_kernel_swap, 100),
    "hooks": (suite_hooks, 12),
    "conjugation": (suite_conjugation, 12),
    "gl1-trace": (suite_gl1_trace, 50),
    "frobenius": (suite_frobenius, 200),
    "eisenstein": (suite_eisenstein, 20),
}


def run_suite(name: str, seed: int = 1, count: int | None = None) -> list[Check]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn, default = SUITES[name]
    return fn(seed, default if count is None else count)
