"""Independent floating-point oracles.

Nothing here uses the exact integration machinery: functions are evaluated
pointwise in complex floats and integrals are truncated sums over valuation
shells and unit residues.
"""
from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction
from typing import Sequence

from .padic import fractional_part, vp
from .schwartz import SchwartzFunction


def numeric_value(f: SchwartzFunction, x: Sequence[Fraction]) -> complex:
    """f(x) in complex floats, straight from the term list."""
    p = f.p
    total = 0j
    for term in f.terms:
        if any(vp(xi - a, p) < k for xi, a, k in zip(x, term.center, term.levels)):
            continue
        phase = fractional_part(sum((b * xi for b, xi in zip(term.twist, x)), Fraction(0)), p)
        total += term.coeff.to_complex() * cmath.exp(2j * math.pi * float(phase))
    return total


def _start_valuation(f: SchwartzFunction) -> int:
    """No point with v(x) below this lies in the support (d = 1)."""
    p = f.p
    return min(int(vp(t.center[0], p)) if t.center[0] else t.levels[0] for t in f.terms)


def _smooth_level(f: SchwartzFunction) -> int:
    p = f.p
    return max(max(t.levels[0], -int(vp(t.twist[0], p)) if t.twist[0] else t.levels[0])
               for t in f.terms)


def shell_mean(f: SchwartzFunction, m: int) -> complex:
    """int_{p^m Z_p^x} f d^x x as the average of f(p^m u) over unit residues u."""
    p = f.p
    level = max(1, _smooth_level(f) - m)
    base = Fraction(p) ** m
    total = 0j
    count = 0
    for u in range(1, p ** level):
        if u % p:
            total += numeric_value(f, [base * u])
            count += 1
    return total / count


def _truncation(p: int, sigma: float, tol: float) -> int:
    # sum_{m > N} p^{-m sigma} < tol
    ratio = p ** (-sigma)
    return int(math.ceil(math.log(tol * (1 - ratio)) / math.log(ratio))) + 1


def tate_shell_sums(f: SchwartzFunction, points: Sequence[float],
                    tol: float = 1e-14) -> list[complex]:
    """Truncated sum_m p^{-ms} int_{p^m Z_p^x} f d^x x at each s in ``points``
    (all with Re(s) > 0); the shells are computed once and shared."""
    if f.d != 1:
        raise ValueError("the shell-sum oracle is one-dimensional")
    if any(s <= 0 for s in points):
        raise ValueError("the shell sum converges only for Re(s) > 0")
    if not f.terms:
        return [0j for _ in points]
    p = f.p
    bound = max(sum(abs(t.coeff.to_complex()) for t in f.terms), 1.0)
    start = _start_valuation(f)
    stops = [max(start, 0) + _truncation(p, s, tol / bound) for s in points]
    shells = {m: shell_mean(f, m) for m in range(start, max(stops) + 1)}
    return [sum(p ** (-m * s) * shells[m] for m in range(start, stop + 1))
            for s, stop in zip(points, stops)]


def tate_shell_sum(f: SchwartzFunction, s: float, tol: float = 1e-14) -> complex:
    """Truncated sum_m p^{-ms} int_{p^m Z_p^x} f d^x x, valid for Re(s) > 0."""
    return tate_shell_sums(f, [s], tol)[0]


def eisenstein_double_sum(phi1: SchwartzFunction, phi2: SchwartzFunction, s: float,
                          tol: float = 1e-14) -> complex:
    """n = 1 Eisenstein integral as a truncated double sum over valuation shells.

    With w = z v g the double integral splits as
    int Phi1(v) |v|^{-s} dv * int Phi2(w) |w|^s d^x w, and on the shell
    v(v) = m one has dv = (1 - 1/p) p^{-m} d^x v; g drops out.
    Valid for 0 < s < 1.
    """
    if not 0 < s < 1:
        raise ValueError("the double sum converges only for 0 < s < 1")
    p = phi1.p
    outer = tate_shell_sum(phi1, 1 - s, tol)
    inner = tate_shell_sum(phi2, s, tol)
    return (1 - 1 / p) * outer * inner


def numeric_integral(f: SchwartzFunction, level: int, low: int) -> complex:
    """int f over p^low Z_p^d by midpoint sum on cosets of p^level (exact when f
    is constant on them)."""
    p = f.p
    step = Fraction(p) ** low
    count = p ** (level - low)
    total = 0j
    for idx in itertools.product(range(count), repeat=f.d):
        total += numeric_value(f, [step * i for i in idx])
    return total * float(Fraction(p) ** (-level * f.d))
