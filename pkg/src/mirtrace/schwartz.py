"""Schwartz-Bruhat functions on Q_p^d.

A function is a finite sum of modulated balls

    x -> coeff * psi(<b, x>) * prod_i 1[x_i in a_i + p^{k_i} Z_p]

with ``psi`` the additive character of conductor Z_p. This class is closed
under products, translations and the Fourier transform, and all integrals are
exact. Haar measure is normalised by vol(Z_p^d) = 1, which is self-dual for
both the dot pairing and the trace pairing on d = n^2 coordinates.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import MismatchedPrimeError, PrecisionError, UnboundedSupportError
from .exactnum import CyclotomicNumber, as_cyclotomic, format_rational, parse_rational
from .padic import (PAdicScalar, PAdicVector, character_of_rational,
                    residue_of_rational, vp)

INF = float("inf")


@dataclass(frozen=True)
class ModulatedBall:
    """coeff * psi(<twist, x>) * 1[x in center + p^levels Z_p^d], canonicalised."""

    coeff: CyclotomicNumber
    twist: tuple[Fraction, ...]
    center: tuple[Fraction, ...]
    levels: tuple[int, ...]

    @property
    def key(self) -> tuple:
        return (self.levels, self.center, self.twist)

    @property
    def volume_exponent(self) -> int:
        return sum(self.levels)


def make_term(p: int, coeff, twist: Sequence, center: Sequence, levels: Sequence[int]) -> ModulatedBall:
    """Canonical form: center reduced mod the ball lattice, twist reduced mod
    its dual with the resulting constant phase absorbed into the coefficient."""
    levels = tuple(int(k) for k in levels)
    center = tuple(residue_of_rational(parse_rational(a), p, k) for a, k in zip(center, levels))
    twist = tuple(parse_rational(b) for b in twist)
    if not (len(levels) == len(center) == len(twist)):
        raise ValueError("twist, center and levels must have equal length")
    reduced = tuple(residue_of_rational(b, p, -k) for b, k in zip(twist, levels))
    phase = sum(((b - r) * a for b, r, a in zip(twist, reduced, center)), Fraction(0))
    coeff = as_cyclotomic(coeff, p)
    if phase:
        coeff = coeff * character_of_rational(phase, p)
    return ModulatedBall(coeff, reduced, center, levels)


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def transpose_permutation(d: int) -> tuple[int, ...]:
    """Index map (i, j) -> (j, i) on row-major n x n coordinates."""
    n = math.isqrt(d)
    if n * n != d:
        raise ValueError(f"trace pairing needs a square dimension, got d={d}")
    return tuple(j * n + i for i in range(n) for j in range(n))


class SchwartzFunction:
    """Finite sum of canonical modulated balls on Q_p^d."""

    __slots__ = ("p", "d", "terms")

    def __init__(self, p: int, d: int, terms: Iterable[ModulatedBall] = ()):
        if d < 1:
            raise ValueError("dimension must be >= 1")
        merged: dict[tuple, CyclotomicNumber] = {}
        for term in terms:
            if len(term.levels) != d:
                raise ValueError(f"term of dimension {len(term.levels)} in a d={d} function")
            if term.coeff.level and term.coeff.p != p:
                raise MismatchedPrimeError("coefficient lives in a cyclotomic field of another prime")
            if term.key in merged:
                merged[term.key] = merged[term.key] + term.coeff
            else:
                merged[term.key] = term.coeff
        self.p = p
        self.d = d
        self.terms = tuple(
            ModulatedBall(c, key[2], key[1], key[0])
            for key, c in sorted(merged.items(), key=lambda kv: kv[0]) if c)

    # -- constructors -------------------------------------------------
    @classmethod
    def from_terms(cls, p: int, d: int, raw: Iterable[tuple]) -> "SchwartzFunction":
        """Build from (coeff, twist, center, levels) tuples."""
        return cls(p, d, [make_term(p, *t) for t in raw])

    @classmethod
    def ball(cls, p: int, center: Sequence, levels: Sequence[int], coeff=1,
             twist: Sequence | None = None) -> "SchwartzFunction":
        d = len(levels)
        twist = [0] * d if twist is None else twist
        return cls(p, d, [make_term(p, coeff, twist, center, levels)])

    @classmethod
    def unit_ball(cls, p: int, d: int = 1) -> "SchwartzFunction":
        """The indicator of Z_p^d."""
        return cls.ball(p, [0] * d, [0] * d)

    @classmethod
    def zero(cls, p: int, d: int) -> "SchwartzFunction":
        return cls(p, d, [])

    # -- algebra ------------------------------------------------------
    def _check(self, other: "SchwartzFunction") -> None:
        if self.p != other.p:
            raise MismatchedPrimeError(f"functions over Q_{self.p} and Q_{other.p}")
        if self.d != other.d:
            raise ValueError(f"dimension mismatch: {self.d} vs {other.d}")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SchwartzFunction") -> "SchwartzFunction":
        self._check(other)
        return SchwartzFunction(self.p, self.d, self.terms + other.terms)

    def __neg__(self) -> "SchwartzFunction":
        return self.scale(-1)

    def __sub__(self, other: "SchwartzFunction") -> "SchwartzFunction":
        return self + (-other)

    def scale(self, c) -> "SchwartzFunction":
        c = as_cyclotomic(c, self.p)
        return SchwartzFunction(self.p, self.d, [
            ModulatedBall(t.coeff * c, t.twist, t.center, t.levels) for t in self.terms])

    def __mul__(self, other):
        if isinstance(other, SchwartzFunction):
            return self.pointwise(other)
        return self.scale(other)

    __rmul__ = __mul__

    def pointwise(self, other: "SchwartzFunction") -> "SchwartzFunction":
        self._check(other)
        p = self.p
        out = []
        for s, t in itertools.product(self.terms, other.terms):
            center, levels = [], []
            for a1, k1, a2, k2 in zip(s.center, s.levels, t.center, t.levels):
                small, big = ((a1, k1), (a2, k2)) if k1 >= k2 else ((a2, k2), (a1, k1))
                if residue_of_rational(small[0] - big[0], p, big[1]) != 0:
                    break
                center.append(small[0])
                levels.append(small[1])
            else:
                twist = [b1 + b2 for b1, b2 in zip(s.twist, t.twist)]
                out.append(make_term(p, s.coeff * t.coeff, twist, center, levels))
        return SchwartzFunction(p, self.d, out)

    def reflect(self) -> "SchwartzFunction":
        """x -> f(-x)."""
        return SchwartzFunction(self.p, self.d, [
            make_term(self.p, t.coeff, [-b for b in t.twist], [-a for a in t.center], t.levels)
            for t in self.terms])

    def translate(self, shift: Sequence) -> "SchwartzFunction":
        """x -> f(x - shift)."""
        shift = [parse_rational(s) for s in shift]
        out = []
        for t in self.terms:
            # psi(<b, x - c>) = psi(-<b, c>) psi(<b, x>)
            coeff = t.coeff * character_of_rational(-_dot(t.twist, shift), self.p)
            out.append(make_term(self.p, coeff, t.twist,
                                 [a + c for a, c in zip(t.center, shift)], t.levels))
        return SchwartzFunction(self.p, self.d, out)

    def modulate(self, twist: Sequence) -> "SchwartzFunction":
        """x -> psi(<twist, x>) f(x)."""
        twist = [parse_rational(b) for b in twist]
        return SchwartzFunction(self.p, self.d, [
            make_term(self.p, t.coeff, [b + c for b, c in zip(t.twist, twist)], t.center, t.levels)
            for t in self.terms])

    def tensor(self, other: "SchwartzFunction") -> "SchwartzFunction":
        """(x, y) -> f(x) g(y) on Q_p^(d1 + d2)."""
        if self.p != other.p:
            raise MismatchedPrimeError("tensor factors must share the prime")
        return SchwartzFunction(self.p, self.d + other.d, [
            make_term(self.p, s.coeff * t.coeff, s.twist + t.twist,
                      s.center + t.center, s.levels + t.levels)
            for s, t in itertools.product(self.terms, other.terms)])

    # -- analysis -----------------------------------------------------
    def __call__(self, x) -> CyclotomicNumber:
        return evaluate(self, x)

    def integrate(self) -> CyclotomicNumber:
        return integrate(self)

    def fourier(self, pairing: str = "dot") -> "SchwartzFunction":
        return fourier_transform(self, pairing)

    def support_valuations(self) -> tuple[float, ...]:
        """Per coordinate, a lower bound for v_p(x_i) on the support."""
        if not self.terms:
            return tuple([INF] * self.d)
        return tuple(min(min(k, vp(a, self.p)) for a, k in
                         ((t.center[i], t.levels[i]) for t in self.terms))
                     for i in range(self.d))

    def constancy_levels_at_zero(self) -> tuple[float, ...]:
        """Per coordinate, a level K with f(x) = f(0) whenever all x_i in p^K Z_p."""
        if not self.terms:
            return tuple([-INF] * self.d)
        out = []
        for i in range(self.d):
            level = -INF
            for t in self.terms:
                a, k, b = t.center[i], t.levels[i], t.twist[i]
                if a == 0:
                    need = k if b == 0 else max(k, -vp(b, self.p))
                else:
                    need = vp(a, self.p) + 1
                level = max(level, need)
            out.append(level)
        return tuple(out)

    def smoothness_levels(self) -> tuple[float, ...]:
        """Per coordinate, a level L with f invariant under translation by p^L Z_p."""
        if not self.terms:
            return tuple([-INF] * self.d)
        return tuple(max(max(t.levels[i], -vp(t.twist[i], self.p)) for t in self.terms)
                     for i in range(self.d))

    # -- comparison / output -------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, SchwartzFunction):
            return NotImplemented
        return self.p == other.p and self.d == other.d and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.d, self.terms))

    def __repr__(self):
        return f"SchwartzFunction(p={self.p}, d={self.d}, terms={len(self.terms)})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            ball = "×".join(f"({format_rational(a)}+{self.p}^{k}Zp)"
                            for a, k in zip(t.center, t.levels))
            twist = ""
            if any(t.twist):
                twist = "ψ(<[" + ",".join(format_rational(b) for b in t.twist) + "],x>)·"
            parts.append(f"[{t.coeff}]·{twist}1{ball}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "terms": [{
                "coeff": t.coeff.to_json() if t.coeff.level else format_rational(t.coeff.to_rational()),
                "twist": [format_rational(b) for b in t.twist],
                "center": [format_rational(a) for a in t.center],
                "levels": list(t.levels),
            } for t in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SchwartzFunction":
        p, d = int(data["p"]), int(data["d"])
        terms = []
        for raw in data["terms"]:
            coeff = CyclotomicNumber.from_json(raw.get("coeff", 1), p)
            levels = raw["levels"]
            twist = raw.get("twist", [0] * len(levels))
            terms.append(make_term(p, coeff, twist, raw["center"], levels))
        return cls(p, d, terms)


# -- evaluation ---------------------------------------------------------

def _point(f: SchwartzFunction, x) -> list:
    if isinstance(x, PAdicVector):
        if x.p != f.p:
            raise MismatchedPrimeError("point and function have different primes")
        pts = list(x.entries)
    else:
        pts = [v if isinstance(v, PAdicScalar) else parse_rational(v) for v in x]
    if len(pts) != f.d:
        raise ValueError(f"point of length {len(pts)} for a d={f.d} function")
    return pts


def evaluate(f: SchwartzFunction, x) -> CyclotomicNumber:
    """Exact value f(x) for x given as rationals or as p-adic scalars."""
    p = f.p
    pts = _point(f, x)
    total = CyclotomicNumber.zero(p)
    for t in f.terms:
        inside = True
        phase = Fraction(0)
        for xi, a, k, b in zip(pts, t.center, t.levels, t.twist):
            if isinstance(xi, PAdicScalar):
                if xi.residue(k) != a:
                    inside = False
                    break
                if b:
                    need = -vp(b, p)
                    phase += b * xi.residue(need)
            else:
                if vp(xi - a, p) < k:
                    inside = False
                    break
                phase += b * xi
        if inside:
            total = total + t.coeff * character_of_rational(phase, p)
    return total


def integrate(f: SchwartzFunction) -> CyclotomicNumber:
    """Integral over Q_p^d with vol(Z_p^d) = 1."""
    total = CyclotomicNumber.zero(f.p)
    for t in f.terms:
        if not any(t.twist):
            total = total + t.coeff * Fraction(f.p) ** (-t.volume_exponent)
    return total


def fourier_transform(f: SchwartzFunction, pairing: str = "dot") -> SchwartzFunction:
    """F[f](y) = int f(x) conj(psi(<y, x>)) dx for the dot or trace pairing."""
    p, d = f.p, f.d
    if pairing == "dot":
        perm = tuple(range(d))
    elif pairing == "trace":
        perm = transpose_permutation(d)
    else:
        raise ValueError(f"unknown pairing {pairing!r}")
    out = []
    for t in f.terms:
        coeff = t.coeff * Fraction(p) ** (-t.volume_exponent)
        coeff = coeff * character_of_rational(_dot(t.twist, t.center), p)
        out.append(make_term(
            p, coeff,
            [-t.center[perm[j]] for j in range(d)],
            [t.twist[perm[j]] for j in range(d)],
            [-t.levels[perm[j]] for j in range(d)]))
    return SchwartzFunction(p, d, out)


# -- affine pull-backs --------------------------------------------------

@dataclass(frozen=True)
class AffineMap:
    """x -> A x + c from Q_p^{d_in} to Q_p^{d_out}; A is an exact rational matrix."""

    matrix: tuple[tuple[Fraction, ...], ...]
    offset: tuple

    def __post_init__(self):
        rows = tuple(tuple(parse_rational(v) for v in row) for row in self.matrix)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        offset = tuple(v if isinstance(v, PAdicScalar) else parse_rational(v) for v in self.offset)
        if len(offset) != len(rows):
            raise ValueError("offset length must equal the output dimension")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "offset", offset)

    @property
    def d_out(self) -> int:
        return len(self.matrix)

    @property
    def d_in(self) -> int:
        return len(self.matrix[0])

    @classmethod
    def linear(cls, matrix, offset=None) -> "AffineMap":
        rows = tuple(tuple(r) for r in matrix)
        return cls(rows, tuple(offset) if offset is not None else (0,) * len(rows))

    @classmethod
    def identity(cls, d: int) -> "AffineMap":
        return cls.linear([[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def scaling(cls, factors: Sequence) -> "AffineMap":
        d = len(factors)
        return cls.linear([[factors[i] if i == j else 0 for j in range(d)] for i in range(d)])


def _exact_offsets(f: SchwartzFunction, amap: AffineMap) -> list[Fraction]:
    """Offsets as rationals; p-adic offsets must be known to the function's scale."""
    need = f.smoothness_levels()
    out = []
    for c, level in zip(amap.offset, need):
        if isinstance(c, PAdicScalar):
            if level == -INF:
                out.append(Fraction(0))
            else:
                if c.absprec < level:
                    raise PrecisionError(
                        f"offset known to O(p^{c.absprec}) but the integrand varies at p^{level}")
                out.append(c.residue(int(level)))
        else:
            out.append(c)
    return out


def lattice_character_integral(rows: list[list[Fraction]], rhs: list[Fraction],
                               beta: list[Fraction], p: int) -> tuple[int, Fraction] | None:
    """Integrate psi(<beta, x>) over {x in Q_p^d : rows x - rhs in Z_p^D}.

    Returns ``(e, phase)`` meaning the integral equals p^e * psi(phase), or
    None when the set is empty or the character averages to zero. Uses a Smith
    normal form over Z_(p): pivots of minimal valuation keep every elimination
    multiplier p-integral, so all transformations are unimodular.
    """
    a = [list(r) for r in rows]
    r = list(rhs)
    beta = list(beta)
    big_d = len(a)
    d = len(beta)
    exps: list[int] = []
    for t in range(min(big_d, d)):
        best = None
        for i in range(t, big_d):
            row = a[i]
            for j in range(t, d):
                if row[j]:
                    v = vp(row[j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        e, i, j = best
        if i != t:
            a[t], a[i] = a[i], a[t]
            r[t], r[i] = r[i], r[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
            beta[t], beta[j] = beta[j], beta[t]
        pivot_row = a[t]
        piv = pivot_row[t]
        for i in range(t + 1, big_d):
            row = a[i]
            if row[t]:
                f = row[t] / piv
                row[t] = Fraction(0)
                for j in range(t + 1, d):
                    if pivot_row[j]:
                        row[j] -= f * pivot_row[j]
                r[i] -= f * r[t]
        for j in range(t + 1, d):
            if pivot_row[j]:
                beta[j] -= (pivot_row[j] / piv) * beta[t]
                pivot_row[j] = Fraction(0)
        unit = piv / Fraction(p) ** e
        r[t] = r[t] / unit
        pivot_row[t] = Fraction(p) ** e
        exps.append(e)
    rank = len(exps)
    for i in range(rank, big_d):
        if r[i] and vp(r[i], p) < 0:
            return None
    if rank < d:
        raise UnboundedSupportError(
            f"integrand support is unbounded (constraint rank {rank} < dimension {d})")
    phase = Fraction(0)
    for t, e in enumerate(exps):
        if beta[t]:
            if vp(beta[t], p) < e:
                return None
            phase += beta[t] * r[t] / Fraction(p) ** e
    return sum(exps), phase


def affine_pullback_product_integral(
        factors: Sequence[tuple[SchwartzFunction, AffineMap]], d: int) -> CyclotomicNumber:
    """Exact value of  int_{Q_p^d} prod_i f_i(A_i x + c_i) dx."""
    if not factors:
        raise ValueError("need at least one factor")
    p = factors[0][0].p
    for f, amap in factors:
        if f.p != p:
            raise MismatchedPrimeError("all factors must share the prime")
        if amap.d_in != d or amap.d_out != f.d:
            raise ValueError(f"map shape {amap.d_out}x{amap.d_in} does not fit f (d={f.d}) "
                             f"on Q_p^{d}")
    offsets = [_exact_offsets(f, amap) for f, amap in factors]
    total = CyclotomicNumber.zero(p)
    for combo in itertools.product(*(f.terms for f, _ in factors)):
        rows, rhs = [], []
        beta = [Fraction(0)] * d
        const = Fraction(0)
        coeff = CyclotomicNumber.one(p)
        for term, (f, amap), offset in zip(combo, factors, offsets):
            coeff = coeff * term.coeff
            for j, (row, c, a, k, b) in enumerate(zip(amap.matrix, offset, term.center,
                                                      term.levels, term.twist)):
                scale = Fraction(p) ** (-k)
                rows.append([x * scale for x in row])
                rhs.append((a - c) * scale)
                if b:
                    for col in range(d):
                        if row[col]:
                            beta[col] += b * row[col]
                    const += b * c
        if not coeff:
            continue
        solved = lattice_character_integral(rows, rhs, beta, p)
        if solved is None:
            continue
        e, phase = solved
        total = total + coeff * Fraction(p) ** e * character_of_rational(const + phase, p)
    return total
