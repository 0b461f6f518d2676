"""Exact coefficient arithmetic.

Rationals are :class:`fractions.Fraction`. On top of them this module builds
elements of the cyclotomic fields Q(zeta_{p^M}), Laurent polynomials in a
formal variable ``t`` (standing for ``q^{-s}``) with cyclotomic coefficients,
and rational functions in ``t`` whose denominators are kept as products of
factors ``1 - c t^k``.
"""
from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import MismatchedPrimeError, PoleError

Rational = Fraction
Scalar = Union[int, Fraction, "CyclotomicNumber"]


def parse_rational(value) -> Fraction:
    """Read an int, Fraction or a ``"num/den"`` string as a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as a rational")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def p_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _reduce(p: int, level: int, coeffs: Mapping[int, Fraction]) -> tuple[int, tuple]:
    """Canonical form: reduce modulo x^{p^M} - 1 and the cyclotomic polynomial,
    then descend to the smallest level containing the value."""
    if level == 0:
        total = sum(coeffs.values(), Fraction(0))
        return 0, (((0, total),) if total else ())
    order = p ** level
    step = p ** (level - 1)
    phi = order - step
    work: dict[int, Fraction] = {}
    for e, c in coeffs.items():
        if c:
            e %= order
            work[e] = work.get(e, 0) + c
    # x^phi = -(1 + x^step + ... + x^{(p-2) step})
    for e in sorted((e for e in work if e >= phi), reverse=True):
        c = work.pop(e)
        if not c:
            continue
        base = e - phi
        for j in range(p - 1):
            f = base + j * step
            work[f] = work.get(f, 0) - c
    items = {e: c for e, c in work.items() if c}
    while level > 0:
        if level == 1:
            if any(e != 0 for e in items):
                break
        elif any(e % p for e in items):
            break
        level -= 1
        items = {e // p: c for e, c in items.items()}
    return level, tuple(sorted(items.items()))


class CyclotomicNumber:
    """An element of Q(zeta_{p^M}) in the power basis of its minimal level.

    Values are normalised to the smallest level that contains them, so two
    numbers are equal exactly when their levels and coefficient tuples agree.
    Level-0 values are plain rationals and combine with any prime.
    """

    __slots__ = ("p", "level", "coeffs", "_hash")

    def __init__(self, p: int, level: int = 0, coeffs: Mapping[int, Fraction] | Iterable = ()):
        if p < 2:
            raise ValueError("prime must be >= 2")
        if not isinstance(coeffs, Mapping):
            acc: dict[int, Fraction] = {}
            for e, c in coeffs:
                acc[e] = acc.get(e, 0) + parse_rational(c)
            coeffs = acc
        else:
            coeffs = {e: parse_rational(c) for e, c in coeffs.items()}
        self.p = p
        self.level, self.coeffs = _reduce(p, level, coeffs)
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def rational(cls, value, p: int = 2) -> "CyclotomicNumber":
        return cls(p, 0, {0: parse_rational(value)})

    @classmethod
    def root_of_unity(cls, p: int, level: int, exponent: int = 1) -> "CyclotomicNumber":
        """zeta_{p^level} ** exponent."""
        return cls(p, level, {exponent: Fraction(1)})

    @classmethod
    def zero(cls, p: int = 2) -> "CyclotomicNumber":
        return cls(p, 0, {})

    @classmethod
    def one(cls, p: int = 2) -> "CyclotomicNumber":
        return cls(p, 0, {0: Fraction(1)})

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return self.level == 0

    def to_rational(self) -> Fraction:
        if self.level:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0][1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.p != self.p and other.level and self.level:
                raise MismatchedPrimeError(f"primes {self.p} and {other.p} differ")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.p, 0, {0: Fraction(other)})
        return NotImplemented

    def _prime_with(self, other: "CyclotomicNumber") -> int:
        return other.p if other.level and not self.level else self.p

    def lift(self, level: int) -> dict[int, Fraction]:
        """Coefficient map of the same value written at a higher level."""
        if level < self.level:
            raise ValueError("cannot lift to a lower level")
        if self.level == 0:
            return dict(self.coeffs)
        scale = self.p ** (level - self.level)
        return {e * scale: c for e, c in self.coeffs}

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._prime_with(other)
        level = max(self.level, other.level)
        acc = self.lift(level)
        for e, c in other.lift(level).items():
            acc[e] = acc.get(e, 0) + c
        return CyclotomicNumber(p, level, acc)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.p, self.level, {e: -c for e, c in self.coeffs})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._prime_with(other)
        if not self.coeffs or not other.coeffs:
            return CyclotomicNumber(p, 0, {})
        if other.level == 0:
            r = other.coeffs[0][1]
            return CyclotomicNumber(p, self.level, {e: c * r for e, c in self.coeffs})
        if self.level == 0:
            r = self.coeffs[0][1]
            return CyclotomicNumber(p, other.level, {e: c * r for e, c in other.coeffs})
        level = max(self.level, other.level)
        order = p ** level
        a = self.lift(level)
        b = other.lift(level)
        acc: dict[int, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = (e1 + e2) % order
                acc[e] = acc.get(e, 0) + c1 * c2
        return CyclotomicNumber(p, level, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNumber.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "CyclotomicNumber":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        if self.level == 0:
            return CyclotomicNumber(self.p, 0, {0: 1 / self.coeffs[0][1]})
        # Solve x * y = 1 in the power basis by Gaussian elimination.
        p, level = self.p, self.level
        dim = (p - 1) * p ** (level - 1)
        columns = []
        for j in range(dim):
            prod = self * CyclotomicNumber.root_of_unity(p, level, j)
            col = [Fraction(0)] * dim
            for e, c in prod.lift(level).items():
                col[e] = c
            columns.append(col)
        rows = [[columns[j][i] for j in range(dim)] + [Fraction(1 if i == 0 else 0)]
                for i in range(dim)]
        solution = _solve(rows, dim)
        return CyclotomicNumber(p, level, dict(enumerate(solution)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugate (zeta -> zeta^{-1})."""
        return CyclotomicNumber(self.p, self.level, {-e: c for e, c in self.coeffs})

    # -- comparison and output ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.level == 0 and self.to_rational() == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        if self.level != other.level or self.coeffs != other.coeffs:
            return False
        return self.level == 0 or self.p == other.p

    def __hash__(self):
        if self._hash is None:
            if self.level == 0:
                self._hash = hash(self.to_rational())
            else:
                self._hash = hash((self.p, self.level, self.coeffs))
        return self._hash

    def sort_key(self) -> tuple:
        return (self.level, self.p if self.level else 0,
                tuple((e, c.numerator, c.denominator) for e, c in self.coeffs))

    def to_complex(self) -> complex:
        if self.level == 0:
            return complex(self.to_rational())
        order = self.p ** self.level
        return sum(float(c) * cmath.exp(2j * math.pi * e / order) for e, c in self.coeffs)

    def __complex__(self):
        return self.to_complex()

    def __repr__(self):
        return f"CyclotomicNumber({self.p}, {self.level}, {dict(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        if self.level == 0:
            return format_rational(self.to_rational())
        order = self.p ** self.level
        parts = []
        for e, c in self.coeffs:
            if e == 0:
                parts.append(format_rational(c))
                continue
            root = f"ζ{order}" + (f"^{e}" if e != 1 else "")
            if c == 1:
                parts.append(root)
            elif c == -1:
                parts.append("-" + root)
            else:
                parts.append(f"{format_rational(c)}·{root}")
        text = " + ".join(parts).replace("+ -", "- ")
        return text

    def to_json(self) -> dict:
        return {"p": self.p, "M": self.level,
                "coeffs": [[e, format_rational(c)] for e, c in self.coeffs]}

    @classmethod
    def from_json(cls, data, p: int | None = None) -> "CyclotomicNumber":
        if isinstance(data, (int, str, Fraction)):
            return cls.rational(data, p or 2)
        return cls(int(data["p"]), int(data["M"]),
                   [(int(e), parse_rational(c)) for e, c in data["coeffs"]])


def _solve(rows: list[list[Fraction]], n: int) -> list[Fraction]:
    """Solve an augmented n x (n+1) system with a unique solution."""
    for col in range(n):
        pivot = next(r for r in range(col, n) if rows[r][col])
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def as_cyclotomic(value, p: int) -> CyclotomicNumber:
    if isinstance(value, CyclotomicNumber):
        if value.level == 0 and value.p != p:
            return CyclotomicNumber(p, 0, dict(value.coeffs))
        return value
    return CyclotomicNumber.rational(value, p)


class LaurentPoly:
    """Finite sum of c_e t^e with cyclotomic coefficients; zero terms are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Scalar] | Iterable = (), p: int = 2):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, CyclotomicNumber] = {}
        for e, c in items:
            c = as_cyclotomic(c, p)
            acc[e] = acc[e] + c if e in acc else c
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c))

    @classmethod
    def monomial(cls, coeff: Scalar, exponent: int = 0, p: int = 2) -> "LaurentPoly":
        return cls({exponent: coeff}, p)

    def is_zero(self) -> bool:
        return not self.terms

    def degree_range(self) -> tuple[int, int]:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return self.terms[0][0], self.terms[-1][0]

    def coeff(self, e: int) -> CyclotomicNumber | int:
        for f, c in self.terms:
            if f == e:
                return c
        return 0

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(self.terms + other.terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly([(e, -c) for e, c in self.terms])

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return LaurentPoly([(e, c * other) for e, c in self.terms])
        acc = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc.append((e1 + e2, c1 * c2))
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly([(e + k, c) for e, c in self.terms])

    def reflect(self, q: int) -> "LaurentPoly":
        """Substitute t -> 1/(q t)."""
        return LaurentPoly([(-e, c * Fraction(q) ** (-e)) for e, c in self.terms])

    def divide_by_factor(self, c: CyclotomicNumber, k: int) -> "LaurentPoly | None":
        """Exact quotient by (1 - c t^k), or None when it does not divide."""
        if not self.terms:
            return self
        lo, hi = self.degree_range()
        if hi - lo < k:
            return None
        quotient: dict[int, CyclotomicNumber] = {}
        for e in range(lo, hi - k + 1):
            value = self.coeff(e)
            prev = quotient.get(e - k)
            if prev is not None:
                value = value + c * prev
            if value:
                quotient[e] = as_cyclotomic(value, c.p)
        q = LaurentPoly(quotient)
        if q * factor_poly(c, k) != self:
            return None
        return q

    def evaluate(self, t: complex) -> complex:
        return sum(c.to_complex() * t ** e for e, c in self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return f"LaurentPoly({dict(self.terms)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            cs = str(c)
            if c.level and len(c.coeffs) > 1:
                cs = f"({cs})"
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}·{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def factor_poly(c: CyclotomicNumber, k: int) -> LaurentPoly:
    return LaurentPoly([(0, CyclotomicNumber.one(c.p)), (k, -c)])


def _factor_key(factor: tuple[CyclotomicNumber, int]) -> tuple:
    c, k = factor
    return (k, c.sort_key())


def _product(factors: Iterable[tuple[CyclotomicNumber, int]]) -> LaurentPoly:
    result = LaurentPoly({0: 1})
    for c, k in factors:
        result = result * factor_poly(c, k)
    return result


class ZetaExpression:
    """Rational function num(t) / prod (1 - c_i t^{k_i}) with t = q^{-s}.

    The denominator is a sorted multiset of ``(c, k)`` pairs. Equality is
    decided by cross-multiplication after removing common factors, so two
    expressions compare equal exactly when they agree as rational functions.
    """

    __slots__ = ("num", "den", "q")

    def __init__(self, num: LaurentPoly, den: Iterable[tuple[Scalar, int]] = (), q: int = 2):
        if q < 2:
            raise ValueError("q must be >= 2")
        factors = []
        for c, k in den:
            c = as_cyclotomic(c, q)
            if not c:
                continue
            if k < 1:
                raise ValueError("denominator exponents must be positive")
            factors.append((c, int(k)))
        self.num = num
        self.den = tuple(sorted(factors, key=_factor_key))
        self.q = q

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, value: Scalar, q: int) -> "ZetaExpression":
        return cls(LaurentPoly({0: as_cyclotomic(value, q)}), (), q)

    @classmethod
    def monomial(cls, value: Scalar, exponent: int, q: int) -> "ZetaExpression":
        return cls(LaurentPoly({exponent: as_cyclotomic(value, q)}), (), q)

    @classmethod
    def geometric(cls, c: Scalar, k: int, q: int, numerator: Scalar = 1,
                  start: int = 0) -> "ZetaExpression":
        """numerator * t^start / (1 - c t^k)."""
        return cls(LaurentPoly({start: as_cyclotomic(numerator, q)}), [(c, k)], q)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "ZetaExpression") -> None:
        if self.q != other.q:
            raise ValueError(f"mismatched q: {self.q} vs {other.q}")

    def _lift(self, other) -> "ZetaExpression":
        if isinstance(other, ZetaExpression):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return ZetaExpression.constant(other, self.q)
        if isinstance(other, LaurentPoly):
            return ZetaExpression(other, (), self.q)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        ca, cb = Counter(self.den), Counter(other.den)
        union = ca | cb
        num = self.num * _product((union - ca).elements()) + \
            other.num * _product((union - cb).elements())
        return ZetaExpression(num, union.elements(), self.q)

    __radd__ = __add__

    def __neg__(self):
        return ZetaExpression(-self.num, self.den, self.q)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return ZetaExpression(self.num * other.num, self.den + other.den, self.q)

    __rmul__ = __mul__

    def shift(self, k: int) -> "ZetaExpression":
        """Multiply by t^k."""
        return ZetaExpression(self.num.shift(k), self.den, self.q)

    def reflect(self) -> "ZetaExpression":
        """The substitution s -> 1 - s, i.e. t -> 1/(q t)."""
        num = self.num.reflect(self.q)
        den = []
        for c, k in self.den:
            # 1 - c q^{-k} t^{-k} = -c q^{-k} t^{-k} (1 - c^{-1} q^k t^k)
            lead = c * Fraction(self.q) ** (-k)
            num = num * (-lead.inverse())
            num = num.shift(k)
            den.append((c.inverse() * self.q ** k, k))
        return ZetaExpression(num, den, self.q)

    # -- comparison ---------------------------------------------------
    def equals(self, other: "ZetaExpression") -> bool:
        self._check(other)
        ca, cb = Counter(self.den), Counter(other.den)
        common = ca & cb
        left = self.num * _product((cb - common).elements())
        right = other.num * _product((ca - common).elements())
        return left == right

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber, LaurentPoly)):
            other = self._lift(other)
        if not isinstance(other, ZetaExpression):
            return NotImplemented
        return self.q == other.q and self.equals(other)

    __hash__ = None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def simplify(self) -> "ZetaExpression":
        """Cancel denominator factors that divide the numerator exactly."""
        num = self.num
        kept = []
        for c, k in self.den:
            quotient = num.divide_by_factor(c, k)
            if quotient is None:
                kept.append((c, k))
            else:
                num = quotient
        return ZetaExpression(num, kept, self.q)

    def as_laurent(self) -> LaurentPoly | None:
        reduced = self.simplify()
        return reduced.num if not reduced.den else None

    # -- evaluation ---------------------------------------------------
    def evaluate(self, s: complex, q: int | None = None, tol: float = 1e-12) -> complex:
        """Numeric value at t = q^{-s}."""
        q = self.q if q is None else q
        t = cmath.exp(-complex(s) * math.log(q))
        denominator = 1 + 0j
        for c, k in self.den:
            factor = 1 - c.to_complex() * t ** k
            if abs(factor) < tol:
                raise PoleError(f"denominator factor (1 - ({c}) t^{k}) vanishes at s={s}")
            denominator *= factor
        return self.num.evaluate(t) / denominator

    # -- output -------------------------------------------------------
    def __repr__(self):
        return f"ZetaExpression({self.num!r}, {self.den!r}, q={self.q})"

    def __str__(self):
        num = str(self.num)
        if not self.den:
            return num
        parts = []
        for c, k in self.den:
            cs = str(c)
            if c.level and len(c.coeffs) > 1:
                cs = f"({cs})"
            mono = "t" if k == 1 else f"t^{k}"
            parts.append(f"(1 - {mono})" if cs == "1" else f"(1 - {cs}·{mono})")
        if len(self.num.terms) > 1:
            num = f"({num})"
        den = parts[0] if len(parts) == 1 else f"({'·'.join(parts)})"
        return f"{num} / {den}"

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "num": [[e, as_cyclotomic(c, self.q).to_json()] for e, c in self.num.terms],
            "den": [[as_cyclotomic(c, self.q).to_json(), k] for c, k in self.den],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ZetaExpression":
        q = int(data["q"])
        num = LaurentPoly([(int(e), CyclotomicNumber.from_json(c, q)) for e, c in data["num"]])
        den = [(CyclotomicNumber.from_json(c, q), int(k)) for c, k in data["den"]]
        return cls(num, den, q)


def zeta_expr_equal(a: ZetaExpression, b: ZetaExpression) -> bool:
    return a.equals(b)


def zeta_expr_eval(a: ZetaExpression, s: complex, q: int | None = None) -> complex:
    return a.evaluate(s, q)


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of an exact identity check: truthy iff it holds.

    Unpacks as ``holds, left, right`` so failures carry both sides as witness.
    """

    holds: bool
    left: object
    right: object

    def __bool__(self):
        return self.holds

    def __iter__(self):
        return iter((self.holds, self.left, self.right))
