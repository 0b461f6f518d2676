"""Elements of Q_p at tracked finite precision.

A nonzero scalar is ``p^v * u`` with ``u`` a unit known modulo ``p^N`` (``N``
relative digits); its absolute precision is ``v + N``. A scalar that is zero
to its precision only records the absolute precision. Nothing here rounds
silently: asking for digits that are not guaranteed raises
:class:`~mirtrace.errors.PrecisionError`.

The additive character has conductor exactly Z_p:
``psi(x) = exp(2 pi i {x}_p)`` with ``{x}_p`` the p-adic fractional part.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import IndeterminateValuationError, MismatchedPrimeError, PrecisionError
from .exactnum import CyclotomicNumber, parse_rational

DEFAULT_PRECISION = 20


def valuation_of_rational(x: Fraction, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        raise IndeterminateValuationError("valuation of exact zero")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def vp(x, p: int) -> float | int:
    """Valuation of a rational, with +inf for zero."""
    x = Fraction(x)
    return float("inf") if x == 0 else valuation_of_rational(x, p)


def fractional_part(x, p: int) -> Fraction:
    """The p-adic fractional part {x}_p in [0, 1) with x - {x}_p in Z_p."""
    x = Fraction(x)
    d = x.denominator
    m = 0
    while d % p == 0:
        d //= p
        m += 1
    if m == 0:
        return Fraction(0)
    modulus = p ** m
    u = (x.numerator * pow(d, -1, modulus)) % modulus
    return Fraction(u, modulus)


def residue_of_rational(x, p: int, k: int) -> Fraction:
    """Canonical representative in [0, p^k) of the class x + p^k Z_p."""
    scale = Fraction(p) ** k
    return fractional_part(Fraction(x) / scale, p) * scale


def character_of_rational(x, p: int) -> CyclotomicNumber:
    frac = fractional_part(x, p)
    if frac == 0:
        return CyclotomicNumber.one(p)
    m = 0
    d = frac.denominator
    while d > 1:
        d //= p
        m += 1
    return CyclotomicNumber.root_of_unity(p, m, frac.numerator)


@dataclass(frozen=True)
class PAdicScalar:
    """x = p^valuation * unit, unit known modulo p^(absprec - valuation)."""

    p: int
    valuation: int | None
    unit: int
    absprec: int

    def __post_init__(self):
        if self.valuation is not None:
            digits = self.absprec - self.valuation
            if digits < 1:
                raise PrecisionError("a nonzero scalar needs at least one digit")
            if self.unit % self.p == 0:
                raise ValueError("unit part is divisible by p")
            object.__setattr__(self, "unit", self.unit % self.p ** digits)

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rational(cls, x, p: int, precision: int = DEFAULT_PRECISION) -> "PAdicScalar":
        """Scalar with ``precision`` relative digits (absolute digits for 0)."""
        x = parse_rational(x)
        if precision < 1:
            raise ValueError("precision must be positive")
        if x == 0:
            return cls(p, None, 0, precision)
        v = valuation_of_rational(x, p)
        unit = x / Fraction(p) ** v
        modulus = p ** precision
        u = (unit.numerator * pow(unit.denominator, -1, modulus)) % modulus
        return cls(p, v, u, v + precision)

    @classmethod
    def zero(cls, p: int, absprec: int) -> "PAdicScalar":
        return cls(p, None, 0, absprec)

    # -- basic data ---------------------------------------------------
    @property
    def precision(self) -> int:
        """Relative precision (guaranteed unit digits); 0 for zero-to-precision."""
        return 0 if self.valuation is None else self.absprec - self.valuation

    def is_zero(self) -> bool:
        return self.valuation is None

    def val(self) -> int:
        if self.valuation is None:
            raise IndeterminateValuationError(
                f"value is zero to precision O(p^{self.absprec}); valuation undetermined")
        return self.valuation

    def norm(self) -> Fraction:
        return Fraction(self.p) ** (-self.val())

    def to_fraction(self) -> Fraction:
        """The representative p^v * u (exact only up to O(p^absprec))."""
        if self.valuation is None:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def residue(self, k: int) -> Fraction:
        """Canonical representative in [0, p^k) of x mod p^k Z_p."""
        if self.absprec < k:
            raise PrecisionError(
                f"need x mod p^{k} but only O(p^{self.absprec}) is known")
        return residue_of_rational(self.to_fraction(), self.p, k)

    def fractional_part(self) -> Fraction:
        return self.residue(0)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "PAdicScalar":
        if isinstance(other, PAdicScalar):
            if other.p != self.p:
                raise MismatchedPrimeError(f"primes {self.p} and {other.p} differ")
            return other
        if isinstance(other, (int, Fraction)):
            # exact rationals carry as many digits as this scalar can use
            digits = max(self.absprec - (vp(other, self.p) if other else 0), 1)
            digits = max(int(digits), self.precision, 1) + 1
            return PAdicScalar.from_rational(other, self.p, digits)
        return NotImplemented

    @classmethod
    def _from_value(cls, value: Fraction, p: int, absprec: int) -> "PAdicScalar":
        if value == 0 or vp(value, p) >= absprec:
            return cls(p, None, 0, absprec)
        v = valuation_of_rational(value, p)
        return cls.from_rational(value, p, absprec - v)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        absprec = min(self.absprec, other.absprec)
        return PAdicScalar._from_value(self.to_fraction() + other.to_fraction(), self.p, absprec)

    __radd__ = __add__

    def __neg__(self):
        if self.valuation is None:
            return self
        return PAdicScalar(self.p, self.valuation, -self.unit, self.absprec)

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
        p = self.p
        if self.valuation is None and other.valuation is None:
            return PAdicScalar(p, None, 0, self.absprec + other.absprec)
        if self.valuation is None:
            return PAdicScalar(p, None, 0, self.absprec + other.valuation)
        if other.valuation is None:
            return PAdicScalar(p, None, 0, other.absprec + self.valuation)
        digits = min(self.precision, other.precision)
        v = self.valuation + other.valuation
        return PAdicScalar(p, v, (self.unit * other.unit) % p ** digits, v + digits)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.valuation is None:
            raise IndeterminateValuationError("division by a value that is zero to precision")
        digits_other = other.precision
        inv = PAdicScalar(self.p, -other.valuation,
                          pow(other.unit, -1, self.p ** digits_other),
                          -other.valuation + digits_other)
        return self * inv

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __str__(self):
        if self.valuation is None:
            return f"O({self.p}^{self.absprec})"
        return f"{self.to_fraction()} + O({self.p}^{self.absprec})"


def as_padic(x, p: int, precision: int = DEFAULT_PRECISION) -> PAdicScalar:
    if isinstance(x, PAdicScalar):
        if x.p != p:
            raise MismatchedPrimeError(f"primes {x.p} and {p} differ")
        return x
    return PAdicScalar.from_rational(parse_rational(x), p, precision)


def valuation(x: PAdicScalar) -> int:
    return x.val()


def norm(x: PAdicScalar) -> Fraction:
    return x.norm()


def additive_character(x) -> CyclotomicNumber:
    """psi(x) = zeta_{p^m}^u where {x}_p = u / p^m; trivial exactly on Z_p."""
    if not isinstance(x, PAdicScalar):
        raise TypeError("additive_character expects a PAdicScalar; "
                        "use character_of_rational for exact rationals")
    return character_of_rational(x.fractional_part(), x.p)


@dataclass(frozen=True)
class PAdicVector:
    p: int
    entries: tuple[PAdicScalar, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a p-adic vector needs length >= 1")
        for e in self.entries:
            if e.p != self.p:
                raise MismatchedPrimeError("entries must share the prime")

    @classmethod
    def from_rationals(cls, values: Iterable, p: int,
                       precision: int = DEFAULT_PRECISION) -> "PAdicVector":
        return cls(p, tuple(as_padic(v, p, precision) for v in values))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def to_fractions(self) -> tuple[Fraction, ...]:
        return tuple(e.to_fraction() for e in self.entries)


def norm_of_vector(values: Sequence, p: int) -> Fraction:
    """Sup norm of a rational vector (0 for the zero vector)."""
    vals = [vp(x, p) for x in values]
    m = min(vals)
    return Fraction(0) if m == float("inf") else Fraction(p) ** (-m)
