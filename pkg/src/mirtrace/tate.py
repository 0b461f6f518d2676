"""Local Tate integrals on Q_p^x as exact rational functions of t = p^{-s}.

Multiplicative measure: d^x x = (1 - 1/p)^{-1} dx / |x|, so vol(Z_p^x) = 1 and
I(s; 1_{Z_p}) = 1/(1 - t).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalConsistencyError
from .exactnum import CyclotomicNumber, IdentityCheck, LaurentPoly, ZetaExpression
from .padic import vp
from .schwartz import SchwartzFunction


@dataclass(frozen=True, order=True)
class LocalZetaFactor:
    """zeta_E(h s - a) for the unramified extension E of degree ``deg``,
    i.e. 1 / (1 - q^{deg a} t^{deg h})."""

    deg: int
    h: int
    a: int

    def __post_init__(self):
        if self.deg < 1 or self.h < 1:
            raise ValueError("degree and hook coefficient must be positive")

    def to_expression(self, q: int) -> ZetaExpression:
        return zeta_factor_to_expression(self, q)

    def symbol(self, field: str | None = None) -> str:
        field = field or ("F" if self.deg == 1 else f"E{self.deg}")
        arg = "s" if self.h == 1 else f"{self.h}s"
        if self.a > 0:
            arg += f"-{self.a}"
        elif self.a < 0:
            arg += f"+{-self.a}"
        return f"ζ_{field}({arg})"

    def to_json(self) -> dict:
        return {"deg": self.deg, "h": self.h, "a": self.a}

    @classmethod
    def from_json(cls, data: dict) -> "LocalZetaFactor":
        return cls(int(data["deg"]), int(data["h"]), int(data["a"]))


def zeta_factor_to_expression(z: LocalZetaFactor, q: int) -> ZetaExpression:
    if q < 2:
        raise ValueError("q must be >= 2")
    return ZetaExpression.geometric(Fraction(q) ** (z.deg * z.a), z.deg * z.h, q)


def _ball_integral(phi: SchwartzFunction, j: int) -> CyclotomicNumber:
    """int_{p^j Z_p} phi(x) dx."""
    return phi.pointwise(SchwartzFunction.ball(phi.p, [0], [j])).integrate()


def shell_value(phi: SchwartzFunction, m: int) -> CyclotomicNumber:
    """int_{p^m Z_p^x} phi d^x x."""
    p = phi.p
    weight = Fraction(p, p - 1) * Fraction(p) ** m
    return (_ball_integral(phi, m) - _ball_integral(phi, m + 1)) * weight


def shell_bounds(phi: SchwartzFunction) -> tuple[int, int, CyclotomicNumber]:
    """(lo, hi, C): shells m < lo vanish and every shell m >= hi equals C."""
    p = phi.p
    lo, hi = None, None
    tail = CyclotomicNumber.zero(p)
    for term in phi.terms:
        a, k, b = term.center[0], term.levels[0], term.twist[0]
        if a == 0:
            start = k
            stable = k if b == 0 else max(k, -int(vp(b, p)))
            # beyond `stable` the term integrates to coeff * p^{-j} over p^j Z_p
            tail = tail + term.coeff
        else:
            start = int(vp(a, p))
            stable = start + 1
        lo = start if lo is None else min(lo, start)
        hi = stable if hi is None else max(hi, stable)
    if lo is None:
        return 0, 0, tail
    return lo, hi, tail


def local_tate_integral(phi: SchwartzFunction) -> ZetaExpression:
    """int_{Q_p^x} phi(x) |x|^s d^x x as a ZetaExpression in t = p^{-s}."""
    if phi.d != 1:
        raise ValueError("the local Tate integral needs a function on Q_p (d = 1)")
    p = phi.p
    lo, hi, tail = shell_bounds(phi)
    # the stated asymptotics are checked, never assumed
    if shell_value(phi, lo - 1):
        raise InternalConsistencyError(f"shell {lo - 1} below the support bound is nonzero")
    if shell_value(phi, hi) != tail or shell_value(phi, hi + 1) != tail:
        raise InternalConsistencyError(f"shells from {hi} on are not stable")
    finite = LaurentPoly([(m, shell_value(phi, m)) for m in range(lo, hi)])
    result = ZetaExpression(finite, (), p)
    if tail:
        result = result + ZetaExpression.geometric(1, 1, p, numerator=tail, start=hi)
    return result


def verify_local_functional_equation(phi1: SchwartzFunction, phi2: SchwartzFunction):
    """Check I(s; f1) I(1-s; F f2) = I(1-s; F f1) I(s; f2).

    Returns an IdentityCheck, unpackable as ``(holds, left, right)``.
    """
    if phi1.d != 1 or phi2.d != 1:
        raise ValueError("the local functional equation is for functions on Q_p")
    left = local_tate_integral(phi1) * local_tate_integral(phi2.fourier()).reflect()
    right = local_tate_integral(phi1.fourier()).reflect() * local_tate_integral(phi2)
    return IdentityCheck(left.equals(right), left, right)
