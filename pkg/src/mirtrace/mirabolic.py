"""Local mirabolic objects over Q_p: the kernel K(g; f1, f2), the Eisenstein
integral E(g, s; Phi1, Phi2) for diagonal g, and the GL(1) local trace.

Matrices X in gl_n are flattened row-major to Q_p^{n^2}. Fourier transforms on
gl_n use the trace pairing <X, Y> = tr(XY), under which Ad(g) is an isometry.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .canonical import RationalMatrix
from .errors import InternalConsistencyError, MismatchedPrimeError
from .exactnum import CyclotomicNumber, IdentityCheck, LaurentPoly, ZetaExpression, parse_rational
from .padic import vp
from .schwartz import AffineMap, SchwartzFunction, affine_pullback_product_integral


@dataclass(frozen=True)
class GroupElement:
    matrix: RationalMatrix

    def __post_init__(self):
        m = self.matrix if isinstance(self.matrix, RationalMatrix) else RationalMatrix(self.matrix)
        if not m.is_square():
            raise ValueError("a group element must be square")
        if m.det() == 0:
            raise ValueError("a group element must be invertible")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(RationalMatrix.identity(n))

    @classmethod
    def diagonal(cls, entries) -> "GroupElement":
        return cls(RationalMatrix.diag([parse_rational(e) for e in entries]))

    @property
    def n(self) -> int:
        return self.matrix.nrows

    @property
    def det(self) -> Fraction:
        return self.matrix.det()

    def det_valuation(self, p: int) -> int:
        return int(vp(self.det, p))

    def abs_det(self, p: int) -> Fraction:
        return Fraction(p) ** (-self.det_valuation(p))

    def is_diagonal(self) -> bool:
        return all(self.matrix[i, j] == 0 for i in range(self.n) for j in range(self.n) if i != j)

    def diagonal_entries(self) -> list[Fraction]:
        return [self.matrix[i, i] for i in range(self.n)]

    def to_json(self):
        return self.matrix.to_json()

    @classmethod
    def from_json(cls, data) -> "GroupElement":
        return cls(RationalMatrix(data))


def adjoint_map(g: GroupElement) -> AffineMap:
    """X -> g^{-1} X g on row-major vec(X): the matrix g^{-1} (x) g^T."""
    n = g.n
    ginv = g.matrix.inverse()
    gm = g.matrix
    rows = [[ginv[i, k] * gm[l, j] for k in range(n) for l in range(n)]
            for i in range(n) for j in range(n)]
    return AffineMap.linear(rows)


def _check_kernel_inputs(g: GroupElement, f1: SchwartzFunction, f2: SchwartzFunction) -> None:
    if f1.p != f2.p:
        raise MismatchedPrimeError(f"f1 uses p={f1.p}, f2 uses p={f2.p}")
    d = g.n * g.n
    if f1.d != d or f2.d != d:
        raise ValueError(f"kernel functions must live on gl_{g.n} (d={d}), got d={f1.d}, {f2.d}")


def local_kernel(g: GroupElement, f1: SchwartzFunction, f2: SchwartzFunction) -> CyclotomicNumber:
    """K(g; f1, f2) = int f1(X) f2(g^{-1} X g) dX."""
    _check_kernel_inputs(g, f1, f2)
    d = g.n * g.n
    return affine_pullback_product_integral([(f1, AffineMap.identity(d)), (f2, adjoint_map(g))], d)


def verify_kernel_swap(g: GroupElement, f1: SchwartzFunction, f2: SchwartzFunction) -> IdentityCheck:
    """K(g; F f1, f2) == K(g; f1, F f2) with the trace-pairing transform."""
    left = local_kernel(g, f1.fourier("trace"), f2)
    right = local_kernel(g, f1, f2.fourier("trace"))
    return IdentityCheck(left == right, left, right)


# -- Eisenstein integral --------------------------------------------------

def _inner_integral(phi1: SchwartzFunction, phi2: SchwartzFunction, z: Fraction,
                    diag: list[Fraction]) -> CyclotomicNumber:
    """H(z) = int Phi1(v) Phi2(z v g) dv for diagonal g."""
    n = phi1.d
    return affine_pullback_product_integral(
        [(phi1, AffineMap.identity(n)), (phi2, AffineMap.scaling([z * gi for gi in diag]))], n)


def _unit_precision(phi1: SchwartzFunction) -> int:
    """R such that Phi1(v) = Phi1(v u) for every unit u = 1 mod p^R."""
    p = phi1.p
    r = 1
    for term in phi1.terms:
        for a, k, b in zip(term.center, term.levels, term.twist):
            low = min(k, vp(a, p))
            need = k if b == 0 else max(k, -vp(b, p))
            r = max(r, int(need - low))
    return r


def _shell(phi1, phi2, diag, m: int, units: list[int]) -> CyclotomicNumber:
    """int_{Z_p^x} H(p^m u) d^x u as the mean over unit residues."""
    p = phi1.p
    base = Fraction(p) ** m
    total = CyclotomicNumber.zero(p)
    for u in units:
        total = total + _inner_integral(phi1, phi2, base * u, diag)
    return total * Fraction(1, len(units))


def eisenstein_shell_bounds(g: GroupElement, phi1: SchwartzFunction, phi2: SchwartzFunction
                            ) -> tuple[int, int]:
    """(lo, hi): shells m <= lo follow the negative asymptotic, m >= hi the positive one."""
    p = phi1.p
    vg = [int(vp(x, p)) for x in g.diagonal_entries()]
    v1, v2 = phi1.support_valuations(), phi2.support_valuations()
    k1, k2 = phi1.constancy_levels_at_zero(), phi2.constancy_levels_at_zero()
    m_plus = max(k2[i] - v1[i] - vg[i] for i in range(g.n))
    m_minus = min(v2[i] - vg[i] - k1[i] for i in range(g.n))
    lo = int(m_minus)
    hi = max(int(m_plus), lo + 1)
    return lo, hi


def local_eisenstein_integral(g: GroupElement, phi1: SchwartzFunction,
                              phi2: SchwartzFunction) -> ZetaExpression:
    """E(g, s; Phi1, Phi2) = |det g|^s int_{Q_p^x} int Phi1(v) Phi2(z v g) dv |z|^{ns} d^x z.

    Exact in t = p^{-s}. When 0 lies in the support of both Phi the defining
    integral converges only for 0 < Re(s) < 1; the returned rational function
    is its meromorphic continuation.
    """
    if phi1.p != phi2.p:
        raise MismatchedPrimeError(f"Phi1 uses p={phi1.p}, Phi2 uses p={phi2.p}")
    p, n = phi1.p, g.n
    if phi1.d != n or phi2.d != n:
        raise ValueError(f"Phi1, Phi2 must live on Q_p^{n}, got d={phi1.d}, {phi2.d}")
    if not g.is_diagonal():
        raise ValueError("the Eisenstein integral is implemented for diagonal g only")
    zero = ZetaExpression.constant(0, p)
    if phi1.is_zero() or phi2.is_zero():
        return zero
    diag = g.diagonal_entries()
    lo, hi = eisenstein_shell_bounds(g, phi1, phi2)
    r = _unit_precision(phi1)
    units = [u for u in range(1, p ** r) if u % p]

    origin = [0] * n
    a_plus = phi2(origin) * phi1.integrate()
    a_minus = phi1(origin) * phi2.integrate() / g.abs_det(p)

    # the tails are asymptotic claims; check them on the boundary shells
    if _shell(phi1, phi2, diag, hi, units) != a_plus:
        raise InternalConsistencyError(f"positive shells are not stable from m={hi}")
    if _shell(phi1, phi2, diag, lo, units) != a_minus * Fraction(p) ** (n * lo):
        raise InternalConsistencyError(f"negative shells do not follow the tail at m={lo}")

    finite = LaurentPoly([(n * m, _shell(phi1, phi2, diag, m, units)) for m in range(lo + 1, hi)])
    result = ZetaExpression(finite, (), p)
    if a_plus:
        result = result + ZetaExpression.geometric(1, n, p, numerator=a_plus, start=n * hi)
    if a_minus:
        # sum_{m <= lo} (p t)^{nm} = -(p t)^{n(lo+1)} / (1 - p^n t^n)
        lead = -a_minus * Fraction(p) ** (n * (lo + 1))
        result = result + ZetaExpression.geometric(p ** n, n, p, numerator=lead, start=n * (lo + 1))
    return result.shift(g.det_valuation(p))


def gl1_local_trace(f1: SchwartzFunction, f2: SchwartzFunction, phi1: SchwartzFunction,
                    phi2: SchwartzFunction, g: GroupElement | None = None) -> ZetaExpression:
    """(int f1 f2) * E(1, s; Phi1, Phi2): the n = 1 local trace, where the kernel is
    constant in g and the integral over Z\\G is trivial."""
    if g is not None and g.n != 1:
        raise ValueError("the GL(1) local trace needs n = 1")
    for f in (f1, f2, phi1, phi2):
        if f.d != 1:
            raise ValueError("all inputs of the GL(1) local trace live on Q_p")
    kernel = local_kernel(GroupElement.identity(1), f1, f2)
    if not kernel:
        return ZetaExpression.constant(0, f1.p)
    return local_eisenstein_integral(GroupElement.identity(1), phi1, phi2) * kernel


def verify_gl1_trace_swap(f1, f2, phi1, phi2) -> IdentityCheck:
    left = gl1_local_trace(f1.fourier(), f2, phi1, phi2)
    right = gl1_local_trace(f1, f2.fourier(), phi1, phi2)
    return IdentityCheck(left.equals(right), left, right)
