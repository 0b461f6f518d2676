"""Complete factorization over Q for small degree.

Square-free decomposition (Yun), rational roots, then a Kronecker search for
higher-degree factors. Candidate factor degrees are pruned by distinct-degree
factorization modulo a few small primes.
"""
from __future__ import annotations

from fractions import Fraction

from sympy import divisors

from ..errors import DegreeBoundError, InternalConsistencyError
from .poly import RationalPoly, poly_gcd

DEFAULT_DEGREE_BOUND = 8


def squarefree_decomposition(p: RationalPoly) -> list[tuple[RationalPoly, int]]:
    """Yun's algorithm: monic p = prod a_i^i with a_i square-free and coprime."""
    p = p.monic()
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    i = 1
    while b.degree >= 1:
        d = c - b.derivative()
        g = poly_gcd(b, d)
        if g.degree >= 1:
            out.append((g, i))
        b = b // g
        c = d // g
        i += 1
    return out


# -- arithmetic mod a small prime (ascending int lists) ------------------
def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod_divmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv % p
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % p
    return _trim(q), _trim(a[:len(b) - 1])


def _mod_mul(a, b, p, m):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _mod_divmod(_trim(out), m, p)[1]


def _mod_gcd(a, b, p):
    while b:
        a, b = b, _mod_divmod(a, b, p)[1]
    return a


def _mod_degree_pattern(f: list[int], p: int) -> list[int] | None:
    """Degrees of irreducible factors of square-free f mod p, or None if unusable."""
    f = [c % p for c in f]
    if f[-1] == 0:
        return None
    # square-free mod p: gcd(f, f') = 1
    df = _trim([(i * c) % p for i, c in enumerate(f)][1:])
    if not df or len(_mod_gcd(f, df, p)) > 1:
        return None
    degrees = []
    h = [0, 1]
    rest = f
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = _mod_pow_x(h, p, p, rest)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _mod_gcd(rest, _trim(diff), p)
        if len(g) > 1:
            degrees += [d] * ((len(g) - 1) // d)
            rest = _mod_divmod(rest, g, p)[0]
            h = _mod_divmod(h, rest, p)[1] if len(rest) > 1 else h
    if len(rest) > 1:
        degrees.append(len(rest) - 1)
    return degrees


def _mod_pow_x(h, e, p, m):
    """h^e mod (m, p)."""
    result = [1]
    base = _mod_divmod(h, m, p)[1]
    while e:
        if e & 1:
            result = _mod_mul(result, base, p, m)
        base = _mod_mul(base, base, p, m)
        e >>= 1
    return result


def _subset_sums(values: list[int]) -> set[int]:
    sums = {0}
    for v in values:
        sums |= {s + v for s in sums}
    return sums


_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


def possible_factor_degrees(ints: list[int]) -> set[int]:
    n = len(ints) - 1
    allowed = set(range(1, n))
    used = 0
    for p in _PRIMES:
        if ints[-1] % p == 0:
            continue
        pattern = _mod_degree_pattern(ints, p)
        if pattern is None:
            continue
        allowed &= _subset_sums(pattern)
        used += 1
        if used >= 5 or not allowed:
            break
    return allowed


# -- search over Q ---------------------------------------------------------
def _rational_roots(ints: list[int]) -> list[Fraction]:
    if ints[0] == 0:
        k = next(i for i, c in enumerate(ints) if c)
        return [Fraction(0)] + _rational_roots(ints[k:]) if len(ints) - k > 1 else [Fraction(0)]
    a0, an = ints[0], ints[-1]
    roots = []
    poly = RationalPoly(ints)
    for num in divisors(abs(a0)):
        for den in divisors(abs(an)):
            for r in (Fraction(num, den), Fraction(-num, den)):
                if r not in roots and poly(r) == 0:
                    roots.append(r)
    return roots


def _interpolate(xs: list[int], ys: list[int]) -> RationalPoly:
    result = RationalPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = RationalPoly([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * RationalPoly([-xj, 1])
                denom *= xi - xj
        result = result + basis * (Fraction(yi) / denom)
    return result


def _kronecker_factor(ints: list[int], d: int) -> RationalPoly | None:
    """A primitive integer factor of degree d, or None."""
    poly = RationalPoly(ints)
    # prefer points with few divisors; f has no rational roots so values are nonzero
    candidates = sorted(range(-8, 9), key=lambda v: (len(divisors(abs(int(poly(v))))), abs(v)))
    pts = sorted(candidates[:d + 1])
    vals = [int(poly(v)) for v in pts]
    choices = [list(divisors(abs(vals[0])))]
    for v in vals[1:]:
        ds = divisors(abs(v))
        choices.append([s * e for e in ds for s in (1, -1)])
    # integer polynomials satisfy (a - b) | g(a) - g(b); prune partial choices with it
    chosen: list[int] = []

    def search(i: int):
        if i == len(pts):
            g = _interpolate(pts, chosen)
            if g.degree == d and all(c.denominator == 1 for c in g.coeffs) and g.divides(poly):
                return g.monic()
            return None
        for y in choices[i]:
            if all((y - chosen[j]) % (pts[i] - pts[j]) == 0 for j in range(i)):
                chosen.append(y)
                found = search(i + 1)
                chosen.pop()
                if found is not None:
                    return found
        return None

    return search(0)


def _factor_squarefree(p: RationalPoly) -> list[RationalPoly]:
    """Irreducible monic factors of a square-free monic polynomial."""
    factors = []
    _, ints = p.primitive_integer()
    for r in _rational_roots(ints):
        lin = RationalPoly([-r, 1])
        factors.append(lin)
        p = p // lin
    stack = [p] if p.degree >= 1 else []
    while stack:
        f = stack.pop()
        if f.degree <= 1:
            if f.degree == 1:
                factors.append(f.monic())
            continue
        _, ints = f.primitive_integer()
        allowed = sorted(d for d in possible_factor_degrees(ints) if 2 <= d <= f.degree // 2)
        found = None
        for d in allowed:
            found = _kronecker_factor(ints, d)
            if found is not None:
                break
        if found is None:
            factors.append(f.monic())
        else:
            stack.append(found)
            stack.append((f // found).monic())
    return factors


def factor_over_rationals(p: RationalPoly, degree_bound: int = DEFAULT_DEGREE_BOUND
                          ) -> list[tuple[RationalPoly, int]]:
    """[(irreducible monic factor, multiplicity)], sorted by (degree, coefficients)."""
    if p.degree < 1:
        raise ValueError("cannot factor a constant polynomial")
    if not p.is_monic():
        raise ValueError("factor_over_rationals expects a monic polynomial")
    if p.degree > degree_bound:
        raise DegreeBoundError(f"degree {p.degree} exceeds the factorization bound {degree_bound}")
    out = []
    for part, mult in squarefree_decomposition(p):
        for f in _factor_squarefree(part):
            out.append((f, mult))
    out.sort(key=lambda fm: fm[0].sort_key())
    check = RationalPoly([1])
    for f, m in out:
        check = check * f ** m
    if check != p:
        raise InternalConsistencyError("factorization does not reproduce its input")
    return out
