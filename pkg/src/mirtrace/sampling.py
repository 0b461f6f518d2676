"""Seeded random inputs for the property suites. Sizes stay at desk scale."""
from __future__ import annotations

import random
from fractions import Fraction

from .canonical import RationalMatrix
from .exactnum import CyclotomicNumber
from .mirabolic import GroupElement
from .schwartz import SchwartzFunction, make_term


def random_padic_rational(rng: random.Random, p: int, low: int, high: int) -> Fraction:
    """A rational u * p^v with v in [low, high] and a small integer unit u."""
    v = rng.randint(low, high)
    u = rng.choice([1, -1]) * rng.randint(1, 2 * p)
    while u % p == 0:
        u += 1
    return Fraction(u) * Fraction(p) ** v


def random_coefficient(rng: random.Random, p: int) -> CyclotomicNumber:
    c = CyclotomicNumber.rational(Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 3)), p)
    if rng.random() < 0.3:
        c = c * CyclotomicNumber.root_of_unity(p, 1, rng.randrange(p))
    return c


def random_schwartz(rng: random.Random, p: int, d: int, max_terms: int = 3,
                    level_range: tuple[int, int] = (-1, 2)) -> SchwartzFunction:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        levels = [rng.randint(*level_range) for _ in range(d)]
        center = [0 if rng.random() < 0.4 else random_padic_rational(rng, p, k - 2, k)
                  for k in levels]
        twist = [0 if rng.random() < 0.5 else random_padic_rational(rng, p, -k - 2, -k)
                 for k in levels]
        terms.append(make_term(p, random_coefficient(rng, p), twist, center, levels))
    return SchwartzFunction(p, d, terms)


def random_matrix(rng: random.Random, n: int, density: float = 0.6) -> RationalMatrix:
    pool = [1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-1, 3)]
    return RationalMatrix([[rng.choice(pool) if rng.random() < density else 0
                            for _ in range(n)] for _ in range(n)])


def random_structured_matrix(rng: random.Random, n: int) -> RationalMatrix:
    """A matrix conjugate to a random block-diagonal form with repeated factors,
    so nontrivial invariant-factor chains show up often."""
    blocks = []
    size = 0
    while size < n:
        k = rng.randint(1, n - size)
        lam = rng.choice([0, 1, -1, 2])
        jordan = rng.random() < 0.5
        blocks.append(RationalMatrix([[lam if i == j else (1 if jordan and j == i + 1 else 0)
                                       for j in range(k)] for i in range(k)]))
        size += k
    x = RationalMatrix.block_diag(blocks)
    g = random_invertible(rng, n)
    return x.conjugate_by(g)


def random_invertible(rng: random.Random, n: int) -> RationalMatrix:
    while True:
        g = RationalMatrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if g.det() != 0:
            return g


def random_group_element(rng: random.Random, p: int, n: int) -> GroupElement:
    """Invertible g whose entries include powers of p, so Ad(g) moves lattices."""
    while True:
        rows = [[rng.choice([0, 0, 1, -1, p, Fraction(1, p), 2]) for _ in range(n)]
                for _ in range(n)]
        m = RationalMatrix(rows)
        if m.det() != 0:
            return GroupElement(m)


def random_diagonal_element(rng: random.Random, p: int, n: int) -> GroupElement:
    return GroupElement.diagonal([random_padic_rational(rng, p, -1, 1) for _ in range(n)])
