import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mirtrace.canonical import (RationalMatrix, RationalPoly, char_poly, char_poly_faddeev,
                                class_datum, classify, companion, discriminant,
                                factor_over_rationals, frobenius_normal_form, invariant_factors,
                                is_regular_pair, smith_form)
from mirtrace.errors import DegreeBoundError
from mirtrace.partitions import Partition
from mirtrace.sampling import random_invertible, random_matrix, random_structured_matrix

F = Fraction
M = RationalMatrix
t = RationalPoly.x()



def test_char_poly_examples():
    assert char_poly(M.zeros(2)) == t ** 2
    d, delta = F(3), F(5)
    assert char_poly(M([[d, delta], [1, d]])) == t ** 2 - t * (2 * d) + (d * d - delta)


def test_char_poly_against_sympy():
    rng = random.Random(3)
    for n in range(1, 6):
        x = random_matrix(rng, n)
        expected = sympy.Matrix(n, n, lambda i, j: sympy.Rational(str(x[i, j]))).charpoly().all_coeffs()
        assert char_poly(x).coeffs == tuple(F(str(c)) for c in reversed(expected))
        assert char_poly(x) == char_poly_faddeev(x)


def test_companion_examples():
    assert companion(t - 4) == M([[4]])
    a1, a2 = F(2), F(-7)
    assert companion(t ** 2 - t * a1 - a2) == M([[a1, a2], [1, 0]])
    with pytest.raises(ValueError):
        companion(t * 2 + 1)


def test_companion_round_trip():
    rng = random.Random(7)
    for _ in range(50):
        deg = rng.randint(1, 6)
        p = RationalPoly([F(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(deg)] + [1])
        assert char_poly(companion(p)) == p
        assert invariant_factors(companion(p)) == [p]


def test_invariant_factor_examples():
    d = F(2)
    assert invariant_factors(M.diag([d, d])) == [t - d, t - d]
    assert invariant_factors(M([[d, 1], [0, d]])) == [(t - d) ** 2]


def test_smith_form_of_jordan_block():
    # tI - X = [[t-2, -1], [0, t-2]]: gcd of entries is 1, determinant (t-2)^2
    diag = smith_form(M([[2, 1], [0, 2]])).diagonal
    assert list(diag) == [RationalPoly.constant(1), (t - 2) ** 2]


def test_frobenius_examples():
    x = M.diag([1, 2])
    form = frobenius_normal_form(x)
    assert form.form == companion(t ** 2 - t * 3 + 2) == M([[3, -2], [1, 0]])
    c = companion(t ** 3 - t * 2 + 5)
    assert frobenius_normal_form(c).form == c


def test_frobenius_block_layout():
    # invariant factors (t-1) | (t-1)(t-2): smaller block first
    x = M.diag([1, 1, 2])
    form = frobenius_normal_form(x)
    assert form.form == M.block_diag([companion(t - 1), companion((t - 1) * (t - 2))])
    s = form.certificate
    assert s.det() != 0 and x @ s == s @ form.form


def test_frobenius_conjugation_invariance():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 5)
        x = random_structured_matrix(rng, n)
        g = random_invertible(rng, n)
        assert frobenius_normal_form(x.conjugate_by(g)).form == frobenius_normal_form(x).form


def test_regular_pair_examples():
    p = t ** 3 - t + 2
    assert is_regular_pair(companion(p), [0, 0, 1])
    assert not is_regular_pair(companion(p), [0, 0, 0])
    assert not is_regular_pair(M.identity(3), [1, 2, 3])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_regular_pair_torsor_invariance(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    x = random_matrix(rng, n)
    v = [rng.randint(-2, 2) for _ in range(n)]
    g = random_invertible(rng, n)
    assert is_regular_pair(x, v) == is_regular_pair(x.conjugate_by(g), g.rapply(v))


def test_factor_examples():
    assert factor_over_rationals(t ** 2 - 1) == [(t - 1, 1), (t + 1, 1)] or \
        factor_over_rationals(t ** 2 - 1) == [(t + 1, 1), (t - 1, 1)]
    assert factor_over_rationals(t ** 2 + 1) == [(t ** 2 + 1, 1)]
    p = (t ** 2 - 2) ** 2 * (t - 3)
    factors = factor_over_rationals(p)
    assert sorted(factors, key=lambda f: f[0].degree) == [(t - 3, 1), (t ** 2 - 2, 2)]


def _product(factors):
    out = RationalPoly.constant(1)
    for q, m in factors:
        out = out * q ** m
    return out


@pytest.mark.parametrize("p", [
    t ** 3 - 1,
    (t ** 4 + t + 1) * (t ** 4 - 3 * t ** 2 + 5),
    (t ** 2 + 1) ** 2 * (t ** 3 - 2) * t,
    t ** 8 - 1,
    (t * 2 - 1) * (t * 3 + 1) * (t ** 2 + t + 1) * (t ** 3 - t - 1) * F(1, 6),
])
def test_factor_against_sympy(p):
    factors = factor_over_rationals(p)
    assert _product(factors) == p
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(str(c)) * x ** i for i, c in enumerate(p.coeffs))
    _, expected = sympy.factor_list(expr)
    assert sorted((q.degree, m) for q, m in factors) == \
        sorted((sympy.degree(q, x), m) for q, m in expected)


def test_degree_bound():
    with pytest.raises(DegreeBoundError):
        factor_over_rationals(t ** 9 + 1)
    # t (t - 1)(t + 1)(t^2 + 1)(t^4 + 1)
    assert len(factor_over_rationals(t ** 9 - t, degree_bound=9)) == 5


def test_class_datum_examples():
    d = F(3)
    (comp,) = class_datum(M.diag([d, d])).components
    assert comp.poly == (-d, 1) and comp.partition == Partition((1, 1))
    (comp,) = class_datum(M([[d, 1], [0, d]])).components
    assert comp.partition == Partition((2,))
    (comp,) = class_datum(companion((t ** 2 + 1) ** 2)).components
    assert comp.poly == (1, 0, 1) and comp.partition == Partition((2,))


def test_classify_examples():
    d = F(3)
    p = t ** 3 - 2
    cls = classify(p, class_datum(companion(p)))
    assert cls.elliptic and cls.regular and cls.semisimple and cls.label == "elliptic"
    x = M.diag([d, d])
    cls = classify(char_poly(x), class_datum(x))
    assert cls.semisimple and not cls.regular
    x = M([[d, 1], [0, d]])
    cls = classify(char_poly(x), class_datum(x))
    assert cls.regular and not cls.semisimple
    cubic = companion(t ** 3 - 1)
    assert classify(char_poly(cubic), class_datum(cubic)).label == "regular-semisimple"


def test_classify_rejects_inconsistent_datum():
    with pytest.raises(ValueError):
        classify(t ** 2 - 1, class_datum(M.diag([1, 1])))


@pytest.mark.parametrize("p,expected", [
    (t ** 2 - 5, 20), ((t - 1) ** 2, 0), (t ** 2 + t + 1, -3), (t ** 3 - 2, -108)])
def test_discriminant(p, expected):
    assert discriminant(p) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_chain_certificate_and_invariance(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    x = random_structured_matrix(rng, n) if rng.random() < 0.5 else random_matrix(rng, n)
    factors = invariant_factors(x)
    assert all(a.divides(b) for a, b in zip(factors, factors[1:]))
    assert _product((f, 1) for f in factors) == char_poly(x)
    form = frobenius_normal_form(x)
    assert form.certificate.inverse() @ x @ form.certificate == form.form
    g = random_invertible(rng, n)
    datum = class_datum(x)
    assert class_datum(x.conjugate_by(g)) == datum
    cls = classify(char_poly(x), datum)
    assert cls.regular_semisimple == (discriminant(char_poly(x)) != 0)
