import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mirtrace.errors import MismatchedPrimeError, PoleError
from mirtrace.exactnum import (CyclotomicNumber, LaurentPoly, ZetaExpression, format_rational,
                               parse_rational, zeta_expr_equal, zeta_expr_eval)

Z = ZetaExpression


def zeta(p, level, e=1):
    return CyclotomicNumber.root_of_unity(p, level, e)


# -- cyclotomic numbers ----------------------------------------------------------

def test_zeta4_squared_is_minus_one():
    assert zeta(2, 2) * zeta(2, 2) == CyclotomicNumber.rational(-1, 2)


def test_additive_identity():
    a = zeta(3, 2, 4) + Fraction(2, 7)
    assert a + CyclotomicNumber.zero(3) == a


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_sum_of_pth_roots_vanishes(p):
    total = sum((zeta(p, 1, e) for e in range(p)), CyclotomicNumber.zero(p))
    assert total == 0
    # oracle: the same sum in floating point
    assert abs(sum(cmath.exp(2j * math.pi * e / p) for e in range(p))) < 1e-12


def test_level_raising_embedding():
    # zeta_{p^M} = zeta_{p^{M+1}}^p
    assert zeta(3, 1) == zeta(3, 2, 3)
    assert zeta(2, 3, 4) == zeta(2, 1)
    assert zeta(5, 2, 25) == 1


def test_normalised_to_minimal_level():
    x = zeta(3, 3, 9) * zeta(3, 3, 18)
    assert x.level == 0 and x == 1


def test_mismatched_primes_raise():
    with pytest.raises(MismatchedPrimeError):
        zeta(2, 2) + zeta(3, 1)
    # rationals mix with anything
    assert (CyclotomicNumber.rational(2, 2) + zeta(3, 1)).p == 3


def test_inverse_and_division():
    x = zeta(5, 1) + 2
    assert x * x.inverse() == 1
    assert (x / x) == 1
    with pytest.raises(ZeroDivisionError):
        CyclotomicNumber.zero(5).inverse()


def test_conjugate_matches_complex():
    x = zeta(3, 2, 2) + Fraction(1, 3) * zeta(3, 2, 5)
    assert abs(x.conjugate().to_complex() - x.to_complex().conjugate()) < 1e-12


def test_json_roundtrip():
    x = zeta(2, 3, 3) * Fraction(-5, 4) + 1
    assert CyclotomicNumber.from_json(x.to_json()) == x
    assert set(x.to_json()) == {"p", "M", "coeffs"}


def test_rational_parsing():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert format_rational(Fraction(-4, 2)) == "-2"


elements = st.builds(
    lambda coeffs, level: CyclotomicNumber(3, level, dict(enumerate(coeffs))),
    st.lists(st.builds(Fraction, st.integers(-20, 20), st.integers(1, 5)), max_size=9),
    st.integers(0, 2))


@settings(max_examples=60, deadline=None)
@given(elements, elements, elements)
def test_commutative_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(elements, elements)
def test_complex_embedding_is_a_homomorphism(a, b):
    assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9
    assert abs((a + b).to_complex() - a.to_complex() - b.to_complex()) < 1e-9


@settings(max_examples=40, deadline=None)
@given(elements)
def test_reduction_idempotent(a):
    again = CyclotomicNumber(a.p, a.level, dict(a.coeffs))
    assert again == a and again.coeffs == a.coeffs


# -- Laurent polynomials and zeta expressions ----------------------------------------

def test_laurent_drops_zero_terms():
    poly = LaurentPoly({0: 1, 2: 0, -1: 3}) + LaurentPoly({0: -1})
    assert poly.terms == ((-1, CyclotomicNumber.rational(3)),)


def test_sum_with_common_denominator():
    one = Z.geometric(1, 1, 2)
    assert one + one.shift(1) == Z(LaurentPoly({0: 1, 1: 1}), [(1, 1)], 2)


def test_multiplicative_identity():
    a = Z.geometric(3, 2, 3, numerator=5, start=-1)
    assert a * 1 == a


def test_product_keeps_factored_denominator():
    q = 5
    prod = Z.geometric(1, 1, q) * Z.geometric(q, 1, q)
    assert sorted((c.to_rational(), k) for c, k in prod.den) == [(1, 1), (q, 1)]


def test_equality_cancels_factors():
    assert zeta_expr_equal(Z.geometric(1, 1, 2), Z(LaurentPoly({0: 1, 1: 1}), [(1, 2)], 2))
    assert Z.geometric(1, 1, 2) != Z.geometric(2, 1, 2)


def test_equality_well_defined_under_extra_factor():
    a = Z.geometric(1, 1, 3)
    b = Z(LaurentPoly({0: 1, 1: -3}), [(1, 1), (3, 1)], 3)
    assert a == b


@pytest.mark.parametrize("expr,s,q,expected", [
    (Z.geometric(1, 1, 2), 2, 2, 4 / 3),
    (Z.monomial(1, 1, 3), 1, 3, 1 / 3),
    (Z.geometric(1, 1, 4) - Z.geometric(4, 1, 4), 0.5, 4, 3.0),
])
def test_evaluation(expr, s, q, expected):
    assert abs(zeta_expr_eval(expr, s, q) - expected) < 1e-12


def test_pole_error():
    with pytest.raises(PoleError):
        Z.geometric(1, 1, 2).evaluate(0)


def test_reflect_is_involution_and_matches_substitution():
    a = Z.geometric(1, 1, 3, numerator=2, start=1) + Z.geometric(3, 2, 3)
    assert a.reflect().reflect() == a
    s = 0.3
    assert abs(a.reflect().evaluate(s) - a.evaluate(1 - s)) < 1e-12


def test_simplify_and_as_laurent():
    a = Z(LaurentPoly({0: 1, 2: -1}), [(1, 1)], 2)
    assert a.as_laurent() == LaurentPoly({0: 1, 1: 1})
    assert Z.geometric(1, 1, 2).as_laurent() is None


def test_zeta_json_roundtrip():
    a = Z.geometric(zeta(2, 2), 1, 2, numerator=Fraction(1, 3), start=-2)
    data = a.to_json()
    assert set(data) == {"q", "num", "den"}
    assert Z.from_json(data) == a


def test_str_single_factor():
    assert str(Z.geometric(1, 1, 2)) == "1 / (1 - t)"


exprs = st.builds(
    lambda c, k, n, e: Z.geometric(c, k, 3, numerator=n, start=e),
    st.sampled_from([1, 3, 9, Fraction(1, 3)]), st.integers(1, 3),
    st.integers(-4, 4).filter(bool), st.integers(-2, 2))


@settings(max_examples=50, deadline=None)
@given(exprs, exprs, st.sampled_from([0.21, 0.37, 0.55, 0.71, 0.9]))
def test_equality_agrees_with_evaluation(a, b, s):
    total = a + b
    assert abs(total.evaluate(s) - a.evaluate(s) - b.evaluate(s)) < 1e-9
    assert abs((a * b).evaluate(s) - a.evaluate(s) * b.evaluate(s)) < 1e-9
    assert (a + b) - b == a
