import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mirtrace.exactnum import ZetaExpression
from mirtrace.oracles import tate_shell_sum, tate_shell_sums
from mirtrace.sampling import random_schwartz
from mirtrace.schwartz import SchwartzFunction
from mirtrace.tate import (LocalZetaFactor, local_tate_integral, verify_local_functional_equation,
                           zeta_factor_to_expression)

F = Fraction
Z = ZetaExpression


def unit(p):
    return SchwartzFunction.unit_ball(p)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_unit_ball(p):
    value = local_tate_integral(unit(p))
    assert value == Z.geometric(1, 1, p)
    assert abs(value.evaluate(2) - tate_shell_sum(unit(p), 2)) < 1e-12


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_principal_units(p):
    phi = SchwartzFunction.ball(p, [1], [1])
    assert local_tate_integral(phi) == Z.constant(F(1, p - 1), p)
    # oracle: residues mod p^2 that are 1 mod p, against all units
    units = [u for u in range(p * p) if u % p]
    assert F(sum(1 for u in units if u % p == 1), len(units)) == F(1, p - 1)


@pytest.mark.parametrize("p", [2, 3])
def test_maximal_ideal(p):
    phi = SchwartzFunction.ball(p, [0], [1])
    value = local_tate_integral(phi)
    assert value == Z.geometric(1, 1, p, start=1)
    for s in (0.5, 2.0):
        assert abs(value.evaluate(s) - tate_shell_sum(phi, s)) < 1e-12


def test_zero_function():
    assert local_tate_integral(SchwartzFunction.zero(3, 1)).is_zero()


@pytest.mark.parametrize("p,phi2", [
    (3, SchwartzFunction.unit_ball(3)),
    (3, SchwartzFunction.ball(3, [0], [1])),
    (2, SchwartzFunction.ball(2, [0], [0], twist=[F(1, 2)])),
    (5, SchwartzFunction.ball(5, [0], [0], twist=[F(1, 5)])),
])
def test_functional_equation_examples(p, phi2):
    phi1 = unit(p)
    holds, left, right = verify_local_functional_equation(phi1, phi2)
    assert holds and bool(verify_local_functional_equation(phi1, phi2))
    for s in (0.3, 0.7):
        numeric = tate_shell_sum(phi1, s) * tate_shell_sum(phi2.fourier(), 1 - s)
        assert abs(left.evaluate(s) - numeric) < 1e-9
        numeric = tate_shell_sum(phi1.fourier(), 1 - s) * tate_shell_sum(phi2, s)
        assert abs(right.evaluate(s) - numeric) < 1e-9


@pytest.mark.parametrize("factor,q,expected", [
    (LocalZetaFactor(1, 1, 0), 2, Z.geometric(1, 1, 2)),
    (LocalZetaFactor(2, 1, 0), 2, Z.geometric(1, 2, 2)),
    (LocalZetaFactor(1, 2, 1), 3, Z.geometric(3, 2, 3)),
])
def test_zeta_factor_to_expression(factor, q, expected):
    assert zeta_factor_to_expression(factor, q) == expected


def test_zeta_factor_value_and_symbol():
    # zeta(2s - 1) locally is 1 / (1 - q^{1 - 2s})
    expr = zeta_factor_to_expression(LocalZetaFactor(1, 2, 1), 3)
    assert abs(expr.evaluate(0.8) - 1 / (1 - 3 ** (1 - 1.6))) < 1e-12
    assert LocalZetaFactor(1, 2, 1).symbol() == "ζ_F(2s-1)"
    assert LocalZetaFactor.from_json(LocalZetaFactor(2, 1, 0).to_json()) == LocalZetaFactor(2, 1, 0)
    with pytest.raises(ValueError):
        LocalZetaFactor(0, 1, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_denominator_is_power_of_one_minus_t(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5])
    phi = random_schwartz(rng, p, 1)
    value = local_tate_integral(phi)
    assert all(c == 1 and k == 1 for c, k in value.den)
    assert len(value.den) <= len(phi.terms)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_functional_equation_and_numeric_agreement(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3, 5])
    phi1, phi2 = random_schwartz(rng, p, 1), random_schwartz(rng, p, 1)
    assert verify_local_functional_equation(phi1, phi2).holds
    points = (0.25, 0.5, 0.75)
    exact = local_tate_integral(phi1)
    for s, approx in zip(points, tate_shell_sums(phi1, points)):
        assert abs(exact.evaluate(s) - approx) < 1e-9
