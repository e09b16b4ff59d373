import random
from fractions import Fraction

import pytest

from drinfeld_delta.apoly import APoly
from drinfeld_delta.errors import InverseOfZeroError, PrecisionLossError
from drinfeld_delta.series import minimal_residue_degree, series_arith, series_ring


def _random_series(ring, rng, length=20):
    valuation = rng.randrange(-10, 10)
    coeffs = [rng.randrange(1, ring.field.order)] + [rng.randrange(ring.field.order) for _ in range(length - 1)]
    return ring.from_coefficients(valuation, coeffs, valuation + length)


def test_absolute_value_of_rational_function():
    ring = series_ring(3, 1, 1, 40)
    f3 = ring.base_field
    t = APoly.t(f3)
    x = ring.from_fraction(t**2, t**3 + APoly.constant(f3, 1))
    assert x.log_abs() == Fraction(-1)


def test_geometric_series():
    ring = series_ring(2, 1, 1, 25)
    x = (ring.one() - ring.s()).inverse()
    assert x.valuation == 0
    assert x.prec == 25
    assert list(x.coeffs) == [1] * 25


def test_inverse_roundtrip_to_precision():
    ring = series_ring(9, 2, 1, 60)
    rng = random.Random(11)
    for _ in range(20):
        x = _random_series(ring, rng, 30)
        one = x * x.inverse()
        assert one.equals_at_precision(ring.one())
        assert one.prec == 30


def test_absolute_value_is_multiplicative_and_ultrametric():
    ring = series_ring(3, 2, 2, 60)
    rng = random.Random(5)
    for _ in range(300):
        x = _random_series(ring, rng)
        y = _random_series(ring, rng)
        assert (x * y).valuation == x.valuation + y.valuation
        total = x + y
        if x.valuation != y.valuation:
            assert total.valuation == min(x.valuation, y.valuation)
        elif not total.is_zero():
            assert total.valuation >= x.valuation


def test_frobenius_is_additive_and_multiplicative():
    ring = series_ring(4, 3, 1, 60)
    rng = random.Random(2)
    for _ in range(50):
        x = _random_series(ring, rng)
        y = _random_series(ring, rng)
        assert (x + y).frobenius().equals_at_precision(x.frobenius() + y.frobenius())
        assert (x * y).frobenius().equals_at_precision(x.frobenius() * y.frobenius())
        assert x.frobenius_q().equals_at_precision(x**4)


def test_precision_tracking():
    ring = series_ring(2, 1, 1, 50)
    x = ring.from_coefficients(-3, [1, 1, 0, 1], 10)
    y = ring.from_coefficients(2, [1, 1], 6)
    assert (x + y).prec == 6
    assert (x * y).prec == -1 + 4
    assert x.frobenius().prec == 20
    assert x.frobenius().valuation == -6


def test_inverse_errors():
    ring = series_ring(2, 1, 1, 50)
    with pytest.raises(InverseOfZeroError):
        ring.zero().inverse()
    vanished = ring.from_coefficients(0, [0, 0, 0], 3)
    assert vanished.is_zero()
    with pytest.raises(PrecisionLossError):
        vanished.inverse()
    with pytest.raises(ArithmeticError):
        series_arith(vanished, None, "inv")


def test_mixed_ramification_is_refined():
    coarse = series_ring(2, 2, 1, 50)
    fine = series_ring(2, 3, 1, 50)
    total = coarse.t() + fine.s()
    assert total.ring.m == 6
    assert total.valuation == -6
    assert total.coefficient(2) == 1


def test_series_arith_dispatch():
    ring = series_ring(3, 1, 1, 30)
    t = ring.t()
    assert series_arith(t, t, "mul").valuation == -2
    assert series_arith(t, 3, "pow").valuation == -3
    assert series_arith(t, t, "sub").is_zero()
    assert series_arith(t, t, "div").equals_at_precision(ring.one())
    with pytest.raises(ValueError):
        series_arith(t, t, "mod")


@pytest.mark.parametrize("q, k", [(2, 1), (3, 2), (4, 1), (5, 2), (9, 2)])
def test_minimal_residue_degree(q, k):
    assert minimal_residue_degree(q) == k
