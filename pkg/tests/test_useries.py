import random

import pytest

from drinfeld_delta.apoly import APoly
from drinfeld_delta.errors import InverseOfZeroError
from drinfeld_delta.galois import field_of_order
from drinfeld_delta.symbolic import SymCoeff
from drinfeld_delta.useries import USeries, base_p_digits, charp_pow, naive_pow, useries_arith


def _random_series(field, rng, order):
    coeffs = tuple(
        APoly(field, tuple(rng.randrange(field.order) for _ in range(rng.randrange(3))))
        for _ in range(order)
    )
    return USeries(order, coeffs, field.p)


def test_base_p_digits():
    assert base_p_digits(0, 2) == []
    assert base_p_digits(6, 2) == [0, 1, 1]
    assert base_p_digits(16, 3) == [1, 2, 1]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_charp_pow_matches_naive_pow(q):
    field = field_of_order(q)
    rng = random.Random(q)
    for _ in range(50):
        x = _random_series(field, rng, rng.randrange(1, 12))
        exponent = rng.randrange(0, 40)
        assert charp_pow(x, exponent) == naive_pow(x, exponent)


def test_pow_of_zero_exponent_is_one():
    field = field_of_order(3)
    x = _random_series(field, random.Random(1), 6)
    one = charp_pow(x, 0)
    assert one.is_one()


def test_negative_exponent_rejected():
    field = field_of_order(2)
    x = _random_series(field, random.Random(2), 4)
    with pytest.raises(ValueError):
        charp_pow(x, -1)
    with pytest.raises(ValueError):
        naive_pow(x, -1)


def test_frobenius_is_p_th_power():
    field = field_of_order(3)
    rng = random.Random(3)
    for _ in range(10):
        x = _random_series(field, rng, 10)
        assert x.frobenius() == x * x * x


def test_inverse_of_unit_series():
    field = field_of_order(2)
    rank = 3
    zero = SymCoeff.zero(field, rank)
    terms = {
        0: SymCoeff.delta(field, rank, 2),
        1: SymCoeff.g(field, rank, 1),
        3: SymCoeff.from_apoly(APoly.t(field), rank),
    }
    x = USeries.from_terms(8, terms, zero, field.p)
    assert (x * x.inverse()).is_one()
    assert useries_arith(x, None, "inv") == x.inverse()


def test_inverse_requires_unit_constant_term():
    field = field_of_order(3)
    rank = 2
    zero = SymCoeff.zero(field, rank)
    t = SymCoeff.from_apoly(APoly.t(field), rank)
    with pytest.raises(InverseOfZeroError):
        USeries.from_terms(4, {1: t}, zero, field.p).inverse()
    with pytest.raises(InverseOfZeroError):
        USeries.from_terms(4, {0: t}, zero, field.p).inverse()


def test_arith_dispatch_and_truncation():
    field = field_of_order(2)
    rng = random.Random(4)
    x = _random_series(field, rng, 7)
    y = _random_series(field, rng, 5)
    assert useries_arith(x, y, "add").order == 5
    assert useries_arith(x, y, "sub") == x + y
    assert useries_arith(x, y, "mul") == x.truncate(5) * y
    assert useries_arith(x, None, "frobenius") == x.frobenius()
    with pytest.raises(ValueError):
        useries_arith(x, y, "div")


def test_order_must_match_coefficients():
    field = field_of_order(2)
    with pytest.raises(ValueError):
        USeries(0, (), field.p)
    with pytest.raises(ValueError):
        USeries(3, (APoly.constant(field, 1),), field.p)
