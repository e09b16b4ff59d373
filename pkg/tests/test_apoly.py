import random

import pytest

from drinfeld_delta.apoly import APoly, apoly_iter_all, apoly_monic_iter, apoly_monic_of_degree
from drinfeld_delta.errors import InverseOfZeroError
from drinfeld_delta.galois import field_of_order


def _random_apoly(field, rng, degree):
    return APoly(field, tuple(rng.randrange(field.order) for _ in range(degree + 1)))


def test_monic_iter_q2_d1():
    f2 = field_of_order(2)
    t = APoly.t(f2)
    one = APoly.constant(f2, 1)
    assert list(apoly_monic_iter(f2, 1)) == [one, t, t + one]


def test_monic_counts():
    assert sum(1 for _ in apoly_monic_of_degree(field_of_order(3), 2)) == 9
    assert sum(1 for _ in apoly_monic_iter(field_of_order(2), 2)) == 7


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_monic_iter_complete_and_duplicate_free(q, d):
    field = field_of_order(q)
    monics = list(apoly_monic_iter(field, d))
    assert len(set(monics)) == len(monics) == sum(q**j for j in range(d + 1))
    assert all(a.is_monic() and a.degree <= d for a in monics)
    assert [a.degree for a in monics] == sorted(a.degree for a in monics)
    expected = {a for a in apoly_iter_all(field, d) if a.is_monic()}
    assert set(monics) == expected


def test_monic_iter_rejects_negative_degree():
    with pytest.raises(ValueError):
        list(apoly_monic_iter(field_of_order(2), -1))


def test_iter_all_starts_with_zero():
    polys = list(apoly_iter_all(field_of_order(3), 1))
    assert polys[0].is_zero()
    assert len(polys) == 9


def test_ring_operations():
    f3 = field_of_order(3)
    t = APoly.t(f3)
    one = APoly.constant(f3, 1)
    assert (t + one) * (t - one) == t**2 - one
    assert (t + one) ** 3 == t**3 + one
    assert (t + one).frobenius() == (t + one) ** 3
    assert str(t**2 + 2 * t + one) == "t^2 + 2*t + 1"
    assert APoly(f3).degree == -1


def test_divmod():
    field = field_of_order(9)
    rng = random.Random(3)
    for _ in range(30):
        a = _random_apoly(field, rng, 6)
        b = _random_apoly(field, rng, 3)
        if b.is_zero():
            continue
        quot, rem = a.divmod(b)
        assert quot * b + rem == a
        assert rem.degree < b.degree
    with pytest.raises(InverseOfZeroError):
        APoly.t(field).divmod(APoly(field))
