import random

import pytest

from drinfeld_delta.errors import InverseOfZeroError
from drinfeld_delta.galois import (
    embedding,
    field_of_order,
    fq_arith,
    galois_field,
    prime_power_decomposition,
)


def test_prime_field_examples():
    f3 = field_of_order(3)
    assert fq_arith(f3, 2, 2, "add") == 1
    assert fq_arith(f3, 2, None, "inv") == 2
    assert fq_arith(f3, 2, 3, "pow") == 2


def test_f4_defining_relation():
    f4 = field_of_order(4)
    assert f4.modulus == (1, 1, 1)
    # x * x = x + 1, with x encoded as 2 and x + 1 as 3
    assert f4.mul(2, 2) == 3


def test_inverse_of_zero_raises():
    with pytest.raises(InverseOfZeroError):
        field_of_order(9).inv(0)
    with pytest.raises(ZeroDivisionError):
        fq_arith(field_of_order(2), 0, None, "inv")


def test_unknown_operation():
    with pytest.raises(ValueError):
        fq_arith(field_of_order(2), 1, 1, "xor")


@pytest.mark.parametrize("q, expected", [(2, (2, 1)), (9, (3, 2)), (16, (2, 4)), (125, (5, 3))])
def test_prime_power_decomposition(q, expected):
    assert prime_power_decomposition(q) == expected


@pytest.mark.parametrize("q", [0, 1, 6, 12, 100])
def test_prime_power_decomposition_rejects(q):
    with pytest.raises(ValueError):
        prime_power_decomposition(q)


@pytest.mark.parametrize("q", [2, 3, 4, 8, 9, 25])
def test_field_axioms(q):
    field = field_of_order(q)
    rng = random.Random(q)
    for _ in range(200):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert field.add(a, field.neg(a)) == 0
        assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
        assert field.frobenius(field.add(a, b)) == field.add(field.frobenius(a), field.frobenius(b))
        if a:
            assert field.mul(a, field.inv(a)) == 1
            assert field.pow(a, q - 1) == 1


@pytest.mark.parametrize("q", [3, 5, 9])
def test_convolve_matches_schoolbook(q):
    field = field_of_order(q)
    rng = random.Random(7)
    a = [rng.randrange(q) for _ in range(13)]
    b = [rng.randrange(q) for _ in range(9)]
    expected = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            expected[i + j] = field.add(expected[i + j], field.mul(x, y))
    assert field.convolve(a, b, len(expected)) == expected
    assert field.convolve(a, b, 5) == expected[:5]


def test_embedding_is_a_homomorphism():
    base = galois_field(3, 2)
    ext = galois_field(3, 4)
    table = embedding(base, ext)
    assert len(set(table)) == base.order
    for a in base.elements():
        for b in base.elements():
            assert table[base.add(a, b)] == ext.add(table[a], table[b])
            assert table[base.mul(a, b)] == ext.mul(table[a], table[b])


def test_embedding_requires_subfield():
    with pytest.raises(ValueError):
        embedding(galois_field(2, 2), galois_field(2, 3))
