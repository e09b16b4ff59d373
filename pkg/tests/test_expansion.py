import json

import pytest

from drinfeld_delta.apoly import APoly
from drinfeld_delta.expansion import (
    ExpansionDocument,
    degree_bound,
    delta_expansion,
    expansion_schema,
    expansion_schema_file,
    factor_valuation,
    fa_useries,
)
from drinfeld_delta.galois import field_of_order
from drinfeld_delta.symbolic import SymCoeff


@pytest.mark.parametrize(
    "q, rank, order, expected",
    [(3, 2, 20, 3), (2, 2, 2, 1), (2, 2, 4, 2), (2, 3, 20, 2), (3, 3, 20, 1), (2, 2, 1, 0)],
)
def test_degree_bound(q, rank, order, expected):
    assert degree_bound(order, q, rank) == expected


def test_degree_bound_covers_every_dropped_factor():
    for q, rank in [(2, 2), (3, 2), (2, 3), (4, 2)]:
        for order in range(1, 80):
            D = degree_bound(order, q, rank)
            assert factor_valuation(q, rank, D + 1) >= order
            if D:
                assert factor_valuation(q, rank, D) < order


def test_degree_bound_rejects_empty_order():
    with pytest.raises(ValueError):
        degree_bound(0, 2, 2)


def test_small_expansion_q2_rank2():
    field = field_of_order(2)
    t = APoly.t(field)
    one = APoly.constant(field, 1)
    result = delta_expansion(2, 2, 4)
    expected = [APoly(field), one, one, t * t + t + one]
    assert [c.scalar() for c in result.coefficients] == expected
    assert result.degree == 2
    assert result.factor_count == 6
    assert result.factor_exponent == 3


@pytest.mark.parametrize("q, rank, order", [(2, 2, 30), (3, 2, 30), (4, 2, 20), (2, 3, 15)])
def test_leading_term_is_minus_delta_prime_to_the_q(q, rank, order):
    field = field_of_order(q)
    result = delta_expansion(q, rank, order)
    for n in range(q - 1):
        assert result.coefficient(n).is_zero()
    assert result.coefficient(q - 1) == SymCoeff.delta(field, rank, q, field.neg(1))


@pytest.mark.parametrize("q, rank, order", [(3, 2, 40), (4, 2, 30), (3, 3, 15)])
def test_support_is_in_multiples_of_q_minus_one(q, rank, order):
    result = delta_expansion(q, rank, order)
    assert result.nonzero()
    for n, _ in result.nonzero():
        assert n % (q - 1) == 0


@pytest.mark.parametrize("q, rank, order", [(2, 2, 30), (3, 2, 30), (4, 2, 20), (2, 3, 15), (3, 3, 15)])
def test_monic_and_full_modes_agree(q, rank, order):
    monic = delta_expansion(q, rank, order, "monic")
    full = delta_expansion(q, rank, order, "full")
    assert monic.coefficients == full.coefficients
    assert full.factor_count == (q - 1) * monic.factor_count
    assert monic.factor_exponent == (q - 1) * full.factor_exponent


def test_charp_and_naive_exponentiation_agree():
    assert delta_expansion(3, 2, 40, use_charp=True) == delta_expansion(3, 2, 40, use_charp=False)
    assert delta_expansion(2, 3, 15, use_charp=True) == delta_expansion(2, 3, 15, use_charp=False)


def test_extra_degree_changes_nothing():
    exact = delta_expansion(2, 2, 20)
    padded = delta_expansion(2, 2, 20, degree_override=exact.degree + 1)
    assert padded.coefficients == exact.coefficients
    assert padded.factor_count > exact.factor_count


def test_degree_override_zero_keeps_only_the_prefactor():
    result = delta_expansion(3, 2, 10, degree_override=0)
    assert [n for n, _ in result.nonzero()] == [2]
    assert result.factor_count == 0
    assert result.factor_exponent == 0


def test_order_at_most_shift_gives_zero_series():
    result = delta_expansion(3, 2, 2)
    assert not result.nonzero()


def test_fa_useries_starts_with_one():
    field = field_of_order(3)
    t = APoly.t(field)
    x = fa_useries(t, 2, 5)
    assert x.coeffs[0] == SymCoeff.constant(field, 2, 1)
    assert x.support() == [0, 2]
    assert x.coeffs[2] == SymCoeff.from_apoly(t, 2)


@pytest.mark.parametrize("rank, mode", [(1, "monic"), (2, "primes")])
def test_invalid_arguments(rank, mode):
    with pytest.raises(ValueError):
        delta_expansion(3, rank, 10, mode)


def test_negative_degree_override_rejected():
    with pytest.raises(ValueError):
        delta_expansion(3, 2, 10, degree_override=-1)


def test_document_rank_two():
    document = delta_expansion(3, 2, 50).to_document()
    payload = document.model_dump(mode="json")
    assert payload["schema_version"] == 1
    assert payload["prefactor_shift"] == 2
    assert payload["D"] == degree_bound(50, 3, 2)
    assert payload["coefficients"][0] == {"n": 2, "value": [2]}
    assert payload["meta"]["field_modulus"] == list(field_of_order(3).modulus)
    assert payload["meta"]["min_delta_exponent"] is None
    assert ExpansionDocument.model_validate(payload) == document


def test_document_rank_three_lists_terms():
    result = delta_expansion(2, 3, 12)
    payload = result.to_document().model_dump(mode="json")
    first = payload["coefficients"][0]
    assert first["n"] == 1
    assert first["value"] == [{"g_exponents": [0], "delta_exponent": 2, "scalar": [1]}]
    assert payload["meta"]["min_delta_exponent"] == result.min_delta_exponent()


def test_render_text():
    text = delta_expansion(2, 2, 4).render_text()
    lines = text.splitlines()
    assert lines[0] == "Delta u-expansion: q=2 r=2 N=4 mode=monic D=2"
    assert lines[1] == "u^1: (1)"
    assert lines[-2] == "u^3: (t^2 + t + 1)"
    assert lines[-1] == "+ O(u^4)"


def test_schema_file_matches_model():
    generated = expansion_schema()
    with expansion_schema_file().open("r", encoding="utf-8") as handle:
        stored = json.load(handle)
    assert set(stored["properties"]) == set(generated["properties"])
    assert set(stored["required"]) == set(generated["required"])
    assert set(stored["$defs"]) == set(generated["$defs"])
    for name in stored["$defs"]:
        assert set(stored["$defs"][name]["required"]) == set(generated["$defs"][name]["required"])
