"""Tests for monomial.py"""

from fractions import Fraction
from itertools import combinations

import pytest

from monores_core.errors import MalformedInputError, UnsupportedReductionError
from monores_core.monomial import (
    ChartState,
    DivisorLedger,
    ExponentVector,
    build_state,
    gcd_reduce,
    order_at,
    singular_locus,
    split_MI,
)


def test_order_at_examples():
    """Order is the sum of exponents of the vanishing variables."""
    assert order_at(build_state([2, 3], 2), {1, 2}) == 5
    assert order_at(build_state([2, 3], 2), set()) == 0
    assert order_at(build_state([5, 4, 1], 4), {1, 3}) == 6


def test_order_at_unknown_variable():
    """Indices outside 1..n are rejected."""
    with pytest.raises(MalformedInputError):
        order_at(build_state([2, 3], 2), {3})


def test_order_is_additive():
    """ord(S1 ∪ S2) + ord(S1 ∩ S2) = ord(S1) + ord(S2)."""
    state = build_state([5, 4, 1], 4)
    subsets = [frozenset(c) for k in range(4) for c in combinations([1, 2, 3], k)]
    for s1 in subsets:
        for s2 in subsets:
            assert order_at(state, s1 | s2) + order_at(state, s1 & s2) == order_at(
                state, s1
            ) + order_at(state, s2)


def test_singular_locus_examples():
    """Minimal singular strata by brute force."""
    assert singular_locus(build_state([1, 1, 1], 2)) == [
        frozenset({1, 2}),
        frozenset({1, 3}),
        frozenset({2, 3}),
    ]
    assert singular_locus(build_state([3], 3)) == [frozenset({1})]
    assert singular_locus(build_state([2, 3], 7)) == []


def test_gcd_reduce_examples():
    """Exponents and critical value divided by their gcd."""
    reduced, k = gcd_reduce(build_state([2, 2], 2))
    assert k == 2
    assert reduced.exponents == ExponentVector.from_list([1, 1])
    assert reduced.critical == 1

    same, k = gcd_reduce(build_state([1, 2, 3], 3))
    assert k == 1
    assert same == build_state([1, 2, 3], 3)

    reduced, k = gcd_reduce(build_state([4, 8], 6))
    assert k == 2
    assert reduced.exponents == ExponentVector.from_list([2, 4])
    assert reduced.critical == 3


def test_gcd_reduce_preserves_singular_locus():
    """Sing of the reduced problem equals Sing of the original."""
    for a, c in [([2, 2], 2), ([4, 8], 6), ([6, 3, 9], 6), ([2, 4, 6], 4)]:
        state = build_state(a, c)
        reduced, _ = gcd_reduce(state)
        assert singular_locus(reduced) == singular_locus(state)


def test_gcd_reduce_rejects_rational_exponents():
    """Rational exponents cannot be reduced."""
    state = ChartState(
        2, 1, ExponentVector.of({1: Fraction(3, 2), 2: 1}), DivisorLedger.empty(2)
    )
    with pytest.raises(UnsupportedReductionError):
        gcd_reduce(state)


def test_split_mi_examples():
    """M is the exceptional part of J and I the rest."""
    M, I = split_MI(build_state([2, 3], 2))
    assert M.is_trivial
    assert I == ExponentVector.from_list([2, 3])

    M, I = split_MI(build_state([3, 3], 2, exceptional=[1]))
    assert M == ExponentVector.of({1: 3})
    assert I == ExponentVector.of({2: 3})

    M, I = split_MI(build_state([1, 1], 2, exceptional=[1, 2]))
    assert I.is_trivial
    assert M == ExponentVector.from_list([1, 1])


def test_split_mi_parts_are_disjoint_and_sum_to_j():
    """The two parts live on disjoint variables and add back up to J."""
    state = build_state([4, 1, 2], 2, exceptional=[2, 3])
    M, I = split_MI(state)
    assert not (M.support & I.support)
    assert M + I == state.exponents


def test_exponent_vector_canonical_form():
    """Zero entries vanish and normalizing twice changes nothing."""
    vector = ExponentVector(((3, 0), (2, 5), (1, Fraction(1, 2))))
    assert vector.entries == ((1, Fraction(1, 2)), (2, Fraction(5)))
    assert ExponentVector(vector.entries) == vector
    assert vector.monomial() == "X1^(1/2)*X2^5"


def test_exponent_vector_rejects_bad_entries():
    """Negative exponents, duplicate indices and floats are malformed."""
    with pytest.raises(MalformedInputError):
        ExponentVector(((1, -1),))
    with pytest.raises(MalformedInputError):
        ExponentVector(((1, 1), (1, 2)))
    with pytest.raises(MalformedInputError):
        ExponentVector(((1, 0.5),))


def test_ledger_levels_must_be_disjoint():
    """A divisor cannot sit in two levels."""
    levels = (
        (frozenset({1}), ExponentVector()),
        (frozenset({1}), ExponentVector()),
    )
    with pytest.raises(MalformedInputError):
        DivisorLedger(levels)


def test_ledger_divisors_live_on_exceptional_variables():
    """D_i may only use exceptional variables."""
    levels = (
        (frozenset(), ExponentVector()),
        (frozenset({1}), ExponentVector.of({2: 1})),
    )
    with pytest.raises(MalformedInputError):
        DivisorLedger(levels)


def test_chart_state_json_round_trip():
    """Rationals travel as decimal-string pairs and come back exact."""
    levels = (
        (frozenset({2}), ExponentVector()),
        (frozenset({1}), ExponentVector.of({1: Fraction(7, 3)})),
    )
    state = ChartState(
        2, 2, ExponentVector.of({1: Fraction(7, 3), 2: 4}), DivisorLedger(levels), depth=3
    )
    payload = state.to_json()
    assert payload["exponents"] == [[1, ["7", "3"]], [2, ["4", "1"]]]
    assert payload["depth"] == 3
    assert ChartState.from_json(payload) == state
    assert ChartState.from_json(payload).to_json() == payload


def test_chart_state_rejects_unknown_variables():
    """Exponents on variables beyond n are malformed."""
    with pytest.raises(MalformedInputError):
        ChartState(1, 1, ExponentVector.of({2: 1}), DivisorLedger.empty(1))
