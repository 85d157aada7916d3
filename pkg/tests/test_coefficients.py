from nudd.exceptions import *
from nudd.constants import *
from nudd.coefficients import (ErrorWord, coefficient, compositions,
        oracle_coefficient, outer_decomposition, random_word,
        vanishing_order, vanishing_profile, word_count, zero_threshold)
from nudd.counter import EvaluationCounter
from nudd.errortypes import all_vectors
from nudd.mpcore import tolerance
from nudd.predictor import predict_order
from nudd.schedule import NuddSpec
from itertools import product
import mpmath
import pytest


def test_empty_word_is_one():
    assert coefficient(NuddSpec((2, 3)), ErrorWord(())) == 1


@pytest.mark.parametrize('n', [1, 2, 3, 4])
def test_trivial_word(n):
    spec = NuddSpec((2, 2))
    word = ErrorWord([(0, 0)] * n)
    expected = 1 / mpmath.factorial(n)
    assert abs(coefficient(spec, word) - expected) < tolerance(5)


def test_single_pulse_words():
    spec = NuddSpec((1,))
    assert abs(coefficient(spec, ErrorWord.parse('0 1')) + mpmath.mpf(1) / 4) \
            < tolerance(5)
    assert abs(coefficient(spec, ErrorWord.parse('1 0')) - mpmath.mpf(1) / 4) \
            < tolerance(5)
    assert abs(coefficient(spec, ErrorWord.parse('1'))) < tolerance(5)


def test_word_parsing():
    word = ErrorWord.parse('10 01 11')
    assert word.n == 3
    assert word.ell == 2
    assert word.resultant() == (0, 0)
    assert str(word) == '10 01 11'
    assert word.truncated(1) == ((1,), (0,), (1,))
    with pytest.raises(LengthMismatch):
        ErrorWord.parse('10 1')
    with pytest.raises(LengthMismatch):
        ErrorWord(()).resultant()


def test_word_layer_mismatch():
    with pytest.raises(LengthMismatch):
        coefficient(NuddSpec((2, 2)), ErrorWord.parse('1'))


def test_vanishing_order_single_pulse():
    assert vanishing_order(NuddSpec((1,)), (1,), 2) == 1


@pytest.mark.parametrize('order', [2, 3])
def test_uhrig_single_layer(order):
    assert vanishing_order(NuddSpec((order,)), (1,), order + 1) >= order


@pytest.mark.parametrize('orders', [(2, 2), (1, 2), (2, 1)])
def test_two_layer_exhaustive_meets_prediction(orders):
    spec = NuddSpec(orders)
    for r in all_vectors(spec.ell):
        if r.is_trivial():
            continue
        predicted = predict_order(spec, r)
        assert vanishing_order(spec, r, predicted + 1) >= predicted, r


def test_three_layer_spot_check():
    spec = NuddSpec((2, 2, 2))
    for r in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]:
        assert vanishing_order(spec, r, 2) == 2


def test_profile_shape():
    spec = NuddSpec((1, 2))
    profile = vanishing_profile(spec, (0, 1), 3)
    assert [entry.n for entry in profile] == [1, 2, 3]
    assert [entry.word_count for entry in profile] == [1, 4, 16]
    assert profile[0].vanishes
    assert word_count(2, 3) == 16


def test_budget_is_checked_up_front():
    counter = EvaluationCounter(limit=100)
    with pytest.raises(BudgetExceeded) as info:
        vanishing_profile(NuddSpec((2, 2)), (1, 0), 6, counter)
    assert info.value.attempted > 100
    assert counter.count == 0


def test_compositions():
    assert sorted(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert len(list(compositions(5))) == 16


def test_outer_decomposition_matches_direct(rng):
    specs = [NuddSpec(orders) for orders in
            [(2, 3), (3, 2), (1, 4), (1, 1, 2), (2, 1, 2), (3, 2, 1)]]
    checked = 0
    while checked < 200:
        spec = specs[checked % len(specs)]
        n = int(rng.integers(1, 5))
        word = random_word(spec.ell, n, rng)
        direct = coefficient(spec, word)
        decomposed = outer_decomposition(spec, word)
        if abs(direct) > zero_threshold(n):
            assert abs(decomposed - direct) <= mpmath.mpf('1e-45') * abs(direct)
        else:
            assert abs(decomposed) <= zero_threshold(n)
        checked += 1


def test_outer_decomposition_needs_two_layers():
    with pytest.raises(InvalidSpec):
        outer_decomposition(NuddSpec((2,)), ErrorWord.parse('1'))


def test_oracle_converges_quadratically(rng):
    # Trapezoid steps are exact below three integrations.
    specs = [NuddSpec(orders) for orders in [(2, 2), (2, 3), (1, 2, 1)]]
    converged = 0
    draws = 0
    while converged < 20:
        draws += 1
        assert draws <= 400
        spec = specs[draws % len(specs)]
        word = random_word(spec.ell, 3, rng)
        exact = coefficient(spec, word)
        if abs(exact) <= zero_threshold(3):
            continue
        coarse = abs(oracle_coefficient(spec, word, 8) - exact)
        fine = abs(oracle_coefficient(spec, word, 16) - exact)
        if fine <= zero_threshold(3):
            continue
        assert mpmath.log(coarse / fine, 2) >= 1.9
        converged += 1


def test_oracle_error_on_trivial_word():
    spec = NuddSpec((2, 2))
    word = ErrorWord.parse('00 00 00')
    exact = coefficient(spec, word)
    assert abs(exact - mpmath.mpf(1) / 6) < tolerance(5)
    assert abs(oracle_coefficient(spec, word, 16) - exact) > zero_threshold(3)


def test_oracle_grid_check():
    with pytest.raises(ValueError):
        oracle_coefficient(NuddSpec((2,)), ErrorWord.parse('1'), 1)


def test_zero_threshold():
    assert zero_threshold(3) == mpmath.mpf(10) ** (COEFFICIENT_ZERO_K -
            mpmath.mp.dps) / 6


@pytest.mark.slow
@pytest.mark.parametrize('orders', [(n1, n2) for n1 in range(1, 5)
        for n2 in range(1, 5)])
def test_quadruple_exhaustive(orders):
    spec = NuddSpec(orders)
    for r in all_vectors(2):
        if not r.is_trivial():
            predicted = predict_order(spec, r)
            assert vanishing_order(spec, r, predicted + 1) >= predicted, r


@pytest.mark.slow
@pytest.mark.parametrize('orders', [(1, 2, 1), (2, 1, 2)])
def test_three_layer_words_up_to_four(orders):
    spec = NuddSpec(orders)
    for r in all_vectors(3):
        if not r.is_trivial():
            n_max = min(predict_order(spec, r), 4)
            assert vanishing_order(spec, r, n_max) == n_max, r


@pytest.mark.parametrize('orders', [(2, 3), (1, 1, 2)])
def test_largest_coefficient_is_trivial_word(orders):
    spec = NuddSpec(orders)
    vectors = all_vectors(spec.ell)
    largest = max(abs(coefficient(spec, ErrorWord(word)))
            for word in product(vectors, repeat=3))
    assert abs(largest - mpmath.mpf(1) / 6) < tolerance(10)
