from nudd.exceptions import *
from nudd.constants import *
from nudd.errortypes import ErrorVector, all_vectors
from nudd.predictor import (OrderPrediction, arrangement_gain,
        best_arrangements, lemma_checks, naive_order, optimal_arrangement,
        predict_error, predict_order, predict_overall, suppression_orders)
from nudd.schedule import NuddSpec
from itertools import combinations, product
import numpy
import pytest

TABLES = {
    (2, 4, 6, 8): [[0, 6, 8, 8], [2, 6, 8, 8], [4, 6, 8, 8], [4, 6, 8, 8]],
    (2, 4, 6, 3): [[0, 6, 3, 7], [2, 6, 3, 7], [4, 6, 5, 7], [4, 6, 5, 7]],
    (7, 5, 3, 1): [[0, 3, 1, 4], [7, 8, 8, 9], [5, 6, 6, 7], [8, 9, 9, 10]],
    (2, 4, 1, 6): [[0, 1, 2, 1], [2, 3, 2, 3], [4, 5, 4, 5], [4, 5, 4, 5]],
    (1, 3, 5, 7): [[0, 2, 2, 3], [1, 2, 2, 3], [2, 3, 3, 4], [2, 3, 3, 4]],
}


def grid(spec):
    halves = all_vectors(2)
    return [[predict_order(spec, ErrorVector(tuple(a) + tuple(b)))
            for b in halves] for a in halves]


@pytest.mark.parametrize('orders', sorted(TABLES))
def test_prediction_tables(orders):
    assert grid(NuddSpec(orders)) == TABLES[orders]


def test_trivial_type_is_zero():
    prediction = predict_error(NuddSpec((3, 3)), (0, 0))
    assert prediction.predicted == 0
    assert prediction.components == (0, 0)


def test_suppression_orders():
    assert suppression_orders(NuddSpec((2, 4, 6, 8))) == [2, 4, 6, 8]
    assert suppression_orders(NuddSpec((7, 5, 3, 1))) == [7, 5, 3, 1]
    assert suppression_orders(NuddSpec((1, 3, 5, 7))) == [1, 2, 2, 2]
    assert suppression_orders(NuddSpec((2, 4, 1, 6))) == [2, 4, 1, 2]


def test_overall_is_smallest_order():
    for orders in product(range(1, 7), repeat=4):
        assert predict_overall(NuddSpec(orders)) == min(orders)


def test_naive_order():
    assert naive_order(NuddSpec((2, 4, 6, 3)), (0, 0, 1, 1)) == 6
    assert naive_order(NuddSpec((7, 5, 3, 1)), (1, 1, 1, 1)) == 7
    assert naive_order(NuddSpec((7, 5, 3, 1)), (0, 0, 0, 0)) == 0


def test_vector_length_checked():
    with pytest.raises(LengthMismatch):
        predict_order(NuddSpec((2, 2)), (1, 0, 0))


def test_order_prediction_lookup():
    prediction = OrderPrediction(NuddSpec((2, 4, 6, 3)))
    assert len(prediction.per_error) == 16
    assert prediction['0011'].predicted == 7


@pytest.mark.parametrize('orders', [(7, 5, 3, 1), (1, 3, 5, 7),
        (2, 4, 1, 6), (3, 2, 5)])
def test_lemma_checks_pass(orders):
    report = lemma_checks(NuddSpec(orders), 10 ** 4, 0)
    assert report.passed
    assert report.trials == 10 ** 4
    assert report.odd_minimum_status == 'passed'


def test_odd_minimum_on_random_specs():
    rng = numpy.random.default_rng(4)
    for _ in range(20):
        ell = int(rng.integers(3, 6))
        orders = [int(n) for n in rng.integers(1, 9, size=ell)]
        if not any(n % 2 for n in orders[:-1]):
            orders[int(rng.integers(0, ell - 1))] += 1
        report = lemma_checks(NuddSpec(orders), 1, 0)
        assert report.odd_minimum_status == 'passed'
        assert report.odd_minimum == min(n for n in orders[:-1] if n % 2)


@pytest.mark.parametrize('orders', list(product(range(1, 7), repeat=2)))
def test_two_layer_law(orders):
    n1, n2 = orders
    spec = NuddSpec(orders)
    tilde2 = min(n2, n1 + 1) if n1 % 2 else n2
    assert predict_order(spec, (1, 0)) == n1
    assert predict_order(spec, (0, 1)) == tilde2
    assert predict_order(spec, (1, 1)) == max(n1 + n2 % 2,
            (n1 % 2 ^ 1) * tilde2)


def test_all_even_orders_match_naive():
    for orders in product((2, 4, 6), repeat=3):
        spec = NuddSpec(orders)
        for r in all_vectors(3):
            assert predict_order(spec, r) == naive_order(spec, r)


def test_odd_outer_layer_adds_one():
    for inner in product((2, 4, 6), repeat=2):
        for outer in (1, 3, 5, 7):
            orders = inner + (outer,)
            spec = NuddSpec(orders)
            for r in all_vectors(3):
                if r.is_trivial():
                    continue
                expected = max([r[i] * orders[i] + r[2] for i in range(2)] +
                        [r[2] * outer])
                assert predict_order(spec, r) == expected
                inner_naive = max(r[i] * orders[i] for i in range(2))
                if r[2] and inner_naive >= outer:
                    assert predict_order(spec, r) == naive_order(spec, r) + 1


@pytest.mark.parametrize('ell', [2, 3, 4])
def test_decreasing_odd_orders(ell):
    for chosen in combinations((1, 3, 5, 7, 9), ell):
        orders = tuple(sorted(chosen, reverse=True))
        spec = NuddSpec(orders)
        for r in all_vectors(ell):
            if r.is_trivial():
                continue
            first = r.index(1)
            assert predict_order(spec, r) == orders[first] + sum(r[first + 1:])


@pytest.mark.parametrize('orders', [(2, 4, 6, 8), (2, 4, 6, 3)])
def test_lemma_checks_skip_odd_minimum(orders):
    report = lemma_checks(NuddSpec(orders), 50, 1)
    assert report.passed
    assert report.odd_minimum_status == 'skipped'


def test_lemma_checks_single_layer():
    report = lemma_checks(NuddSpec((3,)), 10, 0)
    assert report.trials == 0
    assert report.passed


def test_optimal_arrangement():
    arranged, permutation = optimal_arrangement((2, 4, 1, 6))
    assert arranged == (2, 4, 6, 1)
    assert permutation == (0, 1, 3, 2)
    assert suppression_orders(NuddSpec(arranged)) == list(arranged)
    assert optimal_arrangement((1, 3, 5))[0] == (5, 3, 1)


def test_arrangement_gain():
    gains = arrangement_gain((2, 4, 1, 6))
    assert gains[ErrorVector('0001')] == (2, 6)
    assert sum(given for given, _ in gains.values()) == 50
    assert sum(arranged for _, arranged in gains.values()) == 76


def test_best_arrangements():
    ranked = best_arrangements((1, 2))
    assert ranked[0] == (6, (2, 1))
    assert ranked[1] == (4, (1, 2))


@pytest.mark.parametrize('orders', [(1, 2), (1, 3), (2, 4, 1, 6)])
def test_arrangement_matches_exhaustive_search(orders):
    arranged, _ = optimal_arrangement(orders)
    spec = NuddSpec(arranged)
    total = sum(predict_order(spec, r) for r in all_vectors(spec.ell))
    assert best_arrangements(orders)[0][0] == total
