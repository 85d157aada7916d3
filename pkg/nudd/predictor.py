"""Closed-form lower bounds for the decoupling order of every error type.

An error of type ``r`` is suppressed by layer ``i`` only if it anticommutes
with ``Omega_i`` and an even number of inner odd-order layers also flip it.
Every outer odd-order layer it anticommutes with adds one order. The
effective power of a layer is capped at one more than the smallest odd
order nested inside it.
"""
from nudd.exceptions import *
from nudd.constants import *
from nudd.errortypes import ErrorVector, all_vectors, xor
from nudd.schedule import NuddSpec
from dataclasses import dataclass
from itertools import permutations
from functools import reduce
import logging
import numpy


def _vector_validator(spec, r):
    r = ErrorVector(r)
    if len(r) != spec.ell:
        raise LengthMismatch('Error vector %s does not match %d layers.' %
                (r, spec.ell))
    return r


def parity_xor(spec, r, first, last):
    """Parity of the anticommuting odd-order layers ``first..last``
    (1-indexed, inclusive). An empty range gives 0."""
    total = 0
    for layer in range(first, last + 1):
        total ^= r[layer - 1] & (spec.orders[layer - 1] % 2)
    return total


def parity_sum(spec, r, first, last):
    """Number of anticommuting odd-order layers ``first..last``."""
    return sum(r[layer - 1] & (spec.orders[layer - 1] % 2)
            for layer in range(first, last + 1))


def suppression_orders(spec):
    """Effective suppression power of each layer. Up to and including the
    first odd layer it equals the sequence order; further out it is capped
    at the smallest inner odd order plus one."""
    result = []
    smallest_odd = None
    for order in spec.orders:
        if smallest_odd is None:
            result.append(order)
        else:
            result.append(min(smallest_odd + 1, order))
        if order % 2:
            smallest_odd = order if smallest_odd is None else min(smallest_odd, order)
    return result


@dataclass(frozen=True)
class ErrorPrediction(object):
    predicted: int
    suppression_orders: tuple
    components: tuple


def _components(spec, r, tilde):
    ell = spec.ell
    return tuple(r[i - 1] * (parity_xor(spec, r, 1, i - 1) ^ 1) * tilde[i - 1] +
            parity_sum(spec, r, i + 1, ell) for i in range(1, ell + 1))


def predict_error(spec, r):
    """Decoupling order bound for ``r`` with the terms it maximizes over.

    Returns:

    :attr:`ErrorPrediction`.
    """
    r = _vector_validator(spec, r)
    tilde = tuple(suppression_orders(spec))
    if r.is_trivial():
        return ErrorPrediction(0, tilde, (0,) * spec.ell)
    components = _components(spec, r, tilde)
    return ErrorPrediction(max(components), tilde, components)


def predict_order(spec, r):
    """Lower bound on the decoupling order of error type ``r``, 0 for the
    trivial type."""
    return predict_error(spec, r).predicted


class OrderPrediction(object):
    """Predictions for every error type of one spec."""
    spec = None
    """The :attr:`NuddSpec`."""
    per_error = None
    """Dict of :attr:`ErrorVector` to :attr:`ErrorPrediction`."""

    def __init__(self, spec):
        self.spec = spec
        self.per_error = dict((r, predict_error(spec, r))
                for r in all_vectors(spec.ell))

    def __getitem__(self, r):
        return self.per_error[ErrorVector(r)]


def predict_overall(spec):
    """Decoupling order of the full sequence, the smallest sequence order.

    Raises:

    :attr:`InvariantViolation` if it differs from the smallest prediction
    over single-layer error types.
    """
    overall = min(spec.orders)
    chain = min(predict_order(spec, ErrorVector.unit(spec.ell, layer))
            for layer in range(1, spec.ell + 1))
    if chain != overall:
        raise InvariantViolation('Smallest single-layer prediction %d differs '
                'from smallest order %d.' % (chain, overall))
    return overall


def naive_order(spec, r):
    """Largest sequence order among the layers ``r`` anticommutes with."""
    r = _vector_validator(spec, r)
    return max(bit * order for bit, order in zip(r, spec.orders))


class LemmaReport(object):
    """Outcome of :func:`lemma_checks`."""
    trials = 0
    """Number of random cluster decompositions tried."""
    subadditivity_violations = None
    """List of ``(target, clusters)`` where the bound of the resultant
    exceeded the summed bounds of its clusters."""
    odd_minimum_status = 'skipped'
    """``passed``, ``failed`` or ``skipped``."""
    odd_minimum = None
    """Smallest prediction over inner types flipped by an odd number of
    odd-order layers."""
    expected_odd_minimum = None
    """Smallest inner odd sequence order."""

    def __init__(self):
        self.subadditivity_violations = []

    @property
    def passed(self):
        return (not self.subadditivity_violations and
                self.odd_minimum_status != 'failed')


def lemma_checks(spec, trials, seed, max_clusters=6):
    """Property checks of the predictor on the inner ``ell - 1`` layers.

    Subadditivity: the bound of a resultant never exceeds the summed bounds
    of any cluster decomposition of it, tested on ``trials`` random
    decompositions. Odd minimum: over inner types flipped by an odd number
    of odd-order layers, the smallest bound equals the smallest inner odd
    order. Skipped when no inner layer is odd.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*spec*", "NuddSpec", "Spec with at least two layers, otherwise both
        checks are skipped."
        "*trials*", "int", "Random decompositions to test."
        "*seed*", "int", "Seed of the numpy generator."

    Returns:

    :attr:`LemmaReport`.
    """
    if trials < 1:
        raise ValueError('trials must be at least 1.')
    report = LemmaReport()
    if spec.ell < 2:
        return report

    inner = spec.inner()
    width = inner.ell
    rng = numpy.random.default_rng(seed)

    def draw():
        return ErrorVector(int(b) for b in rng.integers(0, 2, size=width))

    for _ in range(trials):
        target = draw()
        clusters = [draw() for _ in range(int(rng.integers(1, max_clusters)))]
        clusters.append(reduce(xor, clusters, target))
        report.trials += 1
        bound = predict_order(inner, target)
        summed = sum(predict_order(inner, c) for c in clusters)
        if bound > summed:
            logging.warning('Subadditivity violated for %s: %d > %d.',
                    target, bound, summed)
            report.subadditivity_violations.append((target, tuple(clusters)))

    odd = [order for order in inner.orders if order % 2]
    if odd:
        flipped = [r for r in all_vectors(width)
                if parity_xor(inner, r, 1, width) == 1]
        report.odd_minimum = min(predict_order(inner, r) for r in flipped)
        report.expected_odd_minimum = min(odd)
        if report.odd_minimum == report.expected_odd_minimum:
            report.odd_minimum_status = 'passed'
        else:
            report.odd_minimum_status = 'failed'
            logging.warning('Odd minimum %d differs from %d for %r.',
                    report.odd_minimum, report.expected_odd_minimum, inner)
    return report


def optimal_arrangement(orders):
    """Layer order that leaves every layer at its full suppression power:
    even orders innermost in their given order, then odd orders decreasing
    outwards.

    Returns:

    Tuple ``(arranged_orders, permutation)`` where ``arranged[k] ==
    orders[permutation[k]]``.
    """
    orders = tuple(orders)
    evens = [k for k, order in enumerate(orders) if order % 2 == 0]
    odds = sorted((k for k, order in enumerate(orders) if order % 2),
            key=lambda k: -orders[k])
    permutation = tuple(evens + odds)
    return tuple(orders[k] for k in permutation), permutation


def arrangement_gain(orders):
    """Compare predictions of the given nesting with the optimal one. Error
    types are keyed in the given layer order and carried to the arranged
    layers.

    Returns:

    Dict of :attr:`ErrorVector` to ``(given, arranged)`` predictions.
    """
    given = NuddSpec(orders)
    arranged_orders, permutation = optimal_arrangement(orders)
    arranged = NuddSpec(arranged_orders)
    gains = {}
    for r in all_vectors(given.ell):
        moved = ErrorVector(r[k] for k in permutation)
        gains[r] = (predict_order(given, r), predict_order(arranged, moved))
    return gains


def best_arrangements(orders):
    """All distinct nestings of ``orders`` ranked by the sum of predictions
    over every error type, best first."""
    ranked = []
    for candidate in sorted(set(permutations(orders))):
        spec = NuddSpec(candidate)
        total = sum(predict_order(spec, r) for r in all_vectors(spec.ell))
        ranked.append((total, candidate))
    ranked.sort(key=lambda item: (-item[0], item[1]))
    return ranked
