"""Nested time-ordered integrals of products of modulation functions.

The coefficient of a word ``(r^(1), ..., r^(n))`` is

    F = int_0^1 g_n(t_n) int_0^t_n g_{n-1}(t_{n-1}) ... int_0^t_2 g_1(t_1)

where ``g_p`` is the product of the layer modulation functions selected by
``r^(p)``. Every ``g_p`` is +-1 on each atomic interval of the schedule, so
the partial integrals are piecewise polynomials and are integrated exactly.
"""
from nudd.exceptions import *
from nudd.constants import *
from nudd.counter import EvaluationCounter
from nudd.errortypes import ErrorVector, all_vectors, xor
from nudd.schedule import NuddSpec, build_timeline, udd_intervals
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import combinations
import logging
import mpmath
from mpmath import mpf


class ErrorWord(tuple):
    """Ordered sequence of error vectors, earliest time first."""

    def __new__(cls, vectors):
        vectors = tuple(ErrorVector(v) for v in vectors)
        if vectors:
            ell = len(vectors[0])
            for vector in vectors:
                if len(vector) != ell:
                    raise LengthMismatch('Word mixes vectors of lengths %d '
                            'and %d.' % (ell, len(vector)))
        return tuple.__new__(cls, vectors)

    @classmethod
    def parse(cls, text):
        """Parse whitespace-separated vectors, e.g. ``'10 01 11'``."""
        return cls(ErrorVector.parse(item) for item in text.split())

    @property
    def n(self):
        return len(self)

    @property
    def ell(self):
        return len(self[0]) if self else None

    def resultant(self):
        """Sum of all vectors modulo 2."""
        if not self:
            raise LengthMismatch('Empty word has no resultant.')
        return reduce(xor, self)

    def truncated(self, ell):
        """Same word restricted to the first ``ell`` layers."""
        return ErrorWord(vector[:ell] for vector in self)

    def __str__(self):
        return ' '.join(''.join(str(b) for b in v) for v in self)


def random_word(ell, n, rng):
    """Uniformly random word drawn from a numpy ``Generator``."""
    bits = rng.integers(0, 2, size=(n, ell))
    return ErrorWord(tuple(int(b) for b in row) for row in bits)


class CoefficientEngine(object):
    """Exact coefficient evaluation for one spec.

    The state after ``p`` integrations holds, for every atomic interval, the
    coefficients of ``A_p`` in the local variable ``eta - start``. Degree is
    at most ``p``, and neighbouring pieces join continuously.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*spec*", "NuddSpec", "Nested sequence."
    """
    spec = None
    """The :attr:`NuddSpec` being evaluated."""
    timeline = None
    """Its :attr:`Timeline`."""

    def __init__(self, spec):
        self.spec = spec
        self.timeline = build_timeline(spec)
        self._lengths = [interval.length for interval in self.timeline.intervals]
        self._parities = [tuple((j - 1) % 2 for j in reversed(interval.index))
                for interval in self.timeline.intervals]
        self._signs = {}

    def signs(self, r):
        """Value of ``prod_i f_i**r_i`` on each atomic interval."""
        cached = self._signs.get(r)
        if cached is not None:
            return cached
        r = ErrorVector(r)
        if len(r) != self.spec.ell:
            raise LengthMismatch('Error vector %s does not match %d layers.' %
                    (r, self.spec.ell))
        cached = self._signs[r] = tuple(
                -1 if sum(a * b for a, b in zip(r, parity)) % 2 else 1
                for parity in self._parities)
        return cached

    def initial(self):
        return [[mpf(1)] for _ in self._lengths]

    def step(self, state, r):
        """Integrate ``g_r * A_p`` once.

        Returns:

        Tuple ``(next_state, value_at_one)``.
        """
        result = []
        acc = mpf(0)
        for coeffs, length, sign in zip(state, self._lengths, self.signs(r)):
            piece = [acc]
            if sign > 0:
                piece.extend(c / (k + 1) for k, c in enumerate(coeffs))
            else:
                piece.extend(-c / (k + 1) for k, c in enumerate(coeffs))
            result.append(piece)
            acc = mpmath.polyval(piece[::-1], length)
        return result, acc

    def coefficient(self, word):
        word = ErrorWord(word)
        if not word:
            return mpf(1)
        state = self.initial()
        value = None
        for r in word:
            state, value = self.step(state, r)
        return value


@lru_cache(maxsize=32)
def _engine(orders, dps):
    return CoefficientEngine(NuddSpec(orders))


def engine_for(spec):
    """Shared :attr:`CoefficientEngine` for ``spec`` at the ambient
    precision."""
    return _engine(spec.orders, mpmath.mp.dps)


def coefficient(spec, word):
    """Exact nested integral for ``word``. The empty word gives 1.

    Raises:

    :attr:`LengthMismatch` if the word does not match the layer count.
    """
    return engine_for(spec).coefficient(word)


def oracle_coefficient(spec, word, grid_per_interval):
    """Same nested integral by the composite trapezoid rule on a grid with
    ``grid_per_interval`` equal steps inside every atomic interval. Converges
    quadratically in the step width.
    """
    if grid_per_interval < 2:
        raise ValueError('Need at least 2 grid steps per interval.')
    word = ErrorWord(word)
    if not word:
        return mpf(1)
    engine = engine_for(spec)
    widths = [interval.length / grid_per_interval
            for interval in engine.timeline.intervals]

    values = [mpf(1)] * (len(widths) * grid_per_interval + 1)
    for r in word:
        signs = engine.signs(r)
        integrated = [mpf(0)]
        acc = mpf(0)
        point = 0
        for width, sign in zip(widths, signs):
            half = sign * width / 2
            for _ in range(grid_per_interval):
                acc += half * (values[point] + values[point + 1])
                point += 1
                integrated.append(acc)
        values = integrated
    return values[-1]


def zero_threshold(n):
    """Magnitude at or below which a length-``n`` coefficient vanishes,
    relative to the largest length-``n`` coefficient of any spec. That is
    the trivial word, ``1/n!``, since every integrand is bounded by one."""
    return mpf(10) ** (COEFFICIENT_ZERO_K - mpmath.mp.dps) / mpmath.factorial(n)


@dataclass(frozen=True)
class LengthProfile(object):
    n: int
    word_count: int
    max_abs: object
    threshold: object

    @property
    def vanishes(self):
        return self.max_abs <= self.threshold


def word_count(ell, n):
    """Words of length ``n`` with a fixed resultant."""
    return (2 ** ell) ** (n - 1)


def vanishing_profile(spec, r, n_max, counter=None):
    """Largest coefficient magnitude per word length over every word whose
    resultant is ``r``.

    Words are enumerated depth first so each prefix integral is computed
    once. The last vector of each word is fixed by the resultant.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*spec*", "NuddSpec", "Nested sequence."
        "*r*", "ErrorVector", "Resultant error type."
        "*n_max*", "int", "Longest word length."
        "*counter*", "EvaluationCounter", "Budget, a fresh default budget if
        omitted."

    Returns:

    List of :attr:`LengthProfile` for ``n = 1..n_max``.

    Raises:

    :attr:`BudgetExceeded` before any evaluation if the word count is over
    budget.
    """
    if n_max < 1:
        raise ValueError('n_max must be at least 1.')
    r = ErrorVector(r)
    ell = spec.ell
    if len(r) != ell:
        raise LengthMismatch('Error vector %s does not match %d layers.' %
                (r, ell))
    counter = counter or EvaluationCounter()
    counter.reserve(sum(word_count(ell, n) for n in range(1, n_max + 1)))

    engine = engine_for(spec)
    letters = all_vectors(ell)
    largest = dict((n, mpf(0)) for n in range(1, n_max + 1))

    def descend(state, prefix, depth):
        n = depth + 1
        _, value = engine.step(state, xor(prefix, r))
        if abs(value) > largest[n]:
            largest[n] = abs(value)
        if n < n_max:
            for letter in letters:
                child, _ = engine.step(state, letter)
                descend(child, xor(prefix, letter), n)

    descend(engine.initial(), ErrorVector.zero(ell), 0)
    logging.debug('Vanishing profile %r r=%s n_max=%d done.', spec, r, n_max)
    return [LengthProfile(n, word_count(ell, n), largest[n], zero_threshold(n))
            for n in range(1, n_max + 1)]


def vanishing_order(spec, r, n_max, counter=None):
    """Largest ``n <= n_max`` such that every coefficient of every word of
    length ``1..n`` with resultant ``r`` vanishes."""
    order = 0
    for entry in vanishing_profile(spec, r, n_max, counter):
        if not entry.vanishes:
            break
        order = entry.n
    return order


def compositions(n):
    """All ordered ways of writing ``n`` as a sum of positive parts."""
    for cuts_count in range(n):
        for cuts in combinations(range(1, n), cuts_count):
            bounds = (0,) + cuts + (n,)
            yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def _outer_sum(lengths, clusters):
    # Sum over strictly increasing outer interval indices, one per cluster.
    running = None
    for size, flip in clusters:
        weights = [(-1 if flip and j % 2 else 1) * length ** size
                for j, length in enumerate(lengths)]
        if running is None:
            running = weights
            continue
        below = mpf(0)
        shifted = []
        for value, weight in zip(running, weights):
            shifted.append(below * weight)
            below += value
        running = shifted
    return mpmath.fsum(running)


def outer_decomposition(spec, word):
    """Evaluate a coefficient by splitting the word into contiguous clusters
    that share one outer interval each.

    For every composition of ``n``, the inner-layer coefficients of the
    cluster sub-words multiply a sum over strictly increasing outer interval
    indices of ``prod_a (+-1) * s_j**n_a``. The sign is the outer modulation
    raised to the parity of the cluster's last components.

    Raises:

    :attr:`InvalidSpec` for a single-layer spec.
    """
    if spec.ell < 2:
        raise InvalidSpec('Outer decomposition needs at least two layers.')
    word = ErrorWord(word)
    if not word:
        return mpf(1)
    if word.ell != spec.ell:
        raise LengthMismatch('Word has %d layers, spec has %d.' %
                (word.ell, spec.ell))

    inner = engine_for(spec.inner())
    lengths = udd_intervals(spec.orders[-1])
    terms = []
    for parts in compositions(word.n):
        start = 0
        inner_product = mpf(1)
        clusters = []
        for size in parts:
            cluster = ErrorWord(word[start:start + size])
            start += size
            inner_product *= inner.coefficient(cluster.truncated(spec.ell - 1))
            clusters.append((size, sum(v[-1] for v in cluster) % 2))
        if len(clusters) > len(lengths):
            continue
        terms.append(inner_product * _outer_sum(lengths, clusters))
    return mpmath.fsum(terms)
