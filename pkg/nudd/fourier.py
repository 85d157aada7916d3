"""Harmonic content of modulation functions in the outer-layer angle.

Each outer interval ``j`` is stretched linearly onto an arc of length
``pi/(N+1)`` so the whole sequence covers ``[0, pi]``. Functions are then
continued to ``[0, 2pi)`` by ``phi(theta + pi) = eps * phi(theta)``: the
outer modulation repeats every ``2pi/(N+1)``, inner modulations repeat
every ``pi/(N+1)`` and the stretch factor ``G1`` flips sign. All pieces are
constant, so their projections onto ``sin(m theta)`` and ``cos(m theta)``
are integrated in closed form.
"""
from nudd.exceptions import *
from nudd.constants import *
from nudd.errortypes import ErrorVector
from nudd.predictor import parity_xor
from nudd.schedule import build_timeline, udd_fraction, udd_intervals
import logging
import mpmath
from mpmath import mpf

G1 = 'G1'
"""Selector for the interval stretch factor."""


class HarmonicClass(object):
    """Set of allowed ``(kind, m)`` harmonics, ``kind`` being ``sin`` or
    ``cos``."""

    def __init__(self, name, kind, rule):
        self.name = name
        self.kind = kind
        self._rule = rule

    def allows(self, kind, m):
        return kind == self.kind and self._rule(m)

    def __repr__(self):
        return '<%s>' % self.name


def harmonic_class(spec, selector):
    """Harmonics the selected function may populate.

    Selectors are a layer number, :attr:`G1`, or an :attr:`ErrorVector` for
    the product of modulations it selects.
    """
    period = spec.orders[-1] + 1
    if selector == G1:
        return HarmonicClass('sin at 2k*%d+-1' % period, 'sin',
                lambda m: m % (2 * period) in (1, 2 * period - 1))

    if isinstance(selector, int):
        if not 1 <= selector <= spec.ell:
            raise InvalidIndex('Layer %r outside 1..%d.' % (selector, spec.ell))
        r = ErrorVector.unit(spec.ell, selector)
    else:
        r = ErrorVector(selector)
        if len(r) != spec.ell:
            raise LengthMismatch('Error vector %s does not match %d layers.' %
                    (r, spec.ell))

    def odd_multiple(m):
        return m % period == 0 and (m // period) % 2 == 1

    inner_parity = parity_xor(spec, r, 1, spec.ell - 1)
    outer = r[-1]
    if (inner_parity, outer) == (0, 0):
        return HarmonicClass('cos at even multiples of %d' % period, 'cos',
                lambda m: m % (2 * period) == 0)
    if (inner_parity, outer) == (0, 1):
        return HarmonicClass('sin at odd multiples of %d' % period, 'sin',
                odd_multiple)
    if (inner_parity, outer) == (1, 0):
        return HarmonicClass('sin at even multiples of %d' % period, 'sin',
                lambda m: m > 0 and m % (2 * period) == 0)
    return HarmonicClass('cos at odd multiples of %d' % period, 'cos',
            odd_multiple)


def angle_pieces(spec, selector):
    """Constant pieces ``(theta_start, theta_end, value)`` on ``[0, pi]``
    and the continuation sign ``eps``."""
    timeline = build_timeline(spec)
    outer_order = spec.orders[-1]
    period = outer_order + 1
    lengths = udd_intervals(outer_order)
    arc = mpmath.pi / period

    if selector == G1:
        eps = -1
    elif isinstance(selector, int):
        eps = (-1) ** period if selector == spec.ell else 1
        r = ErrorVector.unit(spec.ell, selector)
    else:
        r = ErrorVector(selector)
        eps = (-1) ** (period * r[-1])

    pieces = []
    for interval in timeline.intervals:
        j = interval.index[0]
        origin = udd_fraction(outer_order, j - 1)
        stretch = arc / lengths[j - 1]
        start = (j - 1) * arc + (interval.start - origin) * stretch
        end = (j - 1) * arc + (interval.end - origin) * stretch
        if selector == G1:
            value = lengths[j - 1] / arc
        else:
            value = 1
            for layer, bit in enumerate(r, 1):
                if bit:
                    value *= interval.sign(layer)
        if pieces and pieces[-1][2] == value:
            pieces[-1] = (pieces[-1][0], end, value)
        else:
            pieces.append((start, end, value))
    return pieces, eps


class HarmonicReport(object):
    """Projection of one function onto ``sin(m theta)``, ``cos(m theta)``."""
    selector = None
    """Layer number, :attr:`G1` or :attr:`ErrorVector`."""
    expected = None
    """:attr:`HarmonicClass` the function should populate."""
    sine = None
    """Dict ``m -> b_m``."""
    cosine = None
    """Dict ``m -> a_m``."""
    populated = None
    """``(kind, m)`` pairs above the populated threshold."""
    forbidden_weight = None
    """Largest forbidden coefficient relative to the largest coefficient."""

    @property
    def passed(self):
        return self.forbidden_weight < HARMONIC_FORBIDDEN


def fourier_profile(spec, selector, m_max=None):
    """Harmonic report of the selected function up to ``m_max``, by default
    six outer periods.

    Returns:

    :attr:`HarmonicReport`.
    """
    period = spec.orders[-1] + 1
    if m_max is None:
        m_max = 6 * period + 1
    expected = harmonic_class(spec, selector)
    pieces, eps = angle_pieces(spec, selector)

    sine = {}
    cosine = {}
    for m in range(m_max + 1):
        fold = 1 + eps * (-1) ** m
        if fold == 0:
            sine[m] = cosine[m] = mpf(0)
            continue
        if m == 0:
            area = mpmath.fsum(value * (end - start) for start, end, value in pieces)
            cosine[0] = fold * area / (2 * mpmath.pi)
            sine[0] = mpf(0)
            continue
        c = mpmath.fsum(value * (mpmath.sin(m * end) - mpmath.sin(m * start))
                for start, end, value in pieces)
        s = mpmath.fsum(value * (mpmath.cos(m * start) - mpmath.cos(m * end))
                for start, end, value in pieces)
        cosine[m] = fold * c / (m * mpmath.pi)
        sine[m] = fold * s / (m * mpmath.pi)

    entries = [('sin', m, abs(v)) for m, v in sine.items()] + \
            [('cos', m, abs(v)) for m, v in cosine.items()]
    largest = max(weight for _, _, weight in entries)

    report = HarmonicReport()
    report.selector = selector
    report.expected = expected
    report.sine = sine
    report.cosine = cosine
    if largest == 0:
        report.populated = []
        report.forbidden_weight = mpf(0)
        return report
    report.populated = [(kind, m) for kind, m, weight in entries
            if weight > HARMONIC_POPULATED * largest]
    report.forbidden_weight = max([weight for kind, m, weight in entries
            if not expected.allows(kind, m)] or [mpf(0)]) / largest
    if not report.passed:
        logging.warning('Function %r of %r populates forbidden harmonics '
                '(weight %s).', selector, spec, mpmath.nstr(report.forbidden_weight, 5))
    return report
