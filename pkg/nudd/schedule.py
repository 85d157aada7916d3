"""Nested Uhrig pulse schedules.

Layer 1 is the innermost layer. Every layer ``i`` splits each interval of
layer ``i+1`` into ``N_i + 1`` Uhrig sub-intervals and fires its control
pulse at the end of sub-intervals ``1..N_i``. An extra pulse closes each
cycle of an odd-order layer so the net pulse count per layer is even.
"""
from nudd.exceptions import *
from nudd.constants import *
from nudd.mpcore import tolerance
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
import csv
import mpmath


def _order_validator(order):
    if isinstance(order, bool) or not isinstance(order, int) or order < 1:
        raise InvalidSpec('Sequence order must be a positive integer, got %r.'
                % (order,))


class NuddSpec(object):
    """Nested sequence description.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*orders*", "sequence", "Sequence orders N_1..N_ell, innermost layer
        first."
        "*moos_labels*", "sequence", "Optional control operator label per
        layer, defaults to Omega1..Omega_ell."
    """
    orders = None
    """Tuple of sequence orders, innermost first."""
    moos_labels = None
    """Tuple of control operator labels, one per layer."""

    def __init__(self, orders, moos_labels=None):
        orders = tuple(orders)
        if not orders:
            raise InvalidSpec('At least one layer is required.')
        for order in orders:
            _order_validator(order)
        if moos_labels is None:
            moos_labels = tuple('Omega%d' % (i + 1) for i in range(len(orders)))
        moos_labels = tuple(moos_labels)
        if len(moos_labels) != len(orders):
            raise InvalidSpec('Got %d control labels for %d layers.' %
                    (len(moos_labels), len(orders)))
        self.orders = orders
        self.moos_labels = moos_labels

    @property
    def ell(self):
        """Number of layers."""
        return len(self.orders)

    def inner(self):
        """Spec of the inner ``ell - 1`` layers."""
        if self.ell < 2:
            raise InvalidSpec('A single-layer spec has no inner layers.')
        return NuddSpec(self.orders[:-1], self.moos_labels[:-1])

    def pulse_count(self, layer):
        """Pulses of ``layer`` per enclosing cycle, ``N`` or ``N + 1``."""
        order = self.orders[layer - 1]
        return order + (order % 2)

    def interval_count(self):
        count = 1
        for order in self.orders:
            count *= order + 1
        return count

    def __eq__(self, other):
        return isinstance(other, NuddSpec) and self.orders == other.orders

    def __hash__(self):
        return hash(self.orders)

    def __repr__(self):
        return 'NuddSpec(%s)' % ','.join(str(n) for n in self.orders)


def udd_fraction(order, j):
    """``sin^2(j pi / (2(N+1)))``, the normalized time of the ``j``-th pulse
    of a single Uhrig cycle. ``j = 0`` and ``j = N+1`` give 0 and 1."""
    if j == 0:
        return mpmath.mpf(0)
    if j == order + 1:
        return mpmath.mpf(1)
    return mpmath.sin(j * mpmath.pi / (2 * (order + 1))) ** 2


def udd_fractions(order):
    """Interior pulse timings of a single Uhrig cycle of order ``N``.

    Raises:

    :attr:`InvalidSpec` if ``N < 1``.
    """
    _order_validator(order)
    return [udd_fraction(order, j) for j in range(1, order + 1)]


@lru_cache(maxsize=None)
def _intervals(order, dps):
    first = mpmath.sin(mpmath.pi / (2 * (order + 1)))
    return tuple(first * mpmath.sin((2 * j - 1) * mpmath.pi / (2 * (order + 1)))
            for j in range(1, order + 2))


def udd_intervals(order):
    """Lengths ``s_1..s_{N+1}`` of the sub-intervals of one Uhrig cycle.

    Raises:

    :attr:`InvalidSpec` if ``N < 1``.
    """
    _order_validator(order)
    return list(_intervals(order, mpmath.mp.dps))


def _index_validator(spec, index):
    index = tuple(index)
    if len(index) != spec.ell:
        raise InvalidIndex('Index %r has %d components, spec has %d layers.' %
                (index, len(index), spec.ell))
    # index runs outermost first
    for position, j in enumerate(index):
        order = spec.orders[spec.ell - 1 - position]
        if not 1 <= j <= order + 1:
            raise InvalidIndex('Component j_%d=%r outside 1..%d.' %
                    (spec.ell - position, j, order + 1))
    return index


def nudd_timing(spec, index):
    """Normalized time of the end of the atomic interval labelled by the
    multi-index ``(j_ell, ..., j_1)``.

    The start of each enclosing cycle is found layer by layer from the
    outside in, every cycle scaled by the product of the enclosing interval
    lengths.

    Raises:

    :attr:`InvalidIndex` for a component outside ``1..N_i+1``.
    """
    index = _index_validator(spec, index)
    start = mpmath.mpf(0)
    scale = mpmath.mpf(1)
    for position, j in enumerate(index[:-1]):
        order = spec.orders[spec.ell - 1 - position]
        start += scale * udd_fraction(order, j - 1)
        scale *= _intervals(order, mpmath.mp.dps)[j - 1]
    return start + scale * udd_fraction(spec.orders[0], index[-1])


@dataclass(frozen=True)
class PulseEvent(object):
    time: object
    layers: tuple


@dataclass(frozen=True)
class AtomicInterval(object):
    start: object
    end: object
    index: tuple
    fired: tuple

    @property
    def length(self):
        return self.end - self.start

    def sign(self, layer):
        """Modulation sign of ``layer`` on this interval."""
        j = self.index[len(self.index) - layer]
        return -1 if (j - 1) % 2 else 1


class Timeline(object):
    """Flattened schedule of a nested sequence.

    ``intervals`` lists every atomic interval in time order with its start,
    length, multi-index (outermost first) and the layers fired at its end.
    ``events`` lists only the instants where at least one pulse fires.
    """
    spec = None
    """The :attr:`NuddSpec` the timeline was built from."""
    intervals = None
    """Tuple of :attr:`AtomicInterval`."""
    events = None
    """Tuple of :attr:`PulseEvent`."""

    def __init__(self, spec, intervals):
        self.spec = spec
        self.intervals = tuple(intervals)
        self.events = tuple(PulseEvent(iv.end, iv.fired)
                for iv in self.intervals if iv.fired)
        self._starts = [iv.start for iv in self.intervals]

    def locate(self, eta):
        """Atomic interval containing ``eta``, half-open convention."""
        if eta < 0 or eta >= 1:
            raise OutOfRange('Normalized time %s outside [0, 1).' %
                    mpmath.nstr(mpmath.mpf(eta), 10))
        return self.intervals[bisect_right(self._starts, eta) - 1]

    def pulse_total(self, layer):
        return sum(1 for event in self.events if layer in event.layers)

    def __len__(self):
        return len(self.intervals)


def _fired_layers(spec, index):
    # A layer can only fire once every inner layer has closed its cycle.
    fired = []
    for layer in range(1, spec.ell + 1):
        j = index[spec.ell - layer]
        order = spec.orders[layer - 1]
        if j <= order or order % 2:
            fired.append(layer)
        if j != order + 1:
            break
    return tuple(fired)


def build_timeline(spec):
    """Build the flattened schedule of ``spec``. Layers firing at the same
    instant are merged into one event, listed in ascending layer order.

    Returns:

    :attr:`Timeline`.
    """
    return _build_timeline(spec.orders, mpmath.mp.dps)


@lru_cache(maxsize=64)
def _build_timeline(orders, dps):
    spec = NuddSpec(orders)
    ranges = [range(1, order + 2) for order in reversed(orders)]
    intervals = []
    start = mpmath.mpf(0)
    for index in product(*ranges):
        end = nudd_timing(spec, index)
        intervals.append(AtomicInterval(start, end, index,
                _fired_layers(spec, index)))
        start = end
    return Timeline(spec, intervals)


def modulation(spec, layer, eta):
    """Modulation function of ``layer`` at normalized time ``eta``, the sign
    ``(-1)**(j_layer - 1)`` of the containing interval.

    Raises:

    :attr:`OutOfRange` if ``eta`` is outside ``[0, 1)``.
    """
    if not 1 <= layer <= spec.ell:
        raise InvalidIndex('Layer %r outside 1..%d.' % (layer, spec.ell))
    return build_timeline(spec).locate(eta).sign(layer)


def min_pulse_interval(spec):
    """Product of the first interval fractions of every layer, the shortest
    spacing between pulses of a unit-length sequence."""
    tau = mpmath.mpf(1)
    for order in spec.orders:
        tau *= _intervals(order, mpmath.mp.dps)[0]
    return tau


def write_timeline_csv(timeline, stream, digits=30):
    """Write one row per atomic interval with the columns ``time`` (end of
    the interval), ``layers_fired`` and ``interval_length``."""
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['time', 'layers_fired', 'interval_length'])
    for interval in timeline.intervals:
        writer.writerow([mpmath.nstr(interval.end, digits),
                ';'.join(str(layer) for layer in interval.fired),
                mpmath.nstr(interval.length, digits)])
