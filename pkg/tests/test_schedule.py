from nudd.exceptions import *
from nudd.schedule import (NuddSpec, build_timeline, min_pulse_interval,
        modulation, nudd_timing, udd_fractions, udd_intervals,
        write_timeline_csv)
from nudd.mpcore import tolerance
from functools import reduce
import io
import mpmath
from mpmath import mpf
import pytest


@pytest.mark.parametrize('orders', [(), (0,), (2, -1), (True,), (1.5,)])
def test_invalid_orders(orders):
    with pytest.raises(InvalidSpec):
        NuddSpec(orders)


def test_moos_labels_must_match_layers():
    with pytest.raises(InvalidSpec):
        NuddSpec((1, 2), moos_labels=('IZ',))


def test_udd_fractions():
    assert abs(udd_fractions(1)[0] - mpf(1) / 2) < tolerance(2)
    quarter, three_quarters = udd_fractions(2)
    assert abs(quarter - mpf(1) / 4) < tolerance(2)
    assert abs(three_quarters - mpf(3) / 4) < tolerance(2)


@pytest.mark.parametrize('order', [1, 2, 5, 8])
def test_udd_intervals_sum_and_symmetry(order):
    lengths = udd_intervals(order)
    assert len(lengths) == order + 1
    assert abs(mpmath.fsum(lengths) - 1) < tolerance(5)
    for j in range(order + 1):
        assert abs(lengths[j] - lengths[order - j]) < tolerance(5)


def test_nudd_timing_two_layers():
    spec = NuddSpec((1, 1))
    assert abs(nudd_timing(spec, (1, 1)) - mpf(1) / 4) < tolerance(2)
    assert abs(nudd_timing(spec, (1, 2)) - mpf(1) / 2) < tolerance(2)
    assert abs(nudd_timing(spec, (2, 1)) - mpf(3) / 4) < tolerance(2)
    assert abs(nudd_timing(spec, (2, 2)) - 1) < tolerance(2)


def test_nudd_timing_single_layer_is_udd():
    spec = NuddSpec((3,))
    for j, fraction in enumerate(udd_fractions(3), 1):
        assert nudd_timing(spec, (j,)) == fraction


@pytest.mark.parametrize('index', [(0, 1), (3, 1), (1,), (1, 1, 1)])
def test_nudd_timing_bad_index(index):
    with pytest.raises(InvalidIndex):
        nudd_timing(NuddSpec((1, 1)), index)


def test_timeline_of_four_layer_sequence():
    spec = NuddSpec((2, 4, 1, 6))
    timeline = build_timeline(spec)
    assert len(timeline) == 210 == spec.interval_count()
    intervals = timeline.intervals
    assert intervals[0].start == 0
    assert abs(intervals[-1].end - 1) < tolerance(5)
    for previous, current in zip(intervals, intervals[1:]):
        assert current.start == previous.end
        assert current.length > 0


@pytest.mark.parametrize('orders', [(2, 3), (1, 1), (3, 2, 1), (2, 4, 1, 6)])
def test_pulse_totals_are_even(orders):
    spec = NuddSpec(orders)
    timeline = build_timeline(spec)
    for layer in range(1, spec.ell + 1):
        cycles = reduce(lambda a, b: a * (b + 1), orders[layer:], 1)
        total = timeline.pulse_total(layer)
        assert total == spec.pulse_count(layer) * cycles
        assert total % 2 == 0


def test_events_merge_coincident_layers():
    timeline = build_timeline(NuddSpec((1, 1)))
    assert [event.layers for event in timeline.events] == \
            [(1,), (1, 2), (1,), (1, 2)]


def test_locate_and_modulation():
    spec = NuddSpec((1,))
    timeline = build_timeline(spec)
    assert timeline.locate(0) is timeline.intervals[0]
    assert modulation(spec, 1, mpf('0.25')) == 1
    assert modulation(spec, 1, mpf('0.75')) == -1
    for eta in (-mpf('0.1'), 1):
        with pytest.raises(OutOfRange):
            timeline.locate(eta)
    with pytest.raises(InvalidIndex):
        modulation(spec, 2, mpf('0.5'))


def test_min_pulse_interval():
    assert abs(min_pulse_interval(NuddSpec((2,))) - mpf(1) / 4) < tolerance(2)
    assert abs(min_pulse_interval(NuddSpec((1, 2))) - mpf(1) / 8) < tolerance(2)


def test_write_timeline_csv():
    stream = io.StringIO()
    write_timeline_csv(build_timeline(NuddSpec((1, 1))), stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == 'time,layers_fired,interval_length'
    assert len(lines) == 5
    assert lines[2].split(',')[1] == '1;2'
