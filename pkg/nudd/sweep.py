"""Simulation sweeps over the minimum pulse interval and log-log fits of the
decoupling orders.

Realizations, or single points when there are more workers than pending
realizations, are computed in worker processes and returned as decimal
strings. Means are taken in realization order, so the output does not depend
on the number of workers.
"""
from nudd.exceptions import *
from nudd.constants import *
from nudd.errortypes import all_vectors
from nudd.mpcore import Precision
from nudd.predictor import naive_order, predict_order, predict_overall
from nudd.presets import build_moos
from nudd.schedule import min_pulse_interval
from nudd.simulator import BathSpec, assemble_hamiltonian, run_point
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import csv
import logging
import mpmath
from mpmath import mpf
import numpy

WINDOW_SLACK = 1e-9
"""Slack on the fit window bounds, in decades."""


def vector_bits(r):
    return ''.join(str(b) for b in r)


def nontrivial_vectors(ell):
    return [r for r in all_vectors(ell) if not r.is_trivial()]


def sweep_columns(ell):
    """Fixed CSV header of a sweep with ``ell`` layers."""
    return ['log10_jtau', 'tau', 'T', 'D_mean'] + \
            ['E_' + vector_bits(r) for r in nontrivial_vectors(ell)]


def bath_for(config):
    coupling, pure_bath = config.couplings()
    return BathSpec(config.seed, config.n_bath_spins, coupling, pure_bath,
            config.normalize_bath)


def _record(result, digits):
    return {
        'D': mpmath.nstr(result.D, digits),
        'E': dict((vector_bits(r), mpmath.nstr(value, digits))
                for r, value in result.E.items()),
    }


def simulate_realization(config, realization):
    """Evaluate every sweep point of one bath realization.

    Returns:

    List of point records ``{'D': text, 'E': {bits: text}}`` in grid order.
    """
    with Precision(config.digits):
        moos = build_moos(config.moos)
        spec = config.spec
        model = assemble_hamiltonian(bath_for(config), realization, moos)
        records = []
        for x, tau in config.grid():
            result = run_point(model, spec, moos, tau)
            records.append(_record(result, config.digits))
            logging.debug('Realization %d log10(J tau)=%s D=%s.', realization,
                    mpmath.nstr(x, 6), mpmath.nstr(result.D, 6))
    logging.info('Realization %d of %r finished.', realization, spec)
    return records


_MODELS = {}
"""Per-process models keyed by config digest and realization."""


def simulate_point(config, realization, index):
    """Record of a single sweep point. The model of the realization is built
    once per process and reused for its other points."""
    with Precision(config.digits):
        moos = build_moos(config.moos)
        key = (config.digest(), realization)
        if key not in _MODELS:
            _MODELS.clear()
            _MODELS[key] = assemble_hamiltonian(bath_for(config), realization,
                    moos)
        x, tau = config.grid()[index]
        result = run_point(_MODELS[key], config.spec, moos, tau)
        return _record(result, config.digits)


@dataclass(frozen=True)
class SweepRow(object):
    log10_jtau: object
    tau: object
    T: object
    D: object
    E: dict = field(default_factory=dict)


class SweepResult(object):
    """Mean measures per sweep point.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*config*", "SweepConfig", "Config the sweep ran with."
        "*rows*", "list", ":attr:`SweepRow` per point, ascending tau."
    """
    config = None
    """The :attr:`SweepConfig`."""
    spec = None
    """Its :attr:`NuddSpec`."""
    rows = None
    """List of :attr:`SweepRow`."""

    def __init__(self, config, rows):
        self.config = config
        self.spec = config.spec
        self.rows = list(rows)

    @property
    def columns(self):
        return sweep_columns(self.spec.ell)


def _restore(cache, digest, realization, count):
    if cache is None:
        return None
    records = cache.get_realization(digest, realization, count)
    if records is not None:
        logging.info('Realization %d restored from cache.', realization)
    return records


def run_sweep(config, cache=None):
    """Simulate every sweep point of ``config`` and average over bath
    realizations.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*config*", "SweepConfig", "Sweep settings, validated here."
        "*cache*", "PointCache", "Optional store of finished realizations."

    Returns:

    :attr:`SweepResult`.

    Raises:

    :attr:`ConfigError` before any compute if the config is invalid.
    """
    config.validate()
    digest = config.digest()
    with Precision(config.digits):
        build_moos(config.moos)
        grid = config.grid()
        shortest = min_pulse_interval(config.spec)

    logging.info('Sweep %r over %d points, %d realizations.', config.spec,
            len(grid), config.realizations)
    records = {}
    pending = []
    for realization in range(config.realizations):
        restored = _restore(cache, digest, realization, len(grid))
        if restored is None:
            pending.append(realization)
        else:
            records[realization] = restored

    def store(realization, result):
        records[realization] = result
        if cache is not None:
            cache.set_realization(digest, realization, result)

    if config.workers > 1 and len(pending) >= config.workers:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = [(realization, pool.submit(simulate_realization,
                    config, realization)) for realization in pending]
            for realization, future in futures:
                store(realization, future.result())
    elif config.workers > 1 and pending:
        # Fewer realizations than workers, split into single points.
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = dict(((realization, index), pool.submit(simulate_point,
                    config, realization, index)) for realization in pending
                    for index in range(len(grid)))
            for realization in pending:
                store(realization, [futures[realization, index].result()
                        for index in range(len(grid))])
    else:
        for realization in pending:
            store(realization, simulate_realization(config, realization))

    count = config.realizations
    vectors = nontrivial_vectors(config.spec.ell)
    rows = []
    with Precision(config.digits):
        for index, (x, tau) in enumerate(grid):
            points = [records[realization][index] for realization in range(count)]
            d_mean = mpmath.fsum(mpf(p['D']) for p in points) / count
            e_mean = {}
            for r in vectors:
                key = vector_bits(r)
                if all(key in p['E'] for p in points):
                    e_mean[r] = mpmath.fsum(mpf(p['E'][key]) for p in points) / count
            rows.append(SweepRow(x, tau, tau / shortest, d_mean, e_mean))
    return SweepResult(config, rows)


def write_sweep_csv(result, stream, digits=30):
    """One row per sweep point under the fixed :func:`sweep_columns` header.
    Missing error measures are left empty."""
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(result.columns)
    vectors = nontrivial_vectors(result.spec.ell)
    for row in result.rows:
        values = [row.log10_jtau, row.tau, row.T, row.D]
        cells = [mpmath.nstr(value, digits) for value in values]
        cells.extend(mpmath.nstr(row.E[r], digits) if r in row.E else ''
                for r in vectors)
        writer.writerow(cells)


@dataclass(frozen=True)
class Fit(object):
    slope: float
    intercept: float
    residual: float
    points: int

    @property
    def order(self):
        """Nearest integer slope minus one."""
        return int(round(self.slope)) - 1

    @property
    def confident(self):
        return (abs(self.slope - round(self.slope)) <= FIT_SLOPE_SLACK and
                self.residual <= FIT_RESIDUAL_MAX)


def fit_slope(xs, values, window, floor):
    """Least-squares line through ``(x, log10 value)`` inside ``window``.
    Values at or below ``floor`` are dropped.

    Returns:

    :attr:`Fit`, or None with fewer than 3 usable points.
    """
    low, high = window
    xs_used = []
    ys_used = []
    for x, value in zip(xs, values):
        if value is None or not value > floor:
            continue
        if low - WINDOW_SLACK <= float(x) <= high + WINDOW_SLACK:
            xs_used.append(float(x))
            ys_used.append(float(mpmath.log10(value)))
    if len(xs_used) < 3:
        return None
    x = numpy.array(xs_used)
    y = numpy.array(ys_used)
    slope, intercept = numpy.polyfit(x, y, 1)
    residual = numpy.sqrt(numpy.mean((y - (slope * x + intercept)) ** 2))
    return Fit(float(slope), float(intercept), float(residual), len(xs_used))


@dataclass(frozen=True)
class ErrorOrder(object):
    r: object
    fit: object
    predicted: int
    naive: int = None

    @property
    def numeric(self):
        """Fitted order, None below the precision floor."""
        return None if self.fit is None else self.fit.order

    @property
    def below_floor(self):
        return self.fit is None

    @property
    def violated(self):
        return self.numeric is not None and self.numeric < self.predicted


class OrderReport(object):
    """Fitted and predicted decoupling orders of one sweep."""
    spec = None
    """The :attr:`NuddSpec`."""
    per_error = None
    """Dict of nontrivial :attr:`ErrorVector` to :attr:`ErrorOrder`."""
    overall = None
    """:attr:`ErrorOrder` of ``D`` against the smallest sequence order."""

    def __init__(self, spec, per_error, overall):
        self.spec = spec
        self.per_error = dict(per_error)
        self.overall = overall

    def violations(self):
        """Entries fitted below their predicted order."""
        entries = [self.overall] + list(self.per_error.values())
        return [entry for entry in entries if entry.violated]

    def unconfident(self):
        return [entry for entry in [self.overall] + list(self.per_error.values())
                if entry.fit is not None and not entry.fit.confident]


def fit_orders(result, config=None):
    """Fit the decoupling order of ``D`` and of every ``E_r`` over the fit
    window.

    Returns:

    :attr:`OrderReport`.

    Raises:

    :attr:`ReportError` for a sweep without rows.
    """
    config = config or result.config
    if not result.rows:
        raise ReportError('Sweep has no rows to fit.')
    spec = result.spec
    window = (config.fit_min, config.fit_max)
    floor = mpf(10) ** (FIT_FLOOR_K - config.digits)
    xs = [row.log10_jtau for row in result.rows]

    overall = ErrorOrder(None,
            fit_slope(xs, [row.D for row in result.rows], window, floor),
            predict_overall(spec), min(spec.orders))
    per_error = {}
    for r in nontrivial_vectors(spec.ell):
        fit = fit_slope(xs, [row.E.get(r) for row in result.rows], window, floor)
        per_error[r] = ErrorOrder(r, fit, predict_order(spec, r),
                naive_order(spec, r))
    report = OrderReport(spec, per_error, overall)

    for entry in report.unconfident():
        logging.warning('Fit for %s is not confident: slope %.3f, residual '
                '%.3f.', entry.r or 'D', entry.fit.slope, entry.fit.residual)
    for entry in report.violations():
        logging.warning('Fitted order %d of %s is below the predicted %d.',
                entry.numeric, entry.r or 'D', entry.predicted)
    return report
