"""Command line interface.

``nudd schedule``  flattened pulse schedule as CSV.
``nudd predict``   predicted decoupling orders, no simulation.
``nudd coeffs``    vanishing audit of the nested coefficients.
``nudd verify``    property checks of predictor, coefficients and harmonics.
``nudd simulate``  bath sweep, order fits and tables.

Every command writes ``<command>-manifest.json`` into ``--output-dir``.
Exit codes are 0 on success, 2 when a result falls below a predicted bound
and 3 for configuration errors.
"""
from nudd.exceptions import *
from nudd.constants import *
from nudd.coefficients import (coefficient, oracle_coefficient,
        outer_decomposition, random_word, vanishing_profile, zero_threshold)
from nudd.config import load_config, parse_overrides
from nudd.counter import EvaluationCounter
from nudd.errortypes import ErrorVector, generator_table
from nudd.fourier import G1, fourier_profile
from nudd.mpcore import Precision, tolerance
from nudd.predictor import (arrangement_gain, lemma_checks, optimal_arrangement,
        predict_order, predict_overall)
from nudd.presets import GENERATOR_PRESETS, build_generators, build_moos
from nudd.schedule import NuddSpec, build_timeline, write_timeline_csv
from nudd.sweep import fit_orders, nontrivial_vectors, run_sweep, write_sweep_csv
from nudd.tables import generator_markdown, prediction_markdown, \
        prediction_cell, write_csv_grid, emit_tables
from importlib import metadata
import argparse
import csv
import json
import logging
import mpmath
import numpy
import os
import sys

COEFFS_COLUMNS = ['ell', 'orders', 'r', 'n', 'word_count', 'max_abs_F',
        'verdict']
"""Header of the ``coeffs`` CSV."""


def code_version():
    try:
        return metadata.version('nudd')
    except metadata.PackageNotFoundError:
        return 'unknown'


def _orders_type(text):
    try:
        orders = tuple(int(item) for item in text.replace(' ', '').split(',')
                if item)
        NuddSpec(orders)
    except (ValueError, InvalidSpec):
        raise argparse.ArgumentTypeError('expected positive integers such as '
                '2,4,1,6, got %r' % text)
    return orders


def _vector_type(text):
    try:
        return ErrorVector.parse(text)
    except (ValueError, LengthMismatch):
        raise argparse.ArgumentTypeError('expected an error vector such as '
                '1010, got %r' % text)


def write_manifest(output_dir, command, payload):
    """Write ``<command>-manifest.json`` with the code version and norm
    conventions added to ``payload``."""
    manifest = dict(payload)
    manifest['command'] = command
    manifest['version'] = code_version()
    manifest['norms'] = {'D': D_NORM, 'E': E_NORM}
    os.makedirs(output_dir, exist_ok=True)
    path = os.path.join(output_dir, '%s-manifest.json' % command)
    with open(path, 'w') as stream:
        json.dump(manifest, stream, indent=2, sort_keys=True, default=str)
        stream.write('\n')
    return path


def _open_output(path):
    if path in (None, '-'):
        return sys.stdout, False
    return open(path, 'w', newline=''), True


def cmd_schedule(args):
    with Precision(args.digits):
        spec = NuddSpec(args.orders)
        timeline = build_timeline(spec)
        stream, close = _open_output(args.output)
        try:
            write_timeline_csv(timeline, stream)
        finally:
            if close:
                stream.close()
    write_manifest(args.output_dir, 'schedule', {
        'orders': list(spec.orders),
        'digits': args.digits,
        'intervals': len(timeline),
        'pulses': dict((layer, timeline.pulse_total(layer))
                for layer in range(1, spec.ell + 1)),
        'outputs': [args.output or '-'],
    })
    return EXIT_OK


def _arrangement_text(orders):
    arranged, _ = optimal_arrangement(orders)
    lines = ['', '### Arrangement (%s)' % ','.join(str(n) for n in arranged), '']
    changed = [(r, given, best) for r, (given, best)
            in sorted(arrangement_gain(orders).items()) if given != best]
    if not changed:
        lines.append('The given nesting is already optimal.')
    for r, given, best in changed:
        lines.append('- %s: %d -> %d' % (r, given, best))
    return '\n'.join(lines) + '\n'


def cmd_predict(args):
    spec = NuddSpec(args.orders)
    overall = predict_overall(spec)
    text = prediction_markdown(spec)
    text += '\nOverall decoupling order: %d\n' % overall
    if args.arrange:
        text += _arrangement_text(spec.orders)
    if args.generators:
        with Precision(args.digits):
            moos = build_moos(args.generators)
            table = generator_table(moos, build_generators(args.generators))
            text += '\n### Pure error types, %s\n\n' % args.generators
            text += generator_markdown(table, moos.ell)
    sys.stdout.write(text)

    os.makedirs(args.output_dir, exist_ok=True)
    markdown_path = os.path.join(args.output_dir, 'predict.md')
    csv_path = os.path.join(args.output_dir, 'predict.csv')
    with open(markdown_path, 'w') as stream:
        stream.write(text)
    with open(csv_path, 'w', newline='') as stream:
        write_csv_grid(stream, spec.ell, prediction_cell(spec))
    write_manifest(args.output_dir, 'predict', {
        'orders': list(spec.orders),
        'overall': overall,
        'generators': args.generators,
        'outputs': [markdown_path, csv_path],
    })
    return EXIT_OK


def cmd_coeffs(args):
    spec = NuddSpec(args.orders)
    vectors = [args.r] if args.r else nontrivial_vectors(spec.ell)
    counter = EvaluationCounter(args.budget)
    orders_text = ','.join(str(n) for n in spec.orders)
    failures = []
    rows = []
    with Precision(args.digits):
        for r in vectors:
            if len(r) != spec.ell:
                raise ConfigError('Error vector %s does not match %d layers.' %
                        (r, spec.ell))
            predicted = predict_order(spec, r)
            n_max = args.n_max or predicted + 1
            for entry in vanishing_profile(spec, r, n_max, counter):
                verdict = 'vanishes' if entry.vanishes else 'nonzero'
                if entry.n <= predicted and not entry.vanishes:
                    verdict = 'violation'
                    failures.append((r, entry.n))
                    logging.warning('Coefficient of %s at n=%d is %s, '
                            'predicted to vanish up to %d.', r, entry.n,
                            mpmath.nstr(entry.max_abs, 5), predicted)
                rows.append([spec.ell, orders_text,
                        ''.join(str(b) for b in r), entry.n, entry.word_count,
                        mpmath.nstr(entry.max_abs, 20), verdict])

    stream, close = _open_output(args.output)
    try:
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(COEFFS_COLUMNS)
        writer.writerows(rows)
    finally:
        if close:
            stream.close()
    write_manifest(args.output_dir, 'coeffs', {
        'orders': list(spec.orders),
        'digits': args.digits,
        'schema': COEFFS_CSV_SCHEMA,
        'evaluations': counter.count,
        'failures': len(failures),
        'outputs': [args.output or '-'],
    })
    return EXIT_INVARIANT if failures else EXIT_OK


def _check_decomposition(spec, rng, words, max_n):
    failed = 0
    for _ in range(words):
        n = int(rng.integers(1, max_n + 1))
        word = random_word(spec.ell, n, rng)
        direct = coefficient(spec, word)
        split = outer_decomposition(spec, word)
        scale = max(abs(direct), 1 / mpmath.factorial(n))
        if abs(direct - split) > tolerance(COEFFICIENT_ZERO_K) * scale:
            failed += 1
            logging.warning('Outer decomposition differs for word %s.', word)
    return failed


def _check_oracle(spec, rng, words, grid, max_n):
    """Words whose trapezoid error does not fall at second order when the
    grid is doubled."""
    failed = 0
    tried = 0
    attempts = 0
    while tried < words and attempts < 50 * words:
        attempts += 1
        n = int(rng.integers(2, max_n + 1))
        word = random_word(spec.ell, n, rng)
        exact = coefficient(spec, word)
        if abs(exact) <= zero_threshold(n):
            continue
        tried += 1
        coarse = abs(oracle_coefficient(spec, word, grid) - exact)
        fine = abs(oracle_coefficient(spec, word, 2 * grid) - exact)
        if fine <= zero_threshold(n):
            continue
        observed = float(mpmath.log(coarse / fine, 2))
        if observed < 1.9:
            failed += 1
            logging.warning('Oracle order %.3f for word %s.', observed, word)
    return failed


def cmd_verify(args):
    spec = NuddSpec(args.orders)
    results = {}
    with Precision(args.digits):
        rng = numpy.random.default_rng(args.seed)
        lemma = lemma_checks(spec, args.trials, args.seed)
        results['subadditivity_violations'] = len(lemma.subadditivity_violations)
        results['odd_minimum'] = lemma.odd_minimum_status

        if spec.ell >= 2:
            results['decomposition_failures'] = _check_decomposition(spec, rng,
                    args.words, args.max_n)

        selectors = list(range(1, spec.ell + 1)) + [G1] + \
                list(nontrivial_vectors(spec.ell))
        harmonics = [selector for selector in selectors
                if not fourier_profile(spec, selector).passed]
        results['harmonic_failures'] = [str(selector) for selector in harmonics]

        results['oracle_failures'] = _check_oracle(spec, rng, args.oracle_words,
                args.grid, args.max_n)

    passed = (lemma.passed and not results.get('decomposition_failures') and
            not harmonics and not results['oracle_failures'])
    for key in sorted(results):
        sys.stdout.write('%s: %s\n' % (key, results[key]))
    sys.stdout.write('verify %s\n' % ('passed' if passed else 'FAILED'))
    results.update({'orders': list(spec.orders), 'digits': args.digits,
            'seed': args.seed, 'trials': args.trials, 'passed': passed})
    write_manifest(args.output_dir, 'verify', results)
    return EXIT_OK if passed else EXIT_INVARIANT


def _point_cache(url):
    try:
        from nudd.database import connect_database
        from nudd.sql_cache import SQLPointCache
    except (ImportError, SQLEngineNotAvailable):
        raise ConfigError('cache_url needs SQLAlchemy installed.')
    connect_database(url)
    return SQLPointCache()


def cmd_simulate(args):
    overrides = {}
    if args.fast:
        overrides['realizations'] = FAST_REALIZATIONS
    if args.workers:
        overrides['workers'] = args.workers
    if args.output_dir:
        overrides['output_dir'] = args.output_dir
    overrides.update(parse_overrides(args.overrides))
    config = load_config(args.config, overrides).validate()
    os.makedirs(config.output_dir, exist_ok=True)
    cache = _point_cache(config.cache_url) if config.cache_url else None

    result = run_sweep(config, cache)
    sweep_path = os.path.join(config.output_dir, 'sweep.csv')
    with open(sweep_path, 'w', newline='') as stream:
        write_sweep_csv(result, stream)
    report = fit_orders(result)
    markdown_path, csv_path = emit_tables(report, config.output_dir)

    overall = report.overall
    violations = report.violations()
    write_manifest(config.output_dir, 'simulate', {
        'config': config.as_dict(),
        'seed': config.seed,
        'digits': config.digits,
        'digest': config.digest(),
        'schema': SWEEP_CSV_SCHEMA,
        'columns': result.columns,
        'overall': {
            'slope': None if overall.fit is None else overall.fit.slope,
            'order': overall.numeric,
            'predicted': overall.predicted,
        },
        'failures': [str(entry.r or 'D') for entry in violations],
        'outputs': [sweep_path, markdown_path, csv_path],
    })
    return EXIT_INVARIANT if violations else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog='nudd',
            description='Nested Uhrig dynamical decoupling laboratory.')
    parser.add_argument('-v', '--verbose', action='store_true',
            help='log at debug level')
    commands = parser.add_subparsers(dest='command', required=True)

    def add(name, handler, help, orders=True):
        sub = commands.add_parser(name, help=help)
        if orders:
            sub.add_argument('--orders', type=_orders_type, required=True,
                    help='sequence orders, innermost first, e.g. 2,4,1,6')
            sub.add_argument('--digits', type=int, default=DEFAULT_DIGITS,
                    help='working precision in decimal digits')
            sub.add_argument('--output-dir', default='.',
                    help='directory for outputs and the manifest')
        sub.set_defaults(handler=handler)
        return sub

    sub = add('schedule', cmd_schedule, 'write the flattened pulse schedule')
    sub.add_argument('--output', help='CSV path, standard output if omitted')

    sub = add('predict', cmd_predict, 'predicted decoupling orders')
    sub.add_argument('--generators', choices=sorted(GENERATOR_PRESETS),
            help='also tabulate the pure error types of a preset')
    sub.add_argument('--arrange', action='store_true',
            help='also report the optimal layer arrangement')

    sub = add('coeffs', cmd_coeffs, 'vanishing audit of nested coefficients')
    sub.add_argument('--r', type=_vector_type,
            help='single error vector, every nontrivial one if omitted')
    sub.add_argument('--n-max', type=int,
            help='longest word, predicted order plus one if omitted')
    sub.add_argument('--budget', type=int, default=EVALUATION_BUDGET,
            help='largest number of coefficient evaluations')
    sub.add_argument('--output', help='CSV path, standard output if omitted')

    sub = add('verify', cmd_verify, 'property checks without simulation')
    sub.add_argument('--trials', type=int, default=1000,
            help='random cluster decompositions for the lemma checks')
    sub.add_argument('--seed', type=int, default=0)
    sub.add_argument('--words', type=int, default=200,
            help='random words for the outer decomposition identity')
    sub.add_argument('--oracle-words', type=int, default=20,
            help='random nonvanishing words for the quadrature oracle')
    sub.add_argument('--grid', type=int, default=8,
            help='coarse trapezoid steps per atomic interval')
    sub.add_argument('--max-n', type=int, default=4,
            help='longest random word')

    sub = add('simulate', cmd_simulate, 'bath sweep with order fits',
            orders=False)
    sub.add_argument('--config', help='key = value config file')
    sub.add_argument('--fast', action='store_true',
            help='use %d realizations' % FAST_REALIZATIONS)
    sub.add_argument('--workers', type=int, help='worker processes')
    sub.add_argument('--output-dir', help='overrides output_dir')
    sub.add_argument('overrides', nargs='*', metavar='key=value',
            help='config overrides')
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
            format='%(levelname)s %(message)s')
    try:
        return args.handler(args)
    except (ConfigError, InvalidSpec, InvalidMoos, BudgetExceeded) as exception:
        logging.error('%s', exception)
        return EXIT_CONFIG
    except InvariantViolation as exception:
        logging.error('%s', exception)
        return EXIT_INVARIANT


if __name__ == '__main__':
    sys.exit(main())
