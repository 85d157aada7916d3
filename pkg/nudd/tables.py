"""Error-type tables in the grid layout: rows select the first half of the
error vector and columns the second half, each in the order 00, 10, 01,
11 (first component fastest)."""
from nudd.exceptions import *
from nudd.constants import *
from nudd.errortypes import ErrorVector, all_vectors, describe_operator
from nudd.predictor import naive_order, predict_order
from collections import namedtuple
import csv
import os

GridLayout = namedtuple('GridLayout', ['row_title', 'col_title', 'row_labels',
        'col_labels', 'cells'])

FAIL_MARK = 'FAIL'
"""Cell suffix when the fitted order is below the prediction."""
ABOVE_MARK = '+'
"""Cell suffix when the fitted order exceeds the prediction."""


def _bits(vector):
    return ''.join(str(b) for b in vector)


def _title(first, last):
    return ''.join('r%d' % i for i in range(first, last + 1))


def grid_layout(ell):
    """Placement of all ``2**ell`` error vectors.

    Returns:

    :attr:`GridLayout` whose ``cells`` is a list of rows of
    :attr:`ErrorVector`.
    """
    if ell < 1:
        raise LengthMismatch('Grid needs at least one layer.')
    row_bits = (ell + 1) // 2
    col_bits = ell - row_bits
    rows = all_vectors(row_bits)
    cols = all_vectors(col_bits) if col_bits else [()]
    cells = [[ErrorVector(tuple(a) + tuple(b)) for b in cols] for a in rows]
    return GridLayout(_title(1, row_bits),
            _title(row_bits + 1, ell) if col_bits else '',
            [_bits(a) for a in rows],
            [_bits(b) for b in cols] if col_bits else ['value'],
            cells)


def render_grid(ell, cell):
    """Header row and body rows of strings, ``cell(r)`` filling each cell."""
    layout = grid_layout(ell)
    corner = layout.row_title
    if layout.col_title:
        corner += ' \\ ' + layout.col_title
    header = [corner] + layout.col_labels
    body = [[label] + [cell(r) for r in row]
            for label, row in zip(layout.row_labels, layout.cells)]
    return header, body


def markdown_grid(ell, cell):
    header, body = render_grid(ell, cell)
    lines = ['| ' + ' | '.join(header) + ' |',
            '|' + '---|' * len(header)]
    lines.extend('| ' + ' | '.join(row) + ' |' for row in body)
    return '\n'.join(lines) + '\n'


def write_csv_grid(stream, ell, cell):
    header, body = render_grid(ell, cell)
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(body)


def prediction_cell(spec):
    return lambda r: str(predict_order(spec, r))


def naive_cell(spec):
    return lambda r: str(naive_order(spec, r))


def prediction_markdown(spec):
    """Predicted and naive decoupling orders of every error type."""
    orders = ','.join(str(n) for n in spec.orders)
    return ('### Predicted decoupling orders, N = (%s)\n\n%s\n'
            '### Largest anticommuting sequence order, N = (%s)\n\n%s' % (
            orders, markdown_grid(spec.ell, prediction_cell(spec)),
            orders, markdown_grid(spec.ell, naive_cell(spec))))


def order_cell(report):
    """Cell text ``numeric/predicted/naive`` with a suffix mark when the fit
    is below (:attr:`FAIL_MARK`) or above (:attr:`ABOVE_MARK`) the
    prediction."""
    def cell(r):
        if r.is_trivial():
            return '-'
        entry = report.per_error.get(r)
        if entry is None:
            return '?'
        numeric = 'floor' if entry.numeric is None else str(entry.numeric)
        text = '%s/%d/%d' % (numeric, entry.predicted, entry.naive)
        if entry.violated:
            text += ' ' + FAIL_MARK
        elif entry.numeric is not None and entry.numeric > entry.predicted:
            text += ' ' + ABOVE_MARK
        return text
    return cell


def emit_tables(report, output_dir, name='orders'):
    """Write the order report as ``<name>.md`` and ``<name>.csv``.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*report*", "OrderReport", "Fitted and predicted orders."
        "*output_dir*", "string", "Existing directory for both files."
        "*name*", "string", "File name without extension."

    Returns:

    Tuple of the Markdown and CSV paths.

    Raises:

    :attr:`ReportError` if the report has no error types.
    """
    if not report.per_error:
        raise ReportError('Order report has no error types.')
    spec = report.spec
    cell = order_cell(report)

    overall = report.overall
    overall_text = 'floor' if overall.numeric is None else str(overall.numeric)
    failures = len(report.violations())
    lines = [
        '### Decoupling orders, N = (%s)' % ','.join(str(n) for n in spec.orders),
        '',
        'Cells read fitted/predicted/naive. `%s` marks a fit below the '
        'prediction, `%s` a fit above it.' % (FAIL_MARK, ABOVE_MARK),
        '',
        markdown_grid(spec.ell, cell),
        'Overall order from D: fitted %s, predicted %d.' % (overall_text,
                overall.predicted),
        '',
        'Failures: %d' % failures,
        '',
    ]
    markdown_path = os.path.join(output_dir, name + '.md')
    with open(markdown_path, 'w') as stream:
        stream.write('\n'.join(lines))
    csv_path = os.path.join(output_dir, name + '.csv')
    with open(csv_path, 'w', newline='') as stream:
        write_csv_grid(stream, spec.ell, cell)
    return markdown_path, csv_path


def generator_markdown(table, ell):
    """Pauli-string names of a generator table."""
    def cell(r):
        return describe_operator(table[r]) or '?'
    return markdown_grid(ell, cell)
