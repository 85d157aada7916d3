"""Configurable-precision scalars and the dense complex linear algebra used by
every other module.

All scalars are :mod:`mpmath` numbers at the ambient working precision, which
is selected with :class:`Precision`. Tolerances are always relative to that
precision, ``10**(-digits + k)``.
"""
from nudd.exceptions import *
from nudd.constants import *
from collections import namedtuple
import logging
import mpmath
from mpmath import mpf, mpc

ZERO = mpc(0)
ONE = mpc(1)

Norms = namedtuple('Norms', ['frobenius', 'nuclear', 'spectral'])


class Precision(object):
    """Working precision context. Every scalar created inside the ``with``
    block carries ``decimal_digits`` significant digits.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*decimal_digits*", "int", "Working precision, at least 30."
    """
    decimal_digits = DEFAULT_DIGITS
    """Number of significant decimal digits."""
    _manager = None

    def __init__(self, decimal_digits=DEFAULT_DIGITS):
        if int(decimal_digits) < MIN_DIGITS:
            raise ValueError('Precision must be at least %d digits, got %r.' %
                    (MIN_DIGITS, decimal_digits))
        self.decimal_digits = int(decimal_digits)

    def __enter__(self):
        self._manager = mpmath.workdps(self.decimal_digits)
        self._manager.__enter__()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        return self._manager.__exit__(exc_type, exc_val, exc_tb)

    def __repr__(self):
        return 'Precision(%d)' % self.decimal_digits


def working_digits():
    """Ambient working precision in decimal digits."""
    return mpmath.mp.dps


def tolerance(k):
    """Returns ``10**(-digits + k)`` at the ambient precision."""
    return mpf(10) ** (k - mpmath.mp.dps)


class CMatrix(object):
    """Dense complex matrix with row-major entries. Dimensions and entries
    never change after construction.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*entries*", "sequence", "Rows of numbers convertible to mpc."
        "*hermitian*", "bool", "Tag the matrix as Hermitian. The input is
        checked and replaced by its exact Hermitian part."

    Raises:

    :attr:`DimensionMismatch` for empty or ragged input, :attr:`NotHermitian`
    if tagged input is not Hermitian to tolerance.
    """
    rows = None
    """Number of rows."""
    cols = None
    """Number of columns."""
    hermitian = False
    """True if the matrix is tagged Hermitian."""
    _data = None

    def __init__(self, entries, hermitian=False):
        data = tuple(tuple(mpc(x) for x in row) for row in entries)
        if not data or not data[0]:
            raise DimensionMismatch('Matrix must have at least one entry.')
        width = len(data[0])
        for row in data:
            if len(row) != width:
                raise DimensionMismatch('Ragged matrix rows.')

        self.rows = len(data)
        self.cols = width
        self._data = data

        if hermitian:
            herm = self.hermitian_part()
            defect = (self - herm).max_abs()
            if defect > tolerance(HERMITIAN_TOL_K) * max(self.max_abs(), 1):
                raise NotHermitian('Matrix tagged Hermitian deviates by %s.' %
                        mpmath.nstr(defect, 5))
            self._data = herm._data
            self.hermitian = True

    @classmethod
    def _wrap(cls, data, hermitian=False):
        matrix = cls.__new__(cls)
        matrix._data = tuple(tuple(row) for row in data)
        matrix.rows = len(matrix._data)
        matrix.cols = len(matrix._data[0])
        matrix.hermitian = hermitian
        return matrix

    @classmethod
    def identity(cls, n):
        return cls._wrap([[ONE if i == j else ZERO for j in range(n)]
                for i in range(n)], hermitian=True)

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls._wrap([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, values):
        values = [mpc(x) for x in values]
        n = len(values)
        return cls._wrap([[values[i] if i == j else ZERO for j in range(n)]
                for i in range(n)])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, index):
        i, j = index
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def tolist(self):
        return [list(row) for row in self._data]

    def dagger(self):
        """Conjugate transpose."""
        return CMatrix._wrap([[mpmath.conj(x) for x in col]
                for col in zip(*self._data)], hermitian=self.hermitian)

    def hermitian_part(self):
        """Returns ``(A + A^dagger) / 2`` tagged Hermitian."""
        if self.rows != self.cols:
            raise DimensionMismatch('Hermitian part needs a square matrix.')
        n = self.rows
        data = self._data
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            out[i][i] = mpc(data[i][i].real)
            for j in range(i + 1, n):
                value = (data[i][j] + mpmath.conj(data[j][i])) / 2
                out[i][j] = value
                out[j][i] = mpmath.conj(value)
        return CMatrix._wrap(out, hermitian=True)

    def trace(self):
        return mpmath.fsum(self._data[i][i] for i in range(min(self.shape)))

    def max_abs(self):
        """Largest entry modulus, the ``max`` norm."""
        return max(abs(x) for row in self._data for x in row)

    def scale(self, factor):
        factor = mpmath.mpmathify(factor)
        keep = self.hermitian and not mpmath.im(factor)
        return CMatrix._wrap([[factor * x for x in row] for row in self._data],
                hermitian=keep)

    def close_to(self, other, tol):
        return (self - other).max_abs() <= tol

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch('Shapes %r and %r differ.' %
                    (self.shape, other.shape))

    def __add__(self, other):
        self._check_same_shape(other)
        return CMatrix._wrap([[x + y for x, y in zip(r, s)]
                for r, s in zip(self._data, other._data)],
                hermitian=self.hermitian and other.hermitian)

    def __sub__(self, other):
        self._check_same_shape(other)
        return CMatrix._wrap([[x - y for x, y in zip(r, s)]
                for r, s in zip(self._data, other._data)],
                hermitian=self.hermitian and other.hermitian)

    def __neg__(self):
        return CMatrix._wrap([[-x for x in row] for row in self._data],
                hermitian=self.hermitian)

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return matmul(self, other)

    def __repr__(self):
        return 'CMatrix(%dx%d%s)' % (self.rows, self.cols,
                ', hermitian' if self.hermitian else '')


def matmul(a, b):
    """Matrix product with one rounding per entry (``mpmath.fdot``).
    Exact zeros in ``a`` are skipped, so monomial matrices such as Pauli
    strings multiply in quadratic time.

    Raises:

    :attr:`DimensionMismatch` if ``a.cols != b.rows``.
    """
    if a.cols != b.rows:
        raise DimensionMismatch('Cannot multiply %dx%d by %dx%d.' %
                (a.rows, a.cols, b.rows, b.cols))

    columns = list(zip(*b._data))
    out = []
    for row in a._data:
        nonzero = [(k, x) for k, x in enumerate(row) if x]
        if not nonzero:
            out.append((ZERO,) * b.cols)
        elif len(nonzero) == 1:
            k, x = nonzero[0]
            out.append(tuple(x * y for y in b._data[k]))
        else:
            ks = [k for k, _ in nonzero]
            xs = [x for _, x in nonzero]
            out.append(tuple(mpmath.fdot(xs, [col[k] for k in ks])
                    for col in columns))
    return CMatrix._wrap(out)


def kron(a, b):
    """Kronecker product, ``a``'s index slowest."""
    out = []
    for row_a in a._data:
        for row_b in b._data:
            out.append([x * y for x in row_a for y in row_b])
    return CMatrix._wrap(out, hermitian=a.hermitian and b.hermitian)


def partial_trace_system(u, dim_system, dim_bath):
    """Trace out the system factor of a matrix on system (x) bath with the
    system index slowest.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*u*", "CMatrix", "Square matrix of size dim_system*dim_bath."
        "*dim_system*", "int", "System dimension."
        "*dim_bath*", "int", "Bath dimension."

    Returns:

    ``dim_bath x dim_bath`` :attr:`CMatrix`.
    """
    size = dim_system * dim_bath
    if u.rows != size or u.cols != size:
        raise DimensionMismatch('Expected %dx%d matrix, got %dx%d.' %
                (size, size, u.rows, u.cols))
    data = u._data
    out = [[mpmath.fsum(data[s * dim_bath + k][s * dim_bath + l]
            for s in range(dim_system)) for l in range(dim_bath)]
            for k in range(dim_bath)]
    return CMatrix._wrap(out, hermitian=u.hermitian)


def partial_trace_product(a, b, dim_system, dim_bath):
    """``Tr_S(A B)`` without forming the full product."""
    size = dim_system * dim_bath
    if a.shape != (size, size) or b.shape != (size, size):
        raise DimensionMismatch('Expected two %dx%d matrices.' % (size, size))
    columns = list(zip(*b._data))
    out = []
    for k in range(dim_bath):
        row = []
        for l in range(dim_bath):
            pairs = []
            for s in range(dim_system):
                pairs.extend(zip(a._data[s * dim_bath + k],
                        columns[s * dim_bath + l]))
            row.append(mpmath.fdot(pairs))
        out.append(row)
    return CMatrix._wrap(out)


def hermitian_eig(h):
    """Eigen decomposition of a Hermitian matrix by cyclic complex Jacobi
    rotations.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*h*", "CMatrix", "Hermitian matrix."

    Returns:

    Tuple ``(eigenvalues, vectors)``, eigenvalues ascending as a list of
    mpf, eigenvectors as the columns of a unitary :attr:`CMatrix`.

    Raises:

    :attr:`NotHermitian` if ``h`` is not Hermitian to tolerance,
    :attr:`ConvergenceError` if the sweep limit is reached.
    """
    if h.rows != h.cols:
        raise DimensionMismatch('Eigen decomposition needs a square matrix.')
    n = h.rows
    scale = h.max_abs()
    if not h.hermitian:
        herm = h.hermitian_part()
        if (h - herm).max_abs() > tolerance(HERMITIAN_TOL_K) * max(scale, 1):
            raise NotHermitian('Matrix is not Hermitian.')
        h = herm

    a = [list(row) for row in h._data]
    v = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]

    if scale == 0 or n == 1:
        values = [mpf(a[i][i].real) for i in range(n)]
        return values, CMatrix._wrap(v)

    threshold = tolerance(EIG_OFFDIAG_TOL_K) * scale
    conj = mpmath.conj
    sqrt = mpmath.sqrt

    for sweep in range(JACOBI_MAX_SWEEPS):
        off = max(abs(a[p][q]) for p in range(n) for q in range(p + 1, n))
        if off < threshold:
            logging.debug('Jacobi converged after %d sweeps (n=%d).', sweep, n)
            break

        for p in range(n - 1):
            for q in range(p + 1, n):
                beta = a[p][q]
                b = abs(beta)
                if b < threshold:
                    continue
                omega = conj(beta) / b
                alpha = a[p][p].real
                gamma = a[q][q].real
                theta = (gamma - alpha) / (2 * b)
                if theta == 0:
                    t = mpf(1)
                else:
                    t = mpmath.sign(theta) / (abs(theta) + sqrt(theta * theta + 1))
                c = 1 / sqrt(t * t + 1)
                s = t * c
                g_qp = -s * omega
                g_qq = c * omega
                h_pq = conj(g_qp)
                h_qq = conj(g_qq)

                for row in a:
                    x, y = row[p], row[q]
                    row[p] = x * c + y * g_qp
                    row[q] = x * s + y * g_qq
                row_p, row_q = a[p], a[q]
                for k in range(n):
                    x, y = row_p[k], row_q[k]
                    row_p[k] = c * x + h_pq * y
                    row_q[k] = s * x + h_qq * y
                row_p[q] = ZERO
                row_q[p] = ZERO
                row_p[p] = mpc(row_p[p].real)
                row_q[q] = mpc(row_q[q].real)

                for row in v:
                    x, y = row[p], row[q]
                    row[p] = x * c + y * g_qp
                    row[q] = x * s + y * g_qq
    else:
        raise ConvergenceError('Jacobi rotations did not converge in %d '
                'sweeps.' % JACOBI_MAX_SWEEPS)

    order = sorted(range(n), key=lambda i: a[i][i].real)
    values = [mpf(a[i][i].real) for i in order]
    vectors = CMatrix._wrap([[row[i] for i in order] for row in v])
    return values, vectors


def unitary_from_eig(values, vectors, duration):
    """Returns ``V diag(exp(-i lambda t)) V^dagger``."""
    phases = [mpmath.expj(-value * duration) for value in values]
    scaled = CMatrix._wrap([[x * phase for x, phase in zip(row, phases)]
            for row in vectors._data])
    return matmul(scaled, vectors.dagger())


def singular_values(a):
    """Singular values in nonincreasing order, the square roots of the
    eigenvalues of ``A^dagger A`` clamped at zero."""
    gram = matmul(a.dagger(), a).hermitian_part()
    values, _ = hermitian_eig(gram)
    return sorted((mpmath.sqrt(max(value, 0)) for value in values),
            reverse=True)


def frobenius(a):
    """Square root of the sum of squared entry moduli."""
    return mpmath.sqrt(mpmath.fsum(x.real ** 2 + x.imag ** 2
            for row in a._data for x in row))


def norms(a):
    """Frobenius, nuclear (sum of singular values) and spectral norms.

    Returns:

    :attr:`Norms` named tuple.
    """
    sigma = singular_values(a)
    return Norms(frobenius(a), mpmath.fsum(sigma), sigma[0])


def unitarity_defect(u):
    """Returns ``max|U^dagger U - I|``."""
    return (matmul(u.dagger(), u) - CMatrix.identity(u.rows)).max_abs()
