"""Control operator sets, error vectors and the partition of a Hamiltonian
into error types.

An error vector ``r`` records, for every control operator ``Omega_i``,
whether an operator anticommutes (``r_i = 1``) or commutes (``r_i = 0``)
with it. Error vectors add componentwise modulo 2.
"""
from nudd.exceptions import *
from nudd.constants import *
from nudd.mpcore import CMatrix, matmul, kron, tolerance, unitarity_defect
from itertools import product
import mpmath


class ErrorVector(tuple):
    """Bit vector ``(r_1, ..., r_ell)``, layer 1 first."""

    def __new__(cls, bits):
        bits = tuple(int(b) for b in bits)
        if not bits:
            raise LengthMismatch('Error vector needs at least one component.')
        for b in bits:
            if b not in (0, 1):
                raise ValueError('Error vector bits must be 0 or 1, got %r.' %
                        (bits,))
        return tuple.__new__(cls, bits)

    @classmethod
    def parse(cls, text):
        """Parse ``1010``, ``1,0,1,0`` or ``(1,0,1,0)``."""
        digits = [c for c in str(text) if c in '01']
        return cls(digits)

    @classmethod
    def zero(cls, ell):
        return cls([0] * ell)

    @classmethod
    def unit(cls, ell, layer):
        """Vector with a single 1 at ``layer`` (1-indexed)."""
        return cls([1 if i == layer - 1 else 0 for i in range(ell)])

    @property
    def ell(self):
        return len(self)

    def is_trivial(self):
        return not any(self)

    def __xor__(self, other):
        return xor(self, other)

    def __str__(self):
        return '(%s)' % ','.join(str(b) for b in self)

    def __repr__(self):
        return 'ErrorVector(%s)' % ''.join(str(b) for b in self)


class Mixed(object):
    """Classification result of an operator with more than one error type."""

    def __repr__(self):
        return 'MIXED'

MIXED = Mixed()


def xor(a, b):
    """Componentwise sum modulo 2.

    Raises:

    :attr:`LengthMismatch` if the vectors differ in length.
    """
    if len(a) != len(b):
        raise LengthMismatch('Cannot add error vectors of lengths %d and %d.' %
                (len(a), len(b)))
    return ErrorVector(x ^ y for x, y in zip(a, b))


def all_vectors(ell):
    """All ``2**ell`` error vectors, ``r_1`` varying fastest."""
    return [ErrorVector((value >> i) & 1 for i in range(ell))
            for value in range(2 ** ell)]


_PAULI_ENTRIES = {
    'I': ((1, 0), (0, 1)),
    'X': ((0, 1), (1, 0)),
    'Y': ((0, -1j), (1j, 0)),
    'Z': ((1, 0), (0, -1)),
}


def pauli(label):
    """Single-qubit Pauli matrix for ``I``, ``X``, ``Y`` or ``Z``."""
    try:
        return CMatrix(_PAULI_ENTRIES[label.upper()], hermitian=True)
    except KeyError:
        raise ValueError('Unknown Pauli label %r.' % (label,))


def pauli_string(labels):
    """Tensor product of Pauli matrices, first label slowest."""
    if not labels:
        raise ValueError('Empty Pauli string.')
    matrix = pauli(labels[0])
    for label in labels[1:]:
        matrix = kron(matrix, pauli(label))
    return matrix


def embed(operator, dim_bath):
    """Lift a system operator to system (x) bath with identity on the bath."""
    return kron(operator, CMatrix.identity(dim_bath))


def conjugate(omega, h):
    """Returns ``Omega H Omega`` for Hermitian ``Omega``. Both products are
    taken with ``Omega`` on the left so sparse controls stay cheap."""
    half = matmul(omega, h)
    return matmul(omega, half.dagger()).dagger()


def _phase_of(target, reference):
    """Unit-modulus ``c`` with ``target == c * reference`` or ``None``."""
    dim = reference.rows
    overlap = mpmath.fdot((mpmath.conj(reference[i, j]), target[i, j])
            for i in range(dim) for j in range(dim)) / dim
    if abs(abs(overlap) - 1) > tolerance(PARTITION_TOL_K):
        return None
    if not target.close_to(reference.scale(overlap), tolerance(PARTITION_TOL_K)):
        return None
    return overlap


class Moos(object):
    """Validated set of control operators, one per layer. Build instances
    with :func:`validate_moos`.
    """
    operators = None
    """Tuple of :attr:`CMatrix`, layer 1 first."""
    relations = None
    """``ell x ell`` tuple with +1 for commuting and -1 for anticommuting
    pairs."""
    labels = None
    """Operator labels, used in reports."""

    def __init__(self, operators, relations, labels):
        self.operators = tuple(operators)
        self.relations = tuple(tuple(row) for row in relations)
        self.labels = tuple(labels)

    @property
    def ell(self):
        return len(self.operators)

    @property
    def dim(self):
        return self.operators[0].rows

    def embedded(self, dim_bath):
        """Same set acting on system (x) bath."""
        return Moos([embed(op, dim_bath) for op in self.operators],
                self.relations, self.labels)

    def __repr__(self):
        return 'Moos(%s)' % ', '.join(self.labels)


def validate_moos(operators, labels=None):
    """Check that ``operators`` form a mutually orthogonal operation set.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*operators*", "list", "Square :attr:`CMatrix` of equal dimension,
        layer 1 first."
        "*labels*", "list", "Optional labels, defaults to Omega1.."

    Returns:

    :attr:`Moos` with the relations table filled.

    Raises:

    :attr:`InvalidMoos` naming the failed invariant and the index or pair.
    """
    operators = list(operators)
    if not operators:
        raise InvalidMoos('Control operator set is empty.', invariant='nonempty')
    if labels is None:
        labels = ['Omega%d' % (i + 1) for i in range(len(operators))]

    dim = operators[0].rows
    tol = tolerance(PARTITION_TOL_K)
    for i, op in enumerate(operators):
        if op.rows != op.cols or op.rows != dim:
            raise InvalidMoos('Operator %d is not %dx%d.' % (i + 1, dim, dim),
                    invariant='dimension', index=i + 1)
        if (op - op.dagger()).max_abs() > tol:
            raise InvalidMoos('Operator %d is not Hermitian.' % (i + 1),
                    invariant='hermitian', index=i + 1)
        if unitarity_defect(op) > tol:
            raise InvalidMoos('Operator %d is not unitary.' % (i + 1),
                    invariant='unitary', index=i + 1)

    ell = len(operators)
    relations = [[1] * ell for _ in range(ell)]
    for i in range(ell):
        for j in range(i + 1, ell):
            ab = matmul(operators[i], operators[j])
            ba = matmul(operators[j], operators[i])
            if (ab - ba).max_abs() <= tol:
                relation = 1
            elif (ab + ba).max_abs() <= tol:
                relation = -1
            else:
                raise InvalidMoos('Operators %d and %d neither commute nor '
                        'anticommute.' % (i + 1, j + 1), invariant='relation',
                        pair=(i + 1, j + 1))
            relations[i][j] = relations[j][i] = relation

    identity = CMatrix.identity(dim)
    for i in range(ell):
        others = [k for k in range(ell) if k != i]
        for mask in product((0, 1), repeat=len(others)):
            chosen = identity
            for k, bit in zip(others, mask):
                if bit:
                    chosen = matmul(chosen, operators[k])
            if _phase_of(operators[i], chosen) is not None:
                raise InvalidMoos('Operator %d is a product of the others '
                        '(up to phase).' % (i + 1), invariant='independence',
                        index=i + 1)

    return Moos(operators, relations, labels)


class ErrorDecomposition(object):
    """Parts ``H_r`` of an operator, keyed by :attr:`ErrorVector` in
    :func:`all_vectors` order."""
    parts = None
    """Dict of error vector to :attr:`CMatrix`."""

    def __init__(self, parts):
        self.parts = dict(parts)

    def __getitem__(self, r):
        return self.parts[ErrorVector(r)]

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def items(self):
        return self.parts.items()

    def total(self):
        """Sum of all parts."""
        parts = list(self.parts.values())
        result = parts[0]
        for part in parts[1:]:
            result = result + part
        return result

    def nonzero(self, threshold):
        """Error vectors whose part exceeds ``threshold`` in max norm."""
        return [r for r, part in self.parts.items()
                if part.max_abs() > threshold]


def partition(h, moos):
    """Split ``h`` into its ``2**ell`` error-type parts by iterated half-sum
    projections ``(H +- Omega_i H Omega_i) / 2``.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*h*", "CMatrix", "Operator on the same space as the controls."
        "*moos*", "Moos", "Control set, already embedded."

    Returns:

    :attr:`ErrorDecomposition`.

    Raises:

    :attr:`DimensionMismatch` if dimensions differ.
    """
    if h.rows != moos.dim or h.cols != moos.dim:
        raise DimensionMismatch('Operator is %dx%d, controls act on %d.' %
                (h.rows, h.cols, moos.dim))
    parts = {(): h}
    for omega in moos.operators:
        split = {}
        for key, part in parts.items():
            flipped = conjugate(omega, part)
            split[key + (0,)] = (part + flipped).scale(mpmath.mpf(1) / 2)
            split[key + (1,)] = (part - flipped).scale(mpmath.mpf(1) / 2)
        parts = split
    return ErrorDecomposition((r, parts[tuple(r)]) for r in all_vectors(moos.ell))


def pure_threshold(op):
    """Part magnitude at or below which a partition part counts as zero."""
    return mpmath.mpf(10) ** (-mpmath.mp.dps // 2) * op.max_abs()


def classify(op, moos):
    """Error type of ``op`` if it is pure, :attr:`MIXED` otherwise. The zero
    operator and scalar multiples of the identity classify as trivial."""
    if op.max_abs() == 0:
        return ErrorVector.zero(moos.ell)
    nonzero = partition(op, moos).nonzero(pure_threshold(op))
    if len(nonzero) == 1:
        return nonzero[0]
    return MIXED


def generator_table(moos, generators):
    """Build all ``2**ell`` pure-type operators from the unit-vector
    generators. Entry ``r`` is the product of the generators of the set bits
    of ``r`` in ascending layer order, the identity for the trivial vector.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*moos*", "Moos", "Control set."
        "*generators*", "dict", "Unit :attr:`ErrorVector` to system
        operator."

    Returns:

    Dict of :attr:`ErrorVector` to :attr:`CMatrix`.

    Raises:

    :attr:`InvalidGenerator` if a generator is missing or impure.
    """
    ell = moos.ell
    units = [ErrorVector.unit(ell, layer) for layer in range(1, ell + 1)]
    generators = dict((ErrorVector(k), v) for k, v in generators.items())
    for unit in units:
        if unit not in generators:
            raise InvalidGenerator('Missing generator for %s.' % (unit,))
        kind = classify(generators[unit], moos)
        if kind != unit:
            raise InvalidGenerator('Generator for %s classifies as %r.' %
                    (unit, kind))

    table = {}
    for r in all_vectors(ell):
        entry = CMatrix.identity(moos.dim)
        for unit, bit in zip(units, r):
            if bit:
                entry = matmul(entry, generators[unit])
        if classify(entry, moos) != r:
            raise InvariantViolation('Product for %s does not classify to its '
                    'key.' % (r,))
        table[r] = entry
    return table


_PHASE_NAMES = ((1, ''), (-1, '-'), (1j, 'i '), (-1j, '-i '))


def describe_operator(op):
    """Pauli-string name of ``op`` with its phase: ``XY``, ``-XY``, ``i XY`` or
    ``-i XY``. Returns ``None`` if ``op`` is not a phase times a Pauli string."""
    qubits = op.rows.bit_length() - 1
    if op.rows != op.cols or qubits < 1 or 2 ** qubits != op.rows:
        return None
    for labels in product(PAULI_LABELS, repeat=qubits):
        phase = _phase_of(op, pauli_string(labels))
        if phase is None:
            continue
        name = ''.join(labels)
        for value, prefix in _PHASE_NAMES:
            if abs(phase - value) < mpmath.mpf(1) / 2:
                return prefix + name
    return None
