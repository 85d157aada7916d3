"""Two-qubit system coupled to a random spin bath, evolved under ideal
instantaneous pulses of a nested sequence.

Times are dimensionless: ``J = 1`` sets the unit and ``J00 / J`` is the only
other dial. The system factor is always the slow index of system (x) bath.
"""
from nudd.exceptions import *
from nudd.constants import *
from nudd.errortypes import partition, pauli_string
from nudd.mpcore import (CMatrix, frobenius, hermitian_eig, kron, matmul,
        partial_trace_product, partial_trace_system, singular_values,
        tolerance, unitarity_defect)
from nudd.schedule import build_timeline, min_pulse_interval
from itertools import product
import logging
import mpmath
from mpmath import mpf, mpc
import numpy


class BathSpec(object):
    """Random bath parameters shared by every realization of a sweep.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*seed*", "int", "Master seed, a non negative 64-bit integer."
        "*n_bath_spins*", "int", "Number of bath qubits."
        "*coupling*", "number", "System-bath coupling ``J`` in units of the
        reference scale. Zero switches the system-bath terms off."
        "*pure_bath*", "number", "Pure-bath strength ``J00`` in the same
        units."
        "*normalize_bath*", "bool", "Rescale every bath operator to unit
        spectral norm."
    """
    seed = None
    """Master seed of all bath streams."""
    n_bath_spins = N_BATH_SPINS
    """Number of bath qubits."""
    coupling = 1
    """System-bath coupling ``J``."""
    pure_bath = J00_HZ / J_HZ
    """Pure-bath strength ``J00``."""
    normalize_bath = True
    """Rescale bath operators to unit spectral norm."""

    def __init__(self, seed, n_bath_spins=N_BATH_SPINS, coupling=1,
            pure_bath=J00_HZ / J_HZ, normalize_bath=True):
        if isinstance(seed, bool) or not isinstance(seed, int) or \
                not 0 <= seed < 2 ** 64:
            raise ValueError('Seed must be a 64-bit non negative integer, '
                    'got %r.' % (seed,))
        if n_bath_spins < 1:
            raise ValueError('Need at least one bath spin.')
        if coupling < 0 or pure_bath < 0:
            raise ValueError('Coupling strengths must be non negative.')
        self.seed = seed
        self.n_bath_spins = n_bath_spins
        self.coupling = coupling
        self.pure_bath = pure_bath
        self.normalize_bath = normalize_bath

    @property
    def dim_bath(self):
        return 2 ** self.n_bath_spins

    def __repr__(self):
        return 'BathSpec(seed=%d, spins=%d, J=%s, J00=%s)' % (self.seed,
                self.n_bath_spins, self.coupling, self.pure_bath)


def bath_stream(seed, realization, label_index):
    """Independent generator for one bath operator. The stream depends only
    on its ``(realization, label_index)`` key, never on the order in which
    streams are requested."""
    sequence = numpy.random.SeedSequence(seed, spawn_key=(realization, label_index))
    return numpy.random.Generator(numpy.random.PCG64(sequence))


_PAULI_ACTION = {
    'I': (0, (1, 1)),
    'X': (1, (1, 1)),
    'Y': (1, (-1j, 1j)),
    'Z': (0, (1, -1)),
}


def _pauli_terms(labels):
    # (row, col, phase) of the single nonzero entry in every row.
    width = len(labels)
    for row in range(2 ** width):
        col = row
        phase = 1
        for position, label in enumerate(labels):
            shift = width - 1 - position
            flip, phases = _PAULI_ACTION[label]
            phase *= phases[(row >> shift) & 1]
            col ^= flip << shift
        yield row, col, phase


def build_bath_operator(stream, n_spins=N_BATH_SPINS, normalize=True,
        coefficients=None):
    """Real-coefficient sum over all ``4**n_spins`` Pauli strings of the
    bath.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*stream*", "Generator", "numpy generator the coefficients are drawn
        from, uniform on [0, 1). Ignored when *coefficients* is given."
        "*n_spins*", "int", "Number of bath qubits."
        "*normalize*", "bool", "Rescale to unit spectral norm."
        "*coefficients*", "sequence", "Explicit coefficients in Pauli string
        order, ``I..I, I..X, ...``."

    Returns:

    Hermitian :attr:`CMatrix` of size ``2**n_spins``.
    """
    strings = list(product(PAULI_LABELS, repeat=n_spins))
    if coefficients is None:
        coefficients = stream.random(len(strings))
    if len(coefficients) != len(strings):
        raise DimensionMismatch('Got %d coefficients for %d Pauli strings.' %
                (len(coefficients), len(strings)))

    dim = 2 ** n_spins
    data = [[mpc(0)] * dim for _ in range(dim)]
    for labels, c in zip(strings, coefficients):
        c = mpf(c)
        if not c:
            continue
        for row, col, phase in _pauli_terms(labels):
            data[row][col] += c * phase
    bath = CMatrix(data, hermitian=True)

    if normalize:
        values, _ = hermitian_eig(bath)
        norm = max(abs(values[0]), abs(values[-1]))
        if norm:
            bath = bath.scale(1 / norm)
    return bath


class ModelHamiltonian(object):
    """Hamiltonian on system (x) bath with its lazily cached eigen
    decomposition.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*h*", "CMatrix", "Hermitian operator of size dim_system*dim_bath."
        "*dim_system*", "int", "System dimension."
        "*dim_bath*", "int", "Bath dimension."
        "*moos*", "Moos", "Optional system control set. When given the
        Hamiltonian is split into its error-type parts."
    """
    H = None
    """Hermitian :attr:`CMatrix`."""
    dim_system = None
    """System dimension."""
    dim_bath = None
    """Bath dimension."""
    parts = None
    """:attr:`ErrorDecomposition` against the control set, or None."""
    _eig = None

    def __init__(self, h, dim_system, dim_bath, moos=None):
        if h.shape != (dim_system * dim_bath,) * 2:
            raise DimensionMismatch('Hamiltonian is %dx%d, expected %d.' %
                    (h.rows, h.cols, dim_system * dim_bath))
        if not h.hermitian:
            h = CMatrix(h.tolist(), hermitian=True)
        self.H = h
        self.dim_system = dim_system
        self.dim_bath = dim_bath
        if moos is not None:
            self.parts = partition(h, self.controls(moos))

    @property
    def dim(self):
        return self.dim_system * self.dim_bath

    @property
    def eig(self):
        """``(eigenvalues, vectors)`` of :attr:`H`, computed once."""
        if self._eig is None:
            self._eig = hermitian_eig(self.H)
        return self._eig

    def controls(self, moos):
        """Control set acting on the full space."""
        if moos.dim == self.dim:
            return moos
        if moos.dim != self.dim_system:
            raise DimensionMismatch('Controls act on %d, system is %d.' %
                    (moos.dim, self.dim_system))
        return moos.embedded(self.dim_bath)


def assemble_hamiltonian(bath, realization=0, moos=None):
    """Uniformly coupled model ``J * sum sigma (x) sigma (x) B`` over the 15
    non-identity system strings plus ``J00 * I (x) B_00``. Every bath
    operator has its own stream keyed by realization and system string.

    Returns:

    :attr:`ModelHamiltonian`.
    """
    dim_system = 2 ** SYSTEM_QUBITS
    h = None
    for label_index, labels in enumerate(product(PAULI_LABELS,
            repeat=SYSTEM_QUBITS)):
        strength = bath.pure_bath if label_index == 0 else bath.coupling
        if not strength:
            continue
        operator = build_bath_operator(bath_stream(bath.seed, realization,
                label_index), bath.n_bath_spins, bath.normalize_bath)
        term = kron(pauli_string(labels), operator).scale(mpf(strength))
        h = term if h is None else h + term
    if h is None:
        h = CMatrix.zeros(dim_system * bath.dim_bath)
    logging.debug('Assembled realization %d of %r.', realization, bath)
    return ModelHamiltonian(h, dim_system, bath.dim_bath, moos)


def _pulse_product(controls, fired):
    # Ascending layer order, so later pulses multiply from the left.
    result = None
    for layer in fired:
        omega = controls.operators[layer - 1]
        result = omega if result is None else matmul(omega, result)
    return result


def propagate(model, moos, segments):
    """Propagator of a piecewise schedule in the eigenbasis of the model.

    Arguments:

    .. csv-table::
        :header: "argument", "type", "value"
        :widths: 7, 7, 40

        "*model*", "ModelHamiltonian", "Free Hamiltonian."
        "*moos*", "Moos", "Control set, system-level or embedded."
        "*segments*", "sequence", "Pairs ``(duration, fired_layers)``: free
        evolution for *duration*, then the pulses of *fired_layers*."

    Returns:

    Unitary :attr:`CMatrix`.
    """
    controls = model.controls(moos)
    values, vectors = model.eig
    adjoint = vectors.dagger()
    kicks = {}
    state = None
    for duration, fired in segments:
        phases = [mpmath.expj(-value * duration) for value in values]
        if state is None:
            state = CMatrix.diagonal(phases)
        else:
            state = CMatrix._wrap([[phase * x for x in row]
                    for phase, row in zip(phases, state._data)])
        if fired:
            kick = kicks.get(fired)
            if kick is None:
                pulse = _pulse_product(controls, fired)
                kick = kicks[fired] = matmul(adjoint, matmul(pulse, vectors))
            state = matmul(kick, state)
    if state is None:
        return CMatrix.identity(model.dim)
    return matmul(matmul(vectors, state), adjoint)


def evolve(model, spec, moos, T):
    """Propagator of the nested sequence ``spec`` with total duration ``T``.
    Free evolution runs between instantaneous pulses, coincident pulses are
    applied in ascending layer order.

    Raises:

    :attr:`DimensionMismatch` if the controls do not fit the model.
    """
    T = mpmath.mpmathify(T)
    if T <= 0:
        raise ValueError('Total time must be positive.')
    timeline = build_timeline(spec)
    controls = model.controls(moos)
    if controls.ell != spec.ell:
        raise DimensionMismatch('Spec has %d layers, control set has %d.' %
                (spec.ell, controls.ell))
    return propagate(model, controls,
            [(T * interval.length, interval.fired)
                    for interval in timeline.intervals])


def _measure(matrix, norm):
    if norm == 'frobenius':
        return frobenius(matrix)
    if norm == 'nuclear':
        return mpmath.fsum(singular_values(matrix))
    raise ValueError('Unknown norm %r.' % (norm,))


def distance_D(u, dim_system, dim_bath, norm=D_NORM):
    """Normalized distance of ``u`` from the nearest pure-bath evolution
    ``I (x) Phi``. The minimizer is ``Phi = Tr_S(u) / dim_system``."""
    phi = partial_trace_system(u, dim_system, dim_bath).scale(
            mpf(1) / dim_system)
    residual = u - kron(CMatrix.identity(dim_system), phi)
    return _measure(residual, norm) / mpmath.sqrt(dim_system * dim_bath)


def error_measure_E(u, part, dim_system, dim_bath, norm=E_NORM):
    """Norm of the bath operator ``Tr_S(u H_r)`` left by one error-type
    part, the trace norm by default."""
    return _measure(partial_trace_product(u, part, dim_system, dim_bath), norm)


class RunResult(object):
    """Measures of one realization at one pulse spacing."""
    tau = None
    """Minimum pulse interval."""
    T = None
    """Total sequence duration."""
    U = None
    """Propagator :attr:`CMatrix`."""
    D = None
    """Distance from a pure-bath evolution."""
    E = None
    """Dict of nontrivial :attr:`ErrorVector` to its error measure."""
    unitarity_defect = None
    """``max|U^dagger U - I|``."""


def run_point(model, spec, moos, tau, d_norm=D_NORM, e_norm=E_NORM):
    """Evolve ``model`` under ``spec`` with minimum pulse interval ``tau``
    and evaluate ``D`` and every nontrivial ``E_r``.

    Returns:

    :attr:`RunResult`.
    """
    tau = mpmath.mpmathify(tau)
    result = RunResult()
    result.tau = tau
    result.T = tau / min_pulse_interval(spec)
    result.U = evolve(model, spec, moos, result.T)
    result.unitarity_defect = unitarity_defect(result.U)
    if result.unitarity_defect > tolerance(UNITARY_TOL_K):
        logging.warning('Propagator at tau=%s deviates from unitarity by %s.',
                mpmath.nstr(tau, 5), mpmath.nstr(result.unitarity_defect, 5))
    result.D = distance_D(result.U, model.dim_system, model.dim_bath, d_norm)
    result.E = {}
    if model.parts is not None:
        for r, part in model.parts.items():
            if not r.is_trivial():
                result.E[r] = error_measure_E(result.U, part, model.dim_system,
                        model.dim_bath, e_norm)
    return result
