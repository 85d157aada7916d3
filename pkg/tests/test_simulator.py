from nudd.exceptions import *
from nudd.constants import *
from nudd.errortypes import pauli, pauli_string
from nudd.mpcore import (CMatrix, frobenius, hermitian_eig, kron, matmul,
        tolerance, unitarity_defect, unitary_from_eig)
from nudd.presets import build_moos
from nudd.schedule import NuddSpec, build_timeline, min_pulse_interval
from nudd.simulator import (BathSpec, ModelHamiltonian, assemble_hamiltonian,
        bath_stream, build_bath_operator, distance_D, error_measure_E, evolve,
        propagate, run_point)
import mpmath
from mpmath import mpf
import pytest


@pytest.fixture
def moos():
    return build_moos(SINGLE_QUBIT_4LAYER)


@pytest.fixture
def model(moos):
    return assemble_hamiltonian(BathSpec(11, n_bath_spins=1, coupling=1,
            pure_bath=mpf('0.1')), 0, moos)


def test_bath_streams_are_keyed():
    first = bath_stream(7, 0, 3).random(4)
    assert list(first) == list(bath_stream(7, 0, 3).random(4))
    assert list(first) != list(bath_stream(7, 1, 3).random(4))
    assert list(first) != list(bath_stream(7, 0, 4).random(4))


@pytest.mark.parametrize('seed', [True, -1, 2 ** 64, 1.5])
def test_bath_spec_rejects_seed(seed):
    with pytest.raises(ValueError):
        BathSpec(seed)


def test_bath_spec_limits():
    with pytest.raises(ValueError):
        BathSpec(1, n_bath_spins=0)
    with pytest.raises(ValueError):
        BathSpec(1, coupling=-1)
    assert BathSpec(1, n_bath_spins=3).dim_bath == 8


def test_explicit_bath_coefficients():
    y = build_bath_operator(None, 1, coefficients=[0, 0, 1, 0])
    assert y.close_to(pauli('Y'), tolerance(5))
    doubled = build_bath_operator(None, 1, normalize=False,
            coefficients=[2, 0, 0, 0])
    assert doubled.close_to(CMatrix.identity(2).scale(2), tolerance(5))
    unit = build_bath_operator(None, 1, coefficients=[2, 0, 0, 0])
    assert unit.close_to(CMatrix.identity(2), tolerance(5))
    with pytest.raises(DimensionMismatch):
        build_bath_operator(None, 1, coefficients=[1, 2])


def test_two_spin_pauli_layout():
    xz = build_bath_operator(None, 2, normalize=False,
            coefficients=[1 if k == 7 else 0 for k in range(16)])
    assert xz.close_to(pauli_string('XZ'), tolerance(5))


def test_random_bath_is_normalized():
    bath = build_bath_operator(bath_stream(5, 0, 0), 2)
    assert bath.hermitian
    values, _ = hermitian_eig(bath)
    assert abs(max(abs(values[0]), abs(values[-1])) - 1) < tolerance(10)


def test_model_parts(model):
    assert model.dim == 8
    assert len(model.parts) == 16
    assert len(model.parts.nonzero(mpf('1e-20'))) == 16
    assert model.parts.total().close_to(model.H, tolerance(10))


def test_model_dimension_checked():
    with pytest.raises(DimensionMismatch):
        ModelHamiltonian(CMatrix.identity(4), 4, 2)


def test_pure_bath_only_decouples_exactly(moos):
    model = assemble_hamiltonian(BathSpec(3, n_bath_spins=1, coupling=0,
            pure_bath=1), 0, moos)
    result = run_point(model, NuddSpec((1, 1, 1, 1)), moos, mpf('0.1'))
    assert result.D < mpf('1e-40')
    assert len(result.E) == 15
    assert all(value < mpf('1e-40') for value in result.E.values())


def test_distance_examples():
    bath = build_bath_operator(bath_stream(2, 0, 0), 1)
    values, vectors = hermitian_eig(bath)
    phi = unitary_from_eig(values, vectors, mpf('0.7'))
    assert distance_D(kron(CMatrix.identity(4), phi), 4, 2) < tolerance(10)
    flipped = kron(pauli_string('XI'), CMatrix.identity(2))
    assert abs(distance_D(flipped, 4, 2) - 1) < tolerance(10)


def test_distance_uses_best_bath_operator(model, moos):
    u = evolve(model, NuddSpec((1, 1, 1, 1)), moos, mpf('0.5'))
    best = distance_D(u, 4, 2) * mpmath.sqrt(8)
    phi = CMatrix([[u[k, l] for l in range(2)] for k in range(2)])
    shifted = u - kron(CMatrix.identity(4), phi)
    assert best <= frobenius(shifted) + tolerance(10)


def test_error_measure_examples():
    part = kron(pauli_string('XX'), pauli('Z'))
    assert error_measure_E(CMatrix.identity(8), part, 4, 2) < tolerance(10)
    u = kron(pauli_string('XX'), CMatrix.identity(2))
    assert abs(error_measure_E(u, part, 4, 2) - 8) < tolerance(10)
    assert abs(error_measure_E(u, part, 4, 2, norm='frobenius') -
            4 * mpmath.sqrt(2)) < tolerance(10)
    with pytest.raises(ValueError):
        error_measure_E(u, part, 4, 2, norm='spectral')


def test_free_evolution_matches_eigen_propagator(model, moos):
    values, vectors = model.eig
    u = propagate(model, moos, [(mpf('0.3'), ())])
    assert u.close_to(unitary_from_eig(values, vectors, mpf('0.3')),
            tolerance(15))
    assert propagate(model, moos, []).close_to(CMatrix.identity(8), 0)


def test_segments_compose(model, moos):
    first = [(mpf('0.2'), (1,)), (mpf('0.1'), (2, 3))]
    second = [(mpf('0.4'), (4,)), (mpf('0.3'), ())]
    whole = propagate(model, moos, first + second)
    composed = matmul(propagate(model, moos, second),
            propagate(model, moos, first))
    assert whole.close_to(composed, tolerance(15))


def test_coincident_pulses_ascending(model, moos):
    controls = model.controls(moos)
    u = propagate(model, moos, [(mpf('0.2'), (1, 2))])
    free = propagate(model, moos, [(mpf('0.2'), ())])
    expected = matmul(controls.operators[1], matmul(controls.operators[0], free))
    assert u.close_to(expected, tolerance(15))


def test_evolve_is_unitary(model, moos):
    u = evolve(model, NuddSpec((2, 1, 1, 1)), moos, 1)
    assert unitarity_defect(u) < tolerance(UNITARY_TOL_K)


def test_short_sequence_is_pulse_product(model, moos):
    spec = NuddSpec((1, 1, 1, 1))
    u = evolve(model, spec, moos, mpf('1e-30'))
    assert distance_D(u, 4, 2) < mpf('1e-20')


def test_evolve_argument_checks(model, moos):
    with pytest.raises(ValueError):
        evolve(model, NuddSpec((1, 1, 1, 1)), moos, 0)
    with pytest.raises(DimensionMismatch):
        evolve(model, NuddSpec((1, 1)), moos, 1)


def test_run_point(model, moos):
    spec = NuddSpec((1, 1, 1, 1))
    tau = mpf('0.01')
    result = run_point(model, spec, moos, tau)
    assert result.tau == tau
    assert abs(result.T - tau / min_pulse_interval(spec)) < tolerance(10)
    assert result.D > 0
    assert len(result.E) == 15
    assert result.unitarity_defect < tolerance(UNITARY_TOL_K)


def test_run_point_without_parts(moos):
    model = assemble_hamiltonian(BathSpec(4, n_bath_spins=1), 0)
    result = run_point(model, NuddSpec((1, 1, 1, 1)), moos, mpf('0.01'))
    assert result.E == {}


def test_realizations_differ(moos):
    bath = BathSpec(9, n_bath_spins=1)
    first = assemble_hamiltonian(bath, 0).H
    assert first.close_to(assemble_hamiltonian(bath, 0).H, 0)
    assert not first.close_to(assemble_hamiltonian(bath, 1).H, tolerance(10))
