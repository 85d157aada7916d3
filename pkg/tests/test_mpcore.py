from nudd.exceptions import *
from nudd.constants import *
from nudd.mpcore import (CMatrix, Precision, frobenius, hermitian_eig, kron,
        matmul, norms, partial_trace_product, partial_trace_system,
        singular_values, tolerance, unitarity_defect, unitary_from_eig,
        working_digits)
import mpmath
from mpmath import mpf, mpc
import pytest


def random_matrix(rng, rows, cols=None):
    cols = rows if cols is None else cols
    real = rng.standard_normal((rows, cols))
    imag = rng.standard_normal((rows, cols))
    return CMatrix([[mpc(float(real[i, j]), float(imag[i, j]))
            for j in range(cols)] for i in range(rows)])


def random_hermitian(rng, n):
    return random_matrix(rng, n).hermitian_part()


def test_precision_context_restores_digits():
    before = mpmath.mp.dps
    with Precision(80):
        assert working_digits() == 80
    assert mpmath.mp.dps == before


def test_precision_rejects_low_digits():
    with pytest.raises(ValueError):
        Precision(MIN_DIGITS - 1)


def test_tolerance_is_relative_to_precision():
    assert tolerance(10) == mpf(10) ** -50


@pytest.mark.parametrize('entries', [[], [[]], [[1, 2], [3]]])
def test_bad_shapes(entries):
    with pytest.raises(DimensionMismatch):
        CMatrix(entries)


def test_hermitian_tag_is_checked():
    with pytest.raises(NotHermitian):
        CMatrix([[1, 2], [0, 1]], hermitian=True)
    tagged = CMatrix([[1, 1j], [-1j, 2]], hermitian=True)
    assert tagged.hermitian


def test_matmul():
    a = CMatrix([[1, 2], [3, 4]])
    b = CMatrix([[5, 6], [7, 8]])
    assert (a @ b).tolist() == [[19, 22], [43, 50]]
    with pytest.raises(DimensionMismatch):
        matmul(a, CMatrix([[1, 2, 3]]))


def test_matmul_monomial_rows(rng):
    permutation = CMatrix([[0, 1j, 0], [0, 0, -1], [1, 0, 0]])
    dense = random_matrix(rng, 3)
    product = matmul(permutation, dense)
    assert product.row(0) == tuple(1j * x for x in dense.row(1))
    assert product.row(1) == tuple(-x for x in dense.row(2))


def test_kron_layout():
    x = CMatrix([[0, 1], [1, 0]])
    identity = CMatrix.identity(2)
    big = kron(x, identity)
    assert big.shape == (4, 4)
    assert big[0, 2] == 1 and big[1, 3] == 1 and big[0, 1] == 0


def test_partial_trace_of_product_state():
    a = CMatrix([[1, 2], [3, 4]])
    b = CMatrix([[1, 1j], [-1j, 2]])
    traced = partial_trace_system(kron(a, b), 2, 2)
    assert traced.close_to(b.scale(5), tolerance(5))
    with pytest.raises(DimensionMismatch):
        partial_trace_system(a, 2, 2)


def test_partial_trace_product_matches_full_product(rng):
    a = random_matrix(rng, 6)
    b = random_matrix(rng, 6)
    direct = partial_trace_product(a, b, 2, 3)
    full = partial_trace_system(matmul(a, b), 2, 3)
    assert direct.close_to(full, tolerance(5))


def test_eig_of_pauli_y():
    values, vectors = hermitian_eig(CMatrix([[0, -1j], [1j, 0]]))
    assert abs(values[0] + 1) < tolerance(5)
    assert abs(values[1] - 1) < tolerance(5)
    assert unitarity_defect(vectors) < tolerance(UNITARY_TOL_K)


def test_eig_sorts_ascending():
    values, _ = hermitian_eig(CMatrix([[3, 0, 0], [0, -1, 0], [0, 0, 2]]))
    assert values == [-1, 2, 3]


@pytest.mark.parametrize('n', [2, 5, 8])
def test_eig_residual(rng, n):
    h = random_hermitian(rng, n)
    values, vectors = hermitian_eig(h)
    assert values == sorted(values)
    residual = matmul(h, vectors) - matmul(vectors, CMatrix.diagonal(values))
    assert residual.max_abs() < tolerance(EIG_RESIDUAL_TOL_K) * h.max_abs()
    assert unitarity_defect(vectors) < tolerance(UNITARY_TOL_K)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(CMatrix([[0, 1], [0, 0]]))


def test_unitary_from_eig_of_diagonal():
    t = mpf('0.3')
    values, vectors = hermitian_eig(CMatrix([[1, 0], [0, -1]]))
    u = unitary_from_eig(values, vectors, t)
    expected = CMatrix.diagonal([mpmath.expj(-t), mpmath.expj(t)])
    assert u.close_to(expected, tolerance(5))


def test_singular_values_and_norms():
    a = CMatrix([[3, 0], [0, -4]])
    sigma = singular_values(a)
    assert abs(sigma[0] - 4) < tolerance(5)
    assert abs(sigma[1] - 3) < tolerance(5)
    result = norms(a)
    assert abs(result.frobenius - 5) < tolerance(5)
    assert abs(result.nuclear - 7) < tolerance(5)
    assert abs(result.spectral - 4) < tolerance(5)
    assert frobenius(CMatrix([[1j, 1], [1, -1j]])) == 2


@pytest.mark.parametrize('n', [2, 3, 5])
def test_norm_ordering(rng, n):
    for _ in range(5):
        result = norms(random_matrix(rng, n))
        assert result.spectral <= result.frobenius + tolerance(5)
        assert result.frobenius <= result.nuclear + tolerance(5)


def test_eig_residual_shrinks_with_precision(rng):
    entries = random_matrix(rng, 5)
    residuals = []
    for digits in (30, 60):
        with Precision(digits):
            h = entries.hermitian_part()
            values, vectors = hermitian_eig(h)
            residual = matmul(h, vectors) - matmul(vectors,
                    CMatrix.diagonal(values))
            residuals.append(residual.max_abs())
    assert residuals[1] < residuals[0]
    assert residuals[0] < mpf(10) ** -20
