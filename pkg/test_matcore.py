"""
Tests for the dense linear algebra kernels
"""
import numpy as np
import pytest

import config
from linalg.enclosure import Enclosure, EnclosureKind
from linalg.matcore import (
    adjoint,
    eig_residuals,
    hermitian_eig,
    matmul,
    norm2,
    operator_norm,
    svd,
    svd_residuals,
    symmetrize,
)
from matrix_storage import MatrixStorage
from utils import (
    DimensionMismatchError,
    NonFiniteEntryError,
    NonSquareError,
    NotHermitianError,
)


def random_complex(rng, m, k=None):
    k = m if k is None else k
    return rng.standard_normal((m, k)) + 1j * rng.standard_normal((m, k))


def test_kernel_residuals_on_500_random_matrices():
    rng = np.random.default_rng(500)
    rtol = config.TOLERANCES["kernel_residual"]
    for index in range(500):
        m = 1 + index % 8
        A = random_complex(rng, m)
        H = A + A.conj().T

        res = eig_residuals(H, hermitian_eig(H))
        assert res["reconstruction"] <= rtol * m * (1.0 + res["scale"])
        assert res["orthonormality"] <= rtol * m

        res = svd_residuals(A, svd(A))
        assert res["reconstruction"] <= rtol * m * (1.0 + res["scale"])
        assert res["orthonormality_u"] <= rtol * m
        assert res["orthonormality_v"] <= rtol * m


def test_eigenvalues_ascending_and_singular_values_descending():
    rng = np.random.default_rng(1)
    A = random_complex(rng, 6)
    eig = hermitian_eig(A + A.conj().T)
    assert np.all(np.diff(eig.eigenvalues) >= 0.0)
    assert eig.lambda_min <= eig.lambda_max

    factors = svd(A)
    assert np.all(np.diff(factors.singular_values) <= 0.0)
    assert factors.sigma_max == pytest.approx(np.linalg.norm(A, 2))


def test_psd_lambda_max_equals_operator_norm():
    rng = np.random.default_rng(2)
    for m in range(1, 9):
        G = random_complex(rng, m)
        P = G.conj().T @ G
        assert abs(hermitian_eig(P).lambda_max - norm2(P)) <= 1e-10 * (1.0 + norm2(P))


def test_norm_of_adjoint_matches():
    rng = np.random.default_rng(3)
    for m in range(1, 9):
        A = random_complex(rng, m)
        assert abs(norm2(A) - norm2(adjoint(A))) <= 1e-12 * (1.0 + norm2(A))


def test_operator_norm_enclosure():
    rng = np.random.default_rng(4)
    A = random_complex(rng, 5)
    enclosure = operator_norm(A)
    sigma = np.linalg.norm(A, 2)
    assert enclosure.kind == EnclosureKind.EXACT
    assert enclosure.contains(sigma)
    assert enclosure.width <= 1e-10 * (1.0 + sigma)


def test_operator_norm_of_zero_is_zero():
    assert operator_norm(np.zeros((3, 3))).lo == 0.0


def test_adjoint_is_an_exact_involution():
    rng = np.random.default_rng(5)
    for m in range(1, 7):
        A = random_complex(rng, m, m + 1)
        np.testing.assert_array_equal(adjoint(adjoint(A)), A)


def test_hermitian_eig_of_tridiagonal_example():
    H = np.array([[0.0, 2.0, 0.0], [2.0, 0.0, 3.0], [0.0, 3.0, 0.0]])
    assert hermitian_eig(H).lambda_max == pytest.approx(np.sqrt(13.0), abs=1e-12)


def test_singular_values_of_weighted_shift():
    shift = MatrixStorage().load("shift23")
    np.testing.assert_allclose(svd(shift).singular_values, [3.0, 2.0, 0.0], atol=1e-12)


def test_hermitian_eig_of_diagonal():
    eig = hermitian_eig(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_allclose(eig.eigenvalues, [-1.0, 2.0, 3.0], atol=1e-14)


def test_symmetrize_accepts_rounding_level_asymmetry():
    H = np.array([[1.0, 2.0 + 1e-14], [2.0, 5.0]])
    S = symmetrize(H)
    np.testing.assert_allclose(S, S.conj().T)


def test_non_hermitian_input_rejected():
    with pytest.raises(NotHermitianError):
        hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_non_square_input_rejected():
    with pytest.raises(NonSquareError):
        hermitian_eig(np.zeros((2, 3)))
    with pytest.raises(NonSquareError):
        symmetrize(np.zeros((3, 2)))


def test_non_finite_entries_rejected():
    with pytest.raises(NonFiniteEntryError):
        norm2(np.array([[1.0, np.nan], [0.0, 1.0]]))


def test_matmul_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        matmul(np.ones((2, 3)), np.ones((2, 3)))
    np.testing.assert_allclose(matmul(np.ones((2, 3)), np.ones((3, 4))), 3.0 * np.ones((2, 4)))


def test_enclosure_rejects_inverted_interval():
    with pytest.raises(ValueError):
        Enclosure(1.0, 0.0)
    assert Enclosure.around(2.0, 0.5).overlaps(Enclosure(2.4, 3.0))
