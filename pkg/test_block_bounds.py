"""
Tests for the block operator matrix bound catalogue
"""
import math

import numpy as np
import pytest

from analyzers import block_bounds
from analyzers.block_bounds import BoundId, aux_matrix, evaluate_bound, minimize_over_t, t_grid
from analyzers.radius import block_numerical_radius
from linalg.block_matrix import BlockOperatorMatrix
from linalg.specfun import FunctionPair, power_pair
from utils import DimensionMismatchError, MatrixValidationError, MissingParameterError

N = np.array([[0.0, 1.0], [0.0, 0.0]])
Z = np.zeros((2, 2))


@pytest.fixture
def worked_block():
    return BlockOperatorMatrix.from_grid([[Z, N], [N, Z]])


def random_block(rng, n, d):
    m = n * d
    return BlockOperatorMatrix.from_flat(rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m)), n)


def test_t_grid_holds_exact_landmarks():
    grid = t_grid()
    assert len(grid) == 201
    assert grid[0] == 0.0 and grid[100] == 0.5 and grid[-1] == 1.0
    assert grid[50] == 0.25 and grid[150] == 0.75


def test_block_matrix_round_trips_through_flat_form():
    rng = np.random.default_rng(30)
    A = random_block(rng, 3, 2)
    np.testing.assert_array_equal(BlockOperatorMatrix.from_flat(A.flatten(), 3).blocks, A.blocks)
    assert (A.n, A.d) == (3, 2)


def test_block_grid_must_share_one_dimension():
    with pytest.raises(DimensionMismatchError):
        BlockOperatorMatrix.from_grid([[np.eye(2), np.eye(3)], [np.eye(2), np.eye(2)]])
    with pytest.raises(DimensionMismatchError):
        BlockOperatorMatrix.from_flat(np.eye(5), 2)


def test_prop4_on_worked_example(worked_block):
    aux = aux_matrix(worked_block, BoundId.PROP4)
    s = 1.0 / math.sqrt(2.0)
    np.testing.assert_allclose(aux, [[0.0, s], [s, 0.0]], atol=1e-12)
    assert abs(evaluate_bound(worked_block, "prop4").value.hi - s) <= 1e-6


def test_aok_on_worked_example(worked_block):
    np.testing.assert_allclose(aux_matrix(worked_block, BoundId.AOK), [[0.0, 1.0], [1.0, 0.0]], atol=1e-12)
    assert abs(evaluate_bound(worked_block, "aok").value.hi - 1.0) <= 1e-6


def test_true_radius_of_worked_example_is_strictly_smaller(worked_block):
    true_w = block_numerical_radius(worked_block, 1e-9)
    assert abs(true_w.mid - 0.5) <= 1e-6
    assert true_w.hi < evaluate_bound(worked_block, "prop4").value.lo
    assert true_w.hi < evaluate_bound(worked_block, "aok").value.lo


def test_rem2_i_at_half_equals_bhunia_sqrt():
    rng = np.random.default_rng(31)
    A = random_block(rng, 3, 2)
    np.testing.assert_array_equal(aux_matrix(A, "rem2_i", 0.5), aux_matrix(A, "bhunia_sqrt"))


def test_rem12_on_zero_blocks_is_zero():
    A = BlockOperatorMatrix(np.zeros((2, 2, 2, 2)))
    result = minimize_over_t(A, "rem12_i")
    np.testing.assert_array_equal(result.aux, np.zeros((2, 2)))
    assert result.value.hi <= 1e-12


def test_rem12_constant_entries_for_identity_blocks():
    I = np.eye(2)
    A = BlockOperatorMatrix.from_grid([[Z, I], [I, Z]])
    result = minimize_over_t(A, "rem12_i")
    np.testing.assert_allclose(result.aux, [[0.0, 2.0], [0.0, 0.0]], atol=1e-12)
    assert abs(result.value.hi - 1.0) <= 1e-10
    assert set(result.entry_argmins) == {"0,1"}


def test_rem12_never_exceeds_grid_values():
    rng = np.random.default_rng(32)
    A = random_block(rng, 3, 2)
    for family, base in block_bounds.MIN_FAMILIES.items():
        minimized = minimize_over_t(A, family).aux
        for t in (0.0, 0.25, 0.5, 0.75, 1.0):
            assert np.all(minimized <= aux_matrix(A, base, t) + 1e-12)


def test_zero_power_convention_gives_sqrt2_factor(worked_block):
    # at t = 0 the rem2_i entry carries ‖|A_ij|⁰ + |A_ji*|⁰‖^½ = √2
    entry = block_bounds.rem2_i_entry(worked_block, 0, 1, 0.0)
    right = math.sqrt(np.linalg.norm(N.T @ N @ np.eye(2) + N @ N.T, 2))
    assert entry == pytest.approx(math.sqrt(2.0) * right)


def test_t_families_require_t(worked_block):
    with pytest.raises(MissingParameterError):
        aux_matrix(worked_block, BoundId.REM2_I)
    with pytest.raises(MatrixValidationError):
        aux_matrix(worked_block, BoundId.COR2, 1.5)


def test_dense_matrix_rejected():
    with pytest.raises(MatrixValidationError):
        evaluate_bound(np.eye(4), "aok")


def test_unknown_bound_id_rejected(worked_block):
    with pytest.raises(ValueError):
        evaluate_bound(worked_block, "not_a_bound")


def test_hou_du_uses_norms_on_the_diagonal():
    rng = np.random.default_rng(33)
    A = random_block(rng, 2, 3)
    hou_du = aux_matrix(A, "hou_du")
    aok = aux_matrix(A, "aok")
    for i in range(2):
        assert hou_du[i, i] == pytest.approx(np.linalg.norm(A.block(i, i), 2))
        assert aok[i, i] <= hou_du[i, i] + 1e-8
    assert hou_du[0, 1] == aok[0, 1]


@pytest.mark.parametrize("t", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_cor1_1_entries_below_aok(t):
    rng = np.random.default_rng(34)
    A = random_block(rng, 3, 2)
    cor = aux_matrix(A, "cor1_1", t)
    aok = aux_matrix(A, "aok")
    off = ~np.eye(3, dtype=bool)
    assert np.all(cor[off] <= aok[off] + 1e-10 * (1.0 + aok[off]))


def test_generic_pair_matches_power_corollaries():
    rng = np.random.default_rng(35)
    A = random_block(rng, 3, 2)
    pair = FunctionPair(f=lambda lam: np.power(lam, 0.3), g=lambda lam: np.power(lam, 0.7), label="custom")

    np.testing.assert_allclose(
        block_bounds.contraction_aux_matrix(A, lambda i, j: pair), aux_matrix(A, "cor1_1", 0.3), rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(
        block_bounds.paired_contraction_aux_matrix(A, lambda i, j: pair), aux_matrix(A, "cor3", 0.3), rtol=1e-12, atol=1e-12)

    upper, lower = power_pair(0.3), power_pair(0.7)
    np.testing.assert_allclose(
        block_bounds.paired_contraction_aux_matrix(A, lambda i, j: upper if i < j else lower),
        aux_matrix(A, "cor2", 0.3), rtol=1e-12, atol=1e-12)


def test_aux_matrices_are_nonnegative_and_upper_triangular_where_paired():
    rng = np.random.default_rng(36)
    A = random_block(rng, 3, 1)
    for bound_id in ("bhunia_sqrt", "rem12_i", "rem12_ii", "prop4", "aok", "hou_du"):
        assert np.all(aux_matrix(A, bound_id) >= 0.0)
    for bound_id in ("bhunia_sqrt", "rem12_ii"):
        assert np.all(np.tril(aux_matrix(A, bound_id), -1) == 0.0)
    assert np.all(np.tril(aux_matrix(A, "cor3", 0.5), -1) == 0.0)


@pytest.mark.parametrize("seed", range(10))
def test_every_bound_dominates_the_true_radius(seed):
    rng = np.random.default_rng(seed)
    n, d = 2 + seed % 2, 1 + seed % 3
    A = random_block(rng, n, d)
    true_w = block_numerical_radius(A, 1e-8)
    for bound_id in BoundId:
        t = 0.5 if bound_id in block_bounds.T_FAMILIES else None
        assert evaluate_bound(A, bound_id, t).value.hi + 1e-8 >= true_w.lo


def test_refinement_chain_at_the_radius_level():
    rng = np.random.default_rng(37)
    for _ in range(5):
        A = random_block(rng, 3, 2)
        values = [evaluate_bound(A, b).value.hi for b in ("rem12_i", "bhunia_sqrt", "aok", "hou_du")]
        assert all(a <= b + 1e-8 for a, b in zip(values, values[1:]))
