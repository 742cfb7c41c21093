"""
Tests for the certified numerical radius and the nonnegative fast path
"""
import math

import numpy as np
import pytest

from analyzers.radius import block_numerical_radius, crosscheck, numerical_radius, w_nonneg
from linalg.block_matrix import BlockOperatorMatrix
from linalg.enclosure import EnclosureKind
from linalg.matcore import norm2
from utils import NegativeEntryError, NonRealError, NonSquareError, ToleranceNotPositiveError

SHIFT23 = np.array([[0.0, 2.0, 0.0], [0.0, 0.0, 3.0], [0.0, 0.0, 0.0]])
NILPOTENT = np.array([[0.0, 1.0], [0.0, 0.0]])


def random_complex(rng, m):
    return rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))


@pytest.mark.parametrize("matrix, expected", [
    (NILPOTENT, 0.5),
    (np.diag([1.0, -3.0]), 3.0),
    (SHIFT23, math.sqrt(13.0) / 2.0),
    (np.eye(3), 1.0),
    (np.array([[0.0, 2.0], [0.0, 0.0]]) * 1j, 1.0),
])
def test_numerical_radius_examples(matrix, expected):
    enclosure = numerical_radius(matrix, 1e-9)
    assert enclosure.lo - 1e-12 <= expected <= enclosure.hi + 1e-12
    assert enclosure.width <= 1e-9
    assert abs(enclosure.mid - expected) <= 1e-6


def test_default_tolerance_is_relative():
    enclosure = numerical_radius(SHIFT23)
    assert enclosure.kind == EnclosureKind.SWEPT
    assert enclosure.width <= 1e-8 * (1.0 + 3.0)


def test_zero_and_scalar_matrices_are_exact():
    zero = numerical_radius(np.zeros((3, 3)))
    assert (zero.lo, zero.hi) == (0.0, 0.0)

    scalar = numerical_radius(np.array([[3.0 - 4.0j]]))
    assert scalar.kind == EnclosureKind.EXACT
    assert scalar.contains(5.0)


def test_tolerance_must_be_positive():
    with pytest.raises(ToleranceNotPositiveError):
        numerical_radius(np.eye(2), 0.0)
    with pytest.raises(ToleranceNotPositiveError):
        numerical_radius(np.eye(2), -1.0)


def test_non_square_rejected():
    with pytest.raises(NonSquareError):
        numerical_radius(np.ones((2, 3)))


def test_radius_between_half_norm_and_norm():
    rng = np.random.default_rng(20)
    for index in range(50):
        A = random_complex(rng, 1 + index % 6)
        tol = 1e-8
        enclosure = numerical_radius(A, tol)
        norm = norm2(A)
        assert 0.5 * norm <= enclosure.hi + 1e-12
        assert enclosure.lo <= norm + tol


def test_rotation_invariance():
    rng = np.random.default_rng(21)
    for _ in range(20):
        A = random_complex(rng, 4)
        phi = rng.uniform(0.0, 2.0 * np.pi)
        tol = 1e-8
        a = numerical_radius(A, tol)
        b = numerical_radius(np.exp(1j * phi) * A, tol)
        assert abs(a.mid - b.mid) <= 2.0 * tol


def test_normal_matrices_reach_the_norm():
    rng = np.random.default_rng(22)
    for m in range(1, 7):
        Q, _ = np.linalg.qr(random_complex(rng, m))
        A = (Q * (rng.standard_normal(m) + 1j * rng.standard_normal(m))) @ Q.conj().T
        tol = 1e-8
        assert abs(numerical_radius(A, tol).mid - norm2(A)) <= 2.0 * tol


def test_block_matrix_similar_to_nilpotent_pair():
    N = NILPOTENT
    Z = np.zeros((2, 2))
    A = BlockOperatorMatrix.from_grid([[Z, N], [N, Z]])
    assert abs(block_numerical_radius(A, 1e-9).mid - 0.5) <= 1e-6


@pytest.mark.parametrize("matrix, expected", [
    (np.array([[0.0, 1.0], [1.0, 0.0]]), 1.0),
    (np.array([[0.0, 1.0 / math.sqrt(2.0)], [1.0 / math.sqrt(2.0), 0.0]]), 1.0 / math.sqrt(2.0)),
    (np.array([[0.0, 3.0], [0.0, 0.0]]), 1.5),
    (SHIFT23, math.sqrt(13.0) / 2.0),
])
def test_w_nonneg_examples(matrix, expected):
    enclosure = w_nonneg(matrix)
    assert enclosure.kind == EnclosureKind.FASTPATH
    assert enclosure.contains(expected)
    assert enclosure.width <= 1e-12 * (1.0 + norm2(matrix))


def test_w_nonneg_rejects_negative_and_complex_entries():
    with pytest.raises(NegativeEntryError):
        w_nonneg(np.array([[0.0, -1.0], [0.0, 0.0]]))
    with pytest.raises(NonRealError):
        w_nonneg(np.array([[0.0, 1j], [0.0, 0.0]]))


def test_w_nonneg_is_monotone():
    rng = np.random.default_rng(23)
    for index in range(50):
        m = 1 + index % 6
        A = rng.uniform(0.0, 1.0, (m, m))
        B = A + rng.uniform(0.0, 1.0, (m, m))
        assert w_nonneg(A).hi <= w_nonneg(B).hi + 1e-10


def test_crosscheck_on_100_nonnegative_matrices():
    rng = np.random.default_rng(24)
    for index in range(100):
        m = 1 + index % 6
        assert crosscheck(rng.uniform(0.0, 2.0, (m, m)))


def test_crosscheck_trivial_cases():
    assert crosscheck(np.eye(3))
    assert crosscheck(np.zeros((3, 3)))
