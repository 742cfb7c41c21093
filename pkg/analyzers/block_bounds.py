"""
Numerical radius bounds for n×n block operator matrices
Each bound is w(A) ≤ w(Ã) for a nonnegative scalar n×n matrix Ã built from the blocks
"""
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple
import logging

import numpy as np

import config
from analyzers.radius import numerical_radius
from analyzers.results import BoundResult
from linalg.block_matrix import BlockOperatorMatrix
from linalg.golden import grid_then_golden_min
from linalg.matcore import norm2, operator_norm
from linalg.specfun import FunctionPair, contraction_abs, power_pair
from utils import MatrixValidator, MatrixValidationError, MissingParameterError

logger = logging.getLogger(__name__)


class BoundId(str, Enum):
    HOU_DU = "hou_du"
    AOK = "aok"
    BHUNIA_SQRT = "bhunia_sqrt"
    REM2_I = "rem2_i"
    REM2_II = "rem2_ii"
    REM12_I = "rem12_i"
    REM12_II = "rem12_ii"
    COR1_1 = "cor1_1"
    COR2 = "cor2"
    COR3 = "cor3"
    PROP4 = "prop4"


T_FAMILIES = {BoundId.REM2_I, BoundId.REM2_II, BoundId.COR1_1, BoundId.COR2, BoundId.COR3}
MIN_FAMILIES = {BoundId.REM12_I: BoundId.REM2_I, BoundId.REM12_II: BoundId.REM2_II}

PairChoice = Callable[[int, int], FunctionPair]


def t_grid() -> List[float]:
    """Uniform grid on [0, 1] holding 0, 1/2 and 1 exactly"""
    points = config.T_GRID["points"]
    return [i / (points - 1) for i in range(points)]


def _require_block(A) -> BlockOperatorMatrix:
    if not isinstance(A, BlockOperatorMatrix):
        raise MatrixValidationError(f"expected a BlockOperatorMatrix, got {type(A).__name__}")
    return A


def _sqrt_norm(X: np.ndarray) -> float:
    return float(np.sqrt(norm2(X)))


def diagonal_radius(A: BlockOperatorMatrix, i: int) -> float:
    """Upper end of the certified w(A_ii)"""
    return A.memo(("w_diag", i), lambda: numerical_radius(A.block(i, i)).hi)


def _with_diagonal(A: BlockOperatorMatrix, aux: np.ndarray) -> np.ndarray:
    for i in range(A.n):
        aux[i, i] = diagonal_radius(A, i)
    return aux


# Entry formulas of the t-families, for a pair of positions i < j

def rem2_i_entry(A: BlockOperatorMatrix, i: int, j: int, t: float) -> float:
    """‖|A_ij|^{2t} + |A_ji*|^{2t}‖^{1/2}·‖|A_ij*|^{2(1−t)} + |A_ji|^{2(1−t)}‖^{1/2}"""
    left = A.gram(i, j)(t) + A.cogram(j, i)(t)
    right = A.cogram(i, j)(1.0 - t) + A.gram(j, i)(1.0 - t)
    return _sqrt_norm(left) * _sqrt_norm(right)


def rem2_ii_entry(A: BlockOperatorMatrix, i: int, j: int, t: float) -> float:
    """‖|A_ij|^{2t} + |A_ji*|^{2(1−t)}‖^{1/2}·‖|A_ij*|^{2(1−t)} + |A_ji|^{2t}‖^{1/2}"""
    left = A.gram(i, j)(t) + A.cogram(j, i)(1.0 - t)
    right = A.cogram(i, j)(1.0 - t) + A.gram(j, i)(t)
    return _sqrt_norm(left) * _sqrt_norm(right)


ENTRY_FORMULAS = {
    BoundId.REM2_I: rem2_i_entry,
    BoundId.REM2_II: rem2_ii_entry,
}


# Contraction forms f(|A_ij|)·|K_ij|·f(|A_ij|) and g(|A_ij*|)·|K_ij*|·g(|A_ij*|)

def _abs_contraction(A: BlockOperatorMatrix, i: int, j: int) -> Tuple[np.ndarray, np.ndarray]:
    def build():
        return contraction_abs(A.contraction(i, j))
    return A.memo(("abs_contraction", i, j), build)


def contraction_forms(A: BlockOperatorMatrix, i: int, j: int, pair: FunctionPair) -> Tuple[np.ndarray, np.ndarray]:
    abs_family = A.abs_block(i, j)
    abs_star_family = A.abs_star_block(i, j)
    pair.check(np.concatenate([abs_family.eigenvalues, abs_star_family.eigenvalues]))

    f_abs = abs_family.apply(pair.f)
    g_abs_star = abs_star_family.apply(pair.g)
    abs_K, abs_K_star = _abs_contraction(A, i, j)
    return f_abs @ abs_K @ f_abs, g_abs_star @ abs_K_star @ g_abs_star


def contraction_aux_matrix(A: BlockOperatorMatrix, pair_for: PairChoice) -> np.ndarray:
    """
    Off-diagonal a_ij = ‖f_ij(|A_ij|)|K_ij|f_ij(|A_ij|)‖^{1/2}·‖g_ij(|A_ij*|)|K_ij*|g_ij(|A_ij*|)‖^{1/2}
    for every i ≠ j, with K_ij the polar contraction of A_ij
    """
    A = _require_block(A)
    aux = np.zeros((A.n, A.n))
    for i in range(A.n):
        for j in range(A.n):
            if i == j:
                continue
            left, right = contraction_forms(A, i, j, pair_for(i, j))
            aux[i, j] = _sqrt_norm(left) * _sqrt_norm(right)
    return _with_diagonal(A, aux)


def paired_contraction_aux_matrix(A: BlockOperatorMatrix, pair_for: PairChoice) -> np.ndarray:
    """
    Upper-triangular a_ij (i < j) pairing A_ij with A_ji:
    ‖F_ij + G_ji‖^{1/2}·‖G_ij + F_ji‖^{1/2}, where F = f(|·|)|K|f(|·|) and G = g(|·*|)|K*|g(|·*|)
    """
    A = _require_block(A)
    aux = np.zeros((A.n, A.n))
    for i in range(A.n):
        for j in range(i + 1, A.n):
            f_ij, g_ij = contraction_forms(A, i, j, pair_for(i, j))
            f_ji, g_ji = contraction_forms(A, j, i, pair_for(j, i))
            aux[i, j] = _sqrt_norm(f_ij + g_ji) * _sqrt_norm(g_ij + f_ji)
    return _with_diagonal(A, aux)


def _upper_triangular(A: BlockOperatorMatrix, entry: Callable[[int, int], float]) -> np.ndarray:
    aux = np.zeros((A.n, A.n))
    for i in range(A.n):
        for j in range(i + 1, A.n):
            aux[i, j] = entry(i, j)
    return _with_diagonal(A, aux)


def _prop4_entry(A: BlockOperatorMatrix, i: int, j: int) -> float:
    # min of the two t ∈ {1, 0} endpoints; the first operand wins ties
    first = np.sqrt(0.5 * norm2(A.gram(i, j)(1.0) + A.cogram(j, i)(1.0)))
    second = np.sqrt(0.5 * norm2(A.cogram(i, j)(1.0) + A.gram(j, i)(1.0)))
    return float(min(first, second))


def _check_t(bound_id: BoundId, t: Optional[float]) -> Optional[float]:
    if bound_id in T_FAMILIES:
        if t is None:
            raise MissingParameterError(f"bound {bound_id.value} needs a parameter t in [0, 1]")
        return MatrixValidator.unit_interval(t)
    return None


def aux_matrix(A: BlockOperatorMatrix, bound_id, t: Optional[float] = None) -> np.ndarray:
    """
    Nonnegative auxiliary matrix Ã of the named bound
    """
    A = _require_block(A)
    bound_id = BoundId(bound_id)
    t = _check_t(bound_id, t)
    n = A.n

    if bound_id == BoundId.HOU_DU:
        aux = np.array([[A.block_norm(i, j) for j in range(n)] for i in range(n)])
        for i in range(n):
            aux[i, i] = operator_norm(A.block(i, i)).hi
        return aux

    if bound_id == BoundId.AOK:
        aux = np.array([[A.block_norm(i, j) for j in range(n)] for i in range(n)])
        return _with_diagonal(A, aux)

    if bound_id == BoundId.BHUNIA_SQRT:
        return _upper_triangular(A, lambda i, j: rem2_i_entry(A, i, j, 0.5))

    if bound_id in ENTRY_FORMULAS:
        formula = ENTRY_FORMULAS[bound_id]
        return _upper_triangular(A, lambda i, j: formula(A, i, j, t))

    if bound_id in MIN_FAMILIES:
        return minimize_over_t(A, bound_id).aux

    if bound_id == BoundId.COR1_1:
        pair = power_pair(t)
        return contraction_aux_matrix(A, lambda i, j: pair)

    if bound_id == BoundId.COR2:
        upper, lower = power_pair(t), power_pair(1.0 - t)
        return paired_contraction_aux_matrix(A, lambda i, j: upper if i < j else lower)

    if bound_id == BoundId.COR3:
        pair = power_pair(t)
        return paired_contraction_aux_matrix(A, lambda i, j: pair)

    if bound_id == BoundId.PROP4:
        aux = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                aux[i, j] = _prop4_entry(A, i, j)
                aux[j, i] = _prop4_entry(A, j, i)
        return _with_diagonal(A, aux)

    raise MatrixValidationError(f"no auxiliary matrix for bound {bound_id.value}")


def minimize_over_t(A: BlockOperatorMatrix, family) -> BoundResult:
    """
    Per-entry independent minimization over t of the rem2_i / rem2_ii entry formula
    """
    A = _require_block(A)
    family = BoundId(family)
    if family not in MIN_FAMILIES:
        raise MatrixValidationError(f"{family.value} is not a min-over-t family")

    formula = ENTRY_FORMULAS[MIN_FAMILIES[family]]
    grid = t_grid()
    argmins: Dict[str, float] = {}

    def entry(i: int, j: int) -> float:
        t_best, value = grid_then_golden_min(lambda t: formula(A, i, j, t), grid, config.T_GRID["golden_iterations"])
        argmins[f"{i},{j}"] = t_best
        return value

    aux = _upper_triangular(A, entry)
    logger.debug("%s argmins: %s", family.value, argmins)
    return BoundResult.from_aux(
        family.value,
        aux,
        params={"grid_points": len(grid)},
        entry_argmins=argmins,
    )


def evaluate_bound(A: BlockOperatorMatrix, bound_id, t: Optional[float] = None) -> BoundResult:
    """
    w(A) ≤ w(Ã) for the named bound, Ã evaluated through the nonnegative fast path
    """
    A = _require_block(A)
    bound_id = BoundId(bound_id)
    if bound_id in MIN_FAMILIES:
        return minimize_over_t(A, bound_id)

    t = _check_t(bound_id, t)
    params = {} if t is None else {"t": t}
    return BoundResult.from_aux(bound_id.value, aux_matrix(A, bound_id, t), params)
