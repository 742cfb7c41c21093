"""
Bounds derived from the block catalogue: 2×2 operator matrices, a single operator,
products, sums of products, commutators and unitary products
"""
from enum import Enum
from typing import Optional, Tuple

import numpy as np

import config
from analyzers.block_bounds import t_grid
from analyzers.radius import numerical_radius
from analyzers.results import BoundResult
from linalg.golden import grid_then_golden_min
from linalg.matcore import norm2
from linalg.specfun import PowerFamily
from utils import MatrixValidator, MissingParameterError


class TwoBlockVariant(str, Enum):
    PROP5 = "prop5"
    P2_MIN = "p2_min"
    P2_MAX = "p2_max"
    P22 = "p22"


class SingleVariant(str, Enum):
    PROP1 = "prop1"
    PROP1_MIN = "prop1_min"
    P112 = "p112"
    P112_MIN = "p112_min"
    KITTANEH_SUM = "kittaneh_sum"
    KITTANEH_SQ = "kittaneh_sq"


class SumProductVariant(str, Enum):
    TH3 = "th3"
    TH4 = "th4"


class UnitaryVariant(str, Enum):
    SUM = "sum"
    PRODUCT = "product"


class Spectra:
    """|X|^{2s} = gram(s) and |X*|^{2s} = cogram(s) from one eigendecomposition each"""

    def __init__(self, X: np.ndarray, name: str):
        Xh = X.conj().T
        self.gram = PowerFamily(Xh @ X, f"|{name}|²")
        self.cogram = PowerFamily(X @ Xh, f"|{name}*|²")


def _minimize(fn) -> Tuple[float, float]:
    return grid_then_golden_min(fn, t_grid(), config.T_GRID["golden_iterations"])


def _required_t(t: Optional[float], name: str) -> float:
    if t is None:
        raise MissingParameterError(f"{name} needs a parameter t in [0, 1]")
    return MatrixValidator.unit_interval(t)


def _product_factor(a: Spectra, b: Spectra, t: float, mixed: bool = False) -> float:
    """
    ‖|A|^{2t} + |B*|^{2t}‖·‖|A*|^{2(1−t)} + |B|^{2(1−t)}‖, or with the
    |B*|, |B| exponents swapped when mixed
    """
    if mixed:
        return norm2(a.gram(t) + b.cogram(1.0 - t)) * norm2(a.cogram(1.0 - t) + b.gram(t))
    return norm2(a.gram(t) + b.cogram(t)) * norm2(a.cogram(1.0 - t) + b.gram(1.0 - t))


def two_block_bound(A, B, variant, t: Optional[float] = None, C=None, D=None) -> BoundResult:
    """
    Bounds for w([[0, A], [B, 0]]), and for w([[C, A], [B, D]]) with p22
    """
    A, B = MatrixValidator.same_square(A, B)
    variant = TwoBlockVariant(variant)
    a, b = Spectra(A, "A"), Spectra(B, "B")

    if variant == TwoBlockVariant.PROP5:
        t = _required_t(t, variant.value)
        entry = np.sqrt(norm2(a.gram(t) + b.cogram(t))) * np.sqrt(norm2(a.cogram(1.0 - t) + b.gram(1.0 - t)))
        return BoundResult.from_aux(variant.value, np.array([[0.0, entry], [0.0, 0.0]]), {"t": t})

    first = np.sqrt(0.5 * norm2(a.gram(1.0) + b.cogram(1.0)))
    second = np.sqrt(0.5 * norm2(a.cogram(1.0) + b.gram(1.0)))

    if variant == TwoBlockVariant.P2_MIN:
        m = min(first, second)
        return BoundResult.from_aux(variant.value, np.array([[0.0, m], [m, 0.0]]))

    if variant == TwoBlockVariant.P2_MAX:
        m = max(first, second)
        return BoundResult.from_aux(variant.value, np.array([[0.0, m], [m, 0.0]]))

    if C is None or D is None:
        raise MissingParameterError("p22 needs the diagonal blocks C and D")
    C, D, _ = MatrixValidator.same_square(C, D, A, names=("C", "D", "A"))
    wc = numerical_radius(C).hi
    wd = numerical_radius(D).hi
    m = min(first, second)
    return BoundResult.from_aux(variant.value, np.array([[wc, m], [m, wd]]), {"w_C": wc, "w_D": wd})


def single_operator_bound(A, variant, t: Optional[float] = None) -> BoundResult:
    """
    Upper bounds for w(A) of a single operator
    """
    A = MatrixValidator.square(A)
    variant = SingleVariant(variant)
    s = Spectra(A, "A")
    norm = norm2(A)

    def prop1(t: float) -> float:
        # |A|^{1−t} = (A*A)^{(1−t)/2}
        return norm ** t * 0.5 * norm2(s.gram(0.5 * (1.0 - t)) + s.cogram(0.5 * (1.0 - t)))

    def p112_entry(t: float) -> float:
        return float(np.sqrt(norm2(s.gram(t) + s.cogram(t))) * np.sqrt(norm2(s.cogram(1.0 - t) + s.gram(1.0 - t))))

    if variant == SingleVariant.PROP1:
        t = _required_t(t, variant.value)
        return BoundResult.scalar(variant.value, prop1(t), {"t": t})

    if variant == SingleVariant.PROP1_MIN:
        t_best, value = _minimize(prop1)
        return BoundResult.scalar(variant.value, value, {"argmin_t": t_best, "grid_points": len(t_grid())})

    if variant == SingleVariant.P112:
        t = _required_t(t, variant.value)
        return BoundResult.from_aux(variant.value, np.array([[0.0, p112_entry(t)], [0.0, 0.0]]), {"t": t})

    if variant == SingleVariant.P112_MIN:
        t_best, entry = _minimize(p112_entry)
        return BoundResult.from_aux(variant.value, np.array([[0.0, entry], [0.0, 0.0]]),
                                    {"argmin_t": t_best, "grid_points": len(t_grid())})

    if variant == SingleVariant.KITTANEH_SUM:
        return BoundResult.scalar(variant.value, 0.5 * norm2(s.gram(0.5) + s.cogram(0.5)))

    return BoundResult.scalar(variant.value, float(np.sqrt(0.5 * norm2(s.gram(1.0) + s.cogram(1.0)))))


def product_bound(A, B, t: Optional[float] = None) -> BoundResult:
    """
    w(AB) ≤ ¼‖|A|^{2t} + |B*|^{2t}‖·‖|A*|^{2(1−t)} + |B|^{2(1−t)}‖; t=None minimizes over the t-grid
    """
    A, B = MatrixValidator.same_square(A, B)
    a, b = Spectra(A, "A"), Spectra(B, "B")

    if t is None:
        t_best, factor = _minimize(lambda s: _product_factor(a, b, s))
        return BoundResult.scalar("product_min", 0.25 * factor, {"argmin_t": t_best})

    t = MatrixValidator.unit_interval(t)
    return BoundResult.scalar("product", 0.25 * _product_factor(a, b, t), {"t": t})


def sum_product_bound(A, B, C, D, variant) -> BoundResult:
    """
    w(AB ± CD) ≤ ¼(min_t factor(A, B) + min_t factor(C, D))
    """
    A, B, C, D = MatrixValidator.same_square(A, B, C, D)
    variant = SumProductVariant(variant)
    mixed = variant == SumProductVariant.TH4
    a, b, c, d = Spectra(A, "A"), Spectra(B, "B"), Spectra(C, "C"), Spectra(D, "D")

    t_ab, first = _minimize(lambda s: _product_factor(a, b, s, mixed))
    t_cd, second = _minimize(lambda s: _product_factor(c, d, s, mixed))
    return BoundResult.scalar(variant.value, 0.25 * (first + second), {"argmin_t_ab": t_ab, "argmin_t_cd": t_cd})


def commutator_bound(A, B) -> BoundResult:
    """
    w(AB ± BA) through the sum-of-products bound with C = B, D = A
    """
    A, B = MatrixValidator.same_square(A, B)
    result = sum_product_bound(A, B, B, A, SumProductVariant.TH3)

    a, b = Spectra(A, "A"), Spectra(B, "B")
    half = 0.5 * norm2(a.gram(0.5) + b.cogram(0.5)) * norm2(b.gram(0.5) + a.cogram(0.5))
    return BoundResult.scalar("commutator", result.aux[0, 0], {**result.params, "t_half_value": half})


def unitary_bound(A, variant) -> BoundResult:
    """
    For unitary U, V: w(AU ± VA) and w(AU ± VA*) (sum) or w(AU) (product)
    from min_t ‖|A|^{2t} + I‖·‖|A*|^{2(1−t)} + I‖
    """
    A = MatrixValidator.square(A)
    variant = UnitaryVariant(variant)
    s = Spectra(A, "A")
    identity = np.eye(A.shape[0])

    t_best, factor = _minimize(lambda t: norm2(s.gram(t) + identity) * norm2(s.cogram(1.0 - t) + identity))
    scale = 0.5 if variant == UnitaryVariant.SUM else 0.25
    return BoundResult.scalar(f"unitary_{variant.value}", scale * factor, {"argmin_t": t_best})


def lower_bound_sum(A, B) -> float:
    """½‖A + B‖ ≤ w([[0, A], [B*, 0]])"""
    A, B = MatrixValidator.same_square(A, B)
    return 0.5 * norm2(A + B)
