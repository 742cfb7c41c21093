"""
Spectral matrix functions: PSD fractional powers, polar decomposition,
and the contraction factorization A = g(|A*|)·K·f(|A|)
"""
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple
import logging

import numpy as np

import config
from linalg.matcore import hermitian_eig, svd, norm2
from utils import (
    MatrixValidator,
    NotPsdError,
    DimensionMismatchError,
    InvalidFunctionPairError,
)

logger = logging.getLogger(__name__)

ScalarFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FunctionPair:
    """Nonnegative pair (f, g) on [0, ∞) with f(λ)·g(λ) = λ"""
    f: ScalarFunction
    g: ScalarFunction
    label: str

    def check(self, samples: np.ndarray) -> None:
        """
        Sample the pair's hypotheses at the given points
        Raises InvalidFunctionPairError on a negative value or a broken product identity
        """
        lam = np.asarray(samples, dtype=np.float64)
        fv = np.asarray(self.f(lam), dtype=np.float64)
        gv = np.asarray(self.g(lam), dtype=np.float64)

        if np.any(fv < 0.0) or np.any(gv < 0.0):
            raise InvalidFunctionPairError(f"pair {self.label} takes negative values on [0, λ_max]")

        defect = np.abs(fv * gv - lam)
        limit = config.TOLERANCES["function_pair"] * (1.0 + lam)
        if np.any(defect > limit):
            worst = float(lam[np.argmax(defect - limit)])
            raise InvalidFunctionPairError(f"pair {self.label} violates f(λ)g(λ) = λ at λ = {worst:.6g}")


def power_pair(t: float) -> FunctionPair:
    """f(λ) = λ^t, g(λ) = λ^(1−t), with λ⁰ = 1 at λ = 0"""
    t = MatrixValidator.unit_interval(t)
    return FunctionPair(
        f=lambda lam: np.power(lam, t),
        g=lambda lam: np.power(lam, 1.0 - t),
        label=f"power:t={t:g}",
    )


class PowerFamily:
    """
    Fractional powers P^s of one PSD matrix, sharing a single eigendecomposition
    """

    def __init__(self, P, name: str = "P"):
        self.matrix = MatrixValidator.square(P, name)
        eig = hermitian_eig(self.matrix)
        self.dimension = self.matrix.shape[0]
        self.eigenvectors = eig.eigenvectors
        self.eigenvalues = _clamp_psd(eig.eigenvalues, name)
        self.symmetric = 0.5 * (self.matrix + self.matrix.conj().T)

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    def apply(self, fn: ScalarFunction) -> np.ndarray:
        """V·diag(fn(λ))·V*"""
        values = np.asarray(fn(self.eigenvalues), dtype=np.float64)
        return (self.eigenvectors * values) @ self.eigenvectors.conj().T

    def __call__(self, s: float) -> np.ndarray:
        s = MatrixValidator.unit_interval(s, "s")
        if s == 0.0:
            return np.eye(self.dimension, dtype=np.complex128)
        if s == 1.0:
            return self.symmetric.copy()
        return self.apply(lambda lam: np.power(lam, s))


def _clamp_psd(eigenvalues: np.ndarray, name: str) -> np.ndarray:
    scale = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    floor = -config.TOLERANCES["psd_clamp"] * scale
    if eigenvalues.size and eigenvalues[0] < floor:
        raise NotPsdError(f"{name} is not positive semidefinite (eigenvalue {eigenvalues[0]:.3e})")
    if eigenvalues.size and eigenvalues[0] < 0.0:
        logger.debug("clamping %d slightly negative eigenvalues of %s", int(np.sum(eigenvalues < 0.0)), name)
    return np.maximum(eigenvalues, 0.0)


def psd_power(P, s: float) -> np.ndarray:
    """P^s for PSD P and s in [0, 1]; P^0 = I exactly"""
    return PowerFamily(P)(s)


def psd_function(P, fn: ScalarFunction) -> np.ndarray:
    """fn(P) for PSD P through the spectral theorem"""
    return PowerFamily(P).apply(fn)


def abs_factors(A) -> Tuple[np.ndarray, np.ndarray]:
    """(|A|, |A*|) = ((A*A)^(1/2), (AA*)^(1/2))"""
    A = MatrixValidator.square(A)
    Ah = A.conj().T
    return psd_power(Ah @ A, 0.5), psd_power(A @ Ah, 0.5)


def polar_isometry(A) -> np.ndarray:
    """
    Partial isometry U of the polar decomposition A = U|A|
    Singular values at or below the rank cutoff are treated as zero, so U vanishes on ker A
    """
    A = MatrixValidator.square(A)
    factors = svd(A)
    sigma = factors.singular_values
    if factors.sigma_max == 0.0:
        return np.zeros_like(A)

    keep = sigma > config.TOLERANCES["polar_rank_cutoff"] * factors.sigma_max
    W = factors.U[:, keep]
    V = factors.V[:, keep]
    return W @ V.conj().T


def contraction_abs(K) -> Tuple[np.ndarray, np.ndarray]:
    """
    (|K|, |K*|) = (V·Σ·V*, U·Σ·U*) from one SVD of K
    Keeps kernel singular values at rounding level instead of their square roots
    """
    factors = svd(K)
    sigma = factors.singular_values
    return (factors.V * sigma) @ factors.V.conj().T, (factors.U * sigma) @ factors.U.conj().T


@dataclass(frozen=True)
class ContractionFactorization:
    """A = g(|A*|)·K·f(|A|) with ‖K‖ ≤ 1"""
    A: np.ndarray
    K: np.ndarray
    absA: np.ndarray
    absAstar: np.ndarray
    pair: FunctionPair
    f_absA: np.ndarray = field(repr=False)
    g_absAstar: np.ndarray = field(repr=False)

    @property
    def contraction_norm(self) -> float:
        return norm2(self.K)

    @property
    def reconstruction_residual(self) -> float:
        return norm2(self.g_absAstar @ self.K @ self.f_absA - self.A)

    def abs_K(self) -> np.ndarray:
        """|K| = (K*K)^(1/2)"""
        return contraction_abs(self.K)[0]

    def abs_K_star(self) -> np.ndarray:
        """|K*| = (KK*)^(1/2)"""
        return contraction_abs(self.K)[1]

    def left_form(self) -> np.ndarray:
        """f(|A|)·|K|·f(|A|)"""
        return self.f_absA @ self.abs_K() @ self.f_absA

    def right_form(self) -> np.ndarray:
        """g(|A*|)·|K*|·g(|A*|)"""
        return self.g_absAstar @ self.abs_K_star() @ self.g_absAstar


def contraction_factorization(A, pair: FunctionPair) -> ContractionFactorization:
    """
    Factor A = g(|A*|)·K·f(|A|) with K the polar partial isometry
    g(|A*|)·U = U·g(|A|) because U intertwines |A| and |A*| and annihilates ker|A|,
    so the same K serves every admissible pair
    """
    A = MatrixValidator.square(A)
    Ah = A.conj().T
    family = PowerFamily(Ah @ A, "A*A")
    family_star = PowerFamily(A @ Ah, "AA*")

    absA = family(0.5)
    absAstar = family_star(0.5)
    abs_family = PowerFamily(absA, "|A|")
    abs_family_star = PowerFamily(absAstar, "|A*|")
    pair.check(np.concatenate([abs_family.eigenvalues, abs_family_star.eigenvalues]))

    K = polar_isometry(A)
    result = ContractionFactorization(
        A=A,
        K=K,
        absA=absA,
        absAstar=absAstar,
        pair=pair,
        f_absA=abs_family.apply(pair.f),
        g_absAstar=abs_family_star.apply(pair.g),
    )

    slack = config.TOLERANCES["contraction_slack"]
    if result.contraction_norm > 1.0 + slack:
        logger.warning("contraction norm %.3e exceeds 1 + %.0e for pair %s", result.contraction_norm, slack, pair.label)
    return result


def lemma_slack(A, pair: FunctionPair, x, y, factorization: Optional[ContractionFactorization] = None) -> float:
    """
    rhs − lhs of |⟨Ax,y⟩|² ≤ ⟨f(|A|)|K|f(|A|)x,x⟩·⟨g(|A*|)|K*|g(|A*|)y,y⟩
    """
    fac = factorization or contraction_factorization(A, pair)
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    y = np.asarray(y, dtype=np.complex128).reshape(-1)
    m = fac.A.shape[0]
    if x.size != m or y.size != m:
        raise DimensionMismatchError(f"vectors of length {x.size} and {y.size} do not match dimension {m}")

    lhs = abs(np.vdot(y, fac.A @ x)) ** 2
    left = np.vdot(x, fac.left_form() @ x).real
    right = np.vdot(y, fac.right_form() @ y).real
    return float(left * right - lhs)


def lemma_inequality_check(A, pair: FunctionPair, x, y) -> bool:
    """Whether the mixed Schwarz inequality holds within the lemma slack"""
    return lemma_slack(A, pair, x, y) >= -config.TOLERANCES["lemma_slack"]
