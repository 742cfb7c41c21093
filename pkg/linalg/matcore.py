"""
Dense complex matrix arithmetic and spectral factorizations
Every other module builds on these kernels
"""
from dataclasses import dataclass
import logging

import numpy as np

import config
from linalg.enclosure import Enclosure, EnclosureKind
from utils import MatrixValidator, NotHermitianError, DimensionMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HermitianEig:
    """Eigenvalues ascending, eigenvectors as orthonormal columns"""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])


@dataclass(frozen=True)
class SvdFactors:
    """A = U·diag(σ)·V* with σ descending"""
    U: np.ndarray
    singular_values: np.ndarray
    V: np.ndarray

    @property
    def sigma_max(self) -> float:
        return float(self.singular_values[0]) if self.singular_values.size else 0.0


def adjoint(A) -> np.ndarray:
    """Conjugate transpose"""
    A = MatrixValidator.as_matrix(A)
    return A.conj().T.copy()


def matmul(A, B) -> np.ndarray:
    """Standard matrix product"""
    A = MatrixValidator.as_matrix(A, "A")
    B = MatrixValidator.as_matrix(B, "B")
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatchError(
            f"inner dimensions differ: {A.shape[0]}x{A.shape[1]} times {B.shape[0]}x{B.shape[1]}"
        )
    return A @ B


def symmetrize(H) -> np.ndarray:
    """
    Return (H + H*)/2 after checking H is Hermitian within tolerance
    Raises NotHermitianError if the asymmetry is too large
    """
    H = MatrixValidator.square(H, "H")
    asymmetry = np.linalg.norm(H - H.conj().T)
    limit = config.TOLERANCES["hermitian_asymmetry"] * (1.0 + np.linalg.norm(H))
    if asymmetry > limit:
        raise NotHermitianError(f"matrix is not Hermitian (‖H − H*‖_F = {asymmetry:.3e} > {limit:.3e})")
    return 0.5 * (H + H.conj().T)


def hermitian_eig(H) -> HermitianEig:
    """
    Eigendecomposition of a Hermitian matrix (LAPACK heevd via numpy)
    Input is symmetrized silently when its asymmetry is within tolerance
    """
    H = symmetrize(H)
    eigenvalues, eigenvectors = np.linalg.eigh(H)
    return HermitianEig(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def svd(A) -> SvdFactors:
    """Thin singular value decomposition"""
    A = MatrixValidator.as_matrix(A)
    U, sigma, Vh = np.linalg.svd(A, full_matrices=False)
    return SvdFactors(U=U, singular_values=sigma, V=Vh.conj().T)


def norm2(A) -> float:
    """Largest singular value as a plain float"""
    A = MatrixValidator.as_matrix(A)
    return float(np.linalg.svd(A, compute_uv=False)[0])


def operator_norm(A) -> Enclosure:
    """Operator norm ‖A‖ = σ_max(A) with a rounding enclosure"""
    A = MatrixValidator.as_matrix(A)
    sigma = norm2(A)
    radius = config.TOLERANCES["norm_width"] * max(A.shape) * (1.0 + sigma)
    return Enclosure(max(sigma - radius, 0.0), sigma + radius, EnclosureKind.EXACT)


# Residuals used by the kernel-quality checks

def eig_residuals(H, eig: HermitianEig) -> dict:
    """Reconstruction and orthonormality residuals of an eigendecomposition"""
    H = MatrixValidator.square(H, "H")
    V = eig.eigenvectors
    m = H.shape[0]
    return {
        "reconstruction": float(np.linalg.norm(H @ V - V * eig.eigenvalues, 2)),
        "orthonormality": float(np.linalg.norm(V.conj().T @ V - np.eye(m), 2)),
        "scale": float(np.linalg.norm(H, 2)),
    }


def svd_residuals(A, factors: SvdFactors) -> dict:
    """Reconstruction and orthonormality residuals of an SVD"""
    A = MatrixValidator.as_matrix(A)
    U, sigma, V = factors.U, factors.singular_values, factors.V
    k = sigma.size
    return {
        "reconstruction": float(np.linalg.norm(A - (U * sigma) @ V.conj().T, 2)),
        "orthonormality_u": float(np.linalg.norm(U.conj().T @ U - np.eye(k), 2)),
        "orthonormality_v": float(np.linalg.norm(V.conj().T @ V - np.eye(k), 2)),
        "scale": factors.sigma_max,
    }
