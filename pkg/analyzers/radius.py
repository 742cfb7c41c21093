"""
Certified numerical radius w(A), and the fast path for entrywise-nonnegative matrices
"""
from typing import Optional, Tuple
import logging
import math

import numpy as np

import config
from linalg.block_matrix import BlockOperatorMatrix
from linalg.enclosure import Enclosure, EnclosureKind
from linalg.golden import golden_section_max
from linalg.matcore import norm2
from utils import MatrixValidator

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def default_tolerance(norm: float) -> float:
    return config.TOLERANCES["sweep_relative"] * (1.0 + norm)


class SupportFunctionSweep:
    """
    Samples h(θ) = λ_max((e^{iθ}A + e^{−iθ}A*)/2), the support function of the
    numerical range, and bounds w(A) = max_θ h(θ) from both sides.

    lo: the largest |⟨Ax,x⟩| over the computed top eigenvectors x (and ½‖A‖).
    hi: per grid cell, the smaller of the Lipschitz bound (constant ‖A‖) and the
    modulus of the vertex where the two supporting lines of the cell meet.
    """

    def __init__(self, A: np.ndarray, norm: float):
        self.A = A
        self.norm = norm
        self.slack = config.TOLERANCES["eigen_slack"] * (1.0 + norm) * A.shape[0]
        self.thetas = np.empty(0)
        self.support = np.empty(0)
        self.best_point = 0.5 * norm
        self.evaluations = 0

    def _evaluate(self, thetas: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        phase = np.exp(1j * thetas)[:, None, None]
        H = 0.5 * (phase * self.A + np.conj(phase) * self.A.conj().T)
        values, vectors = np.linalg.eigh(H)
        top = vectors[:, :, -1]
        points = np.einsum("ki,ij,kj->k", top.conj(), self.A, top)
        self.evaluations += thetas.size
        return values[:, -1], np.abs(points)

    def add(self, thetas: np.ndarray) -> None:
        support, moduli = self._evaluate(thetas)
        self.best_point = max(self.best_point, float(moduli.max()))
        merged = np.concatenate([self.thetas, thetas])
        values = np.concatenate([self.support, support])
        order = np.argsort(merged, kind="stable")
        self.thetas, self.support = merged[order], values[order]

    def support_at(self, theta: float) -> float:
        support, moduli = self._evaluate(np.array([theta]))
        self.best_point = max(self.best_point, float(moduli[0]))
        return float(support[0])

    @property
    def lo(self) -> float:
        return max(self.best_point - self.slack, 0.0)

    def cell_bounds(self) -> np.ndarray:
        """Certified upper bound on |z| for z in W(A) whose direction falls in each cell"""
        theta0 = self.thetas
        theta1 = np.roll(self.thetas, -1)
        theta1[-1] += TWO_PI
        h0 = self.support + self.slack
        h1 = np.roll(h0, -1)
        delta = theta1 - theta0

        lipschitz = 0.5 * (h0 + h1) + 0.5 * self.norm * delta

        sin_delta = np.sin(delta)
        with np.errstate(divide="ignore", invalid="ignore"):
            vx = (h0 * np.sin(theta1) - h1 * np.sin(theta0)) / sin_delta
            vy = (h0 * np.cos(theta1) - h1 * np.cos(theta0)) / sin_delta
            vertex = np.hypot(vx, vy)
        vertex = np.where((sin_delta > 0.0) & np.isfinite(vertex), vertex, np.inf)
        return np.minimum(lipschitz, vertex)

    def refine_best_cell(self) -> None:
        """Golden-section ascent of h around the best sample; raises lo only"""
        k = int(np.argmax(self.support))
        a = self.thetas[k - 1] if k > 0 else self.thetas[-1] - TWO_PI
        b = self.thetas[k + 1] if k + 1 < self.thetas.size else self.thetas[0] + TWO_PI
        golden_section_max(self.support_at, float(a), float(b), config.SWEEP["golden_iterations"])


def numerical_radius(A, tol: Optional[float] = None) -> Enclosure:
    """
    Certified enclosure of w(A) = sup |⟨Ax,x⟩| over unit x

    Starts from a fixed grid of 64 directions rather than a uniform grid of
    max(64, ⌈π‖A‖/√tol⌉) points, then bisects only the cells whose certified
    bound still exceeds lo + tol/2. Both ends stay rigorous at every round.
    """
    A = MatrixValidator.square(A)
    norm = norm2(A)
    tol = MatrixValidator.tolerance(default_tolerance(norm) if tol is None else tol)

    if norm == 0.0:
        return Enclosure(0.0, 0.0, EnclosureKind.EXACT)

    if A.shape[0] == 1:
        value = abs(complex(A[0, 0]))
        radius = 4.0 * np.finfo(float).eps * value
        return Enclosure(value - radius, value + radius, EnclosureKind.EXACT)

    sweep = SupportFunctionSweep(A, norm)
    if tol < 4.0 * sweep.slack:
        logger.debug("tolerance %.3e below rounding level, raised to %.3e", tol, 4.0 * sweep.slack)
        tol = 4.0 * sweep.slack

    count = config.SWEEP["initial_directions"]
    sweep.add(np.arange(count) * (TWO_PI / count))
    ceiling = norm + sweep.slack

    hi = ceiling
    sweep.refine_best_cell()
    for _ in range(config.SWEEP["max_rounds"]):
        cells = sweep.cell_bounds()
        hi = min(float(cells.max()), ceiling)
        lo = sweep.lo
        if hi - lo <= tol:
            break

        open_cells = np.nonzero(cells > lo + 0.5 * tol)[0]
        if sweep.thetas.size + open_cells.size > config.SWEEP["max_directions"]:
            logger.warning("sweep stopped at %d directions with width %.3e > tol %.3e",
                           sweep.thetas.size, hi - lo, tol)
            break

        theta0 = sweep.thetas[open_cells]
        theta1 = np.where(open_cells + 1 < sweep.thetas.size,
                          sweep.thetas[(open_cells + 1) % sweep.thetas.size],
                          sweep.thetas[0] + TWO_PI)
        midpoints = np.mod(0.5 * (theta0 + theta1), TWO_PI)
        sweep.add(midpoints)
    else:
        logger.warning("sweep did not reach tol %.3e after %d rounds (width %.3e)",
                       tol, config.SWEEP["max_rounds"], hi - sweep.lo)

    lo = min(sweep.lo, hi)
    logger.debug("w sweep: %d directions, enclosure [%.12g, %.12g]", sweep.evaluations, lo, hi)
    return Enclosure(lo, hi, EnclosureKind.SWEPT)


def block_numerical_radius(A: BlockOperatorMatrix, tol: Optional[float] = None) -> Enclosure:
    """w of a block operator matrix through its flattened representation"""
    return numerical_radius(A.flatten(), tol)


def w_nonneg(A) -> Enclosure:
    """
    w(A) = ½·λ_max(A + Aᵀ) for a real matrix with nonnegative entries
    """
    A = MatrixValidator.nonnegative_real(A)
    value = 0.5 * float(np.linalg.eigvalsh(A + A.T)[-1])
    radius = config.TOLERANCES["eigen_slack"] * (1.0 + float(np.linalg.norm(A, 2)))
    return Enclosure(max(value - radius, 0.0), value + radius, EnclosureKind.FASTPATH)


def crosscheck(A) -> bool:
    """Whether the fast path and the certified sweep agree on a nonnegative matrix"""
    fast = w_nonneg(A)
    swept = numerical_radius(MatrixValidator.nonnegative_real(A), 1e-8)
    return fast.overlaps(swept)
