"""
Block operator matrices A = [A_ij] on the n-fold direct sum of C^d
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, Sequence

import numpy as np

from linalg.matcore import norm2
from linalg.specfun import PowerFamily, polar_isometry
from utils import MatrixValidator, DimensionMismatchError, MatrixValidationError


@dataclass(frozen=True, eq=False)
class BlockOperatorMatrix:
    """n×n grid of d×d complex blocks"""
    blocks: np.ndarray  # shape (n, n, d, d)
    _cache: Dict[Hashable, Any] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        blocks = np.asarray(self.blocks, dtype=np.complex128)
        if blocks.ndim != 4 or blocks.shape[0] != blocks.shape[1] or blocks.shape[2] != blocks.shape[3]:
            raise DimensionMismatchError(f"block grid must have shape (n, n, d, d), got {blocks.shape}")
        if blocks.shape[0] == 0 or blocks.shape[2] == 0:
            raise MatrixValidationError("block grid must be non-empty")
        if not np.all(np.isfinite(blocks)):
            raise MatrixValidationError("block grid has NaN or infinite entries")
        blocks.setflags(write=False)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence[Any]]) -> "BlockOperatorMatrix":
        """Build from a nested n×n list of d×d matrices"""
        n = len(grid)
        if n == 0 or any(len(row) != n for row in grid):
            raise DimensionMismatchError("block grid must be square")
        converted = [[MatrixValidator.square(b, f"A[{i}][{j}]") for j, b in enumerate(row)] for i, row in enumerate(grid)]
        sizes = {b.shape[0] for row in converted for b in row}
        if len(sizes) != 1:
            raise DimensionMismatchError(f"all blocks must share one dimension, got sizes {sorted(sizes)}")
        return cls(np.array(converted, dtype=np.complex128))

    @classmethod
    def from_flat(cls, matrix, n: int) -> "BlockOperatorMatrix":
        """Split an (n·d)×(n·d) matrix into an n×n grid"""
        matrix = MatrixValidator.square(matrix)
        m = matrix.shape[0]
        if n <= 0 or m % n:
            raise DimensionMismatchError(f"cannot split a {m}x{m} matrix into {n}x{n} blocks")
        d = m // n
        return cls(matrix.reshape(n, d, n, d).transpose(0, 2, 1, 3).copy())

    @property
    def n(self) -> int:
        return self.blocks.shape[0]

    @property
    def d(self) -> int:
        return self.blocks.shape[2]

    def block(self, i: int, j: int) -> np.ndarray:
        return self.blocks[i, j]

    def flatten(self) -> np.ndarray:
        """The (n·d)×(n·d) matrix the grid represents"""
        n, d = self.n, self.d
        return self.blocks.transpose(0, 2, 1, 3).reshape(n * d, n * d).copy()

    # Per-block spectral data, computed once and reused by every bound

    def memo(self, key: Hashable, factory: Callable[[], Any]) -> Any:
        if key not in self._cache:
            self._cache[key] = factory()
        return self._cache[key]

    def gram(self, i: int, j: int) -> PowerFamily:
        """Powers of A_ij*A_ij, so gram(i, j)(s) = |A_ij|^(2s)"""
        def build():
            A = self.block(i, j)
            return PowerFamily(A.conj().T @ A, f"|A[{i}][{j}]|²")
        return self.memo(("gram", i, j), build)

    def cogram(self, i: int, j: int) -> PowerFamily:
        """Powers of A_ij·A_ij*, so cogram(i, j)(s) = |A_ij*|^(2s)"""
        def build():
            A = self.block(i, j)
            return PowerFamily(A @ A.conj().T, f"|A[{i}][{j}]*|²")
        return self.memo(("cogram", i, j), build)

    def abs_block(self, i: int, j: int) -> PowerFamily:
        """Powers of |A_ij|"""
        return self.memo(("abs", i, j), lambda: PowerFamily(self.gram(i, j)(0.5), f"|A[{i}][{j}]|"))

    def abs_star_block(self, i: int, j: int) -> PowerFamily:
        """Powers of |A_ij*|"""
        return self.memo(("abs_star", i, j), lambda: PowerFamily(self.cogram(i, j)(0.5), f"|A[{i}][{j}]*|"))

    def contraction(self, i: int, j: int) -> np.ndarray:
        """Polar partial isometry K_ij of A_ij"""
        return self.memo(("polar", i, j), lambda: polar_isometry(self.block(i, j)))

    def block_norm(self, i: int, j: int) -> float:
        return self.memo(("norm", i, j), lambda: norm2(self.block(i, j)))
