"""
Error handling and validation utilities
"""
from typing import Optional, Tuple
import math

import numpy as np

import config


class WRadiusError(Exception):
    """Base error; carries the CLI exit code it maps to"""
    exit_code = config.EXIT_CODES["dimension"]


class MatrixValidationError(WRadiusError):
    """A matrix argument violates an operation's precondition"""
    exit_code = config.EXIT_CODES["dimension"]


class NonSquareError(MatrixValidationError):
    pass


class NotHermitianError(MatrixValidationError):
    pass


class NotPsdError(MatrixValidationError):
    pass


class DimensionMismatchError(MatrixValidationError):
    pass


class NonFiniteEntryError(MatrixValidationError):
    pass


class NegativeEntryError(MatrixValidationError):
    pass


class NonRealError(MatrixValidationError):
    pass


class ToleranceNotPositiveError(MatrixValidationError):
    pass


class MissingParameterError(MatrixValidationError):
    pass


class InvalidFunctionPairError(MatrixValidationError):
    pass


class ParseError(WRadiusError):
    """Matrix file could not be read or does not match the schema"""
    exit_code = config.EXIT_CODES["parse"]


class UnknownBoundError(WRadiusError):
    """Requested bound name is not in the catalogue"""
    exit_code = config.EXIT_CODES["unknown_bound"]


class UsageError(WRadiusError):
    """Invalid command-line usage"""
    exit_code = config.EXIT_CODES["usage"]


class MatrixValidator:
    """Validates and normalizes matrix arguments"""

    @staticmethod
    def as_matrix(value, name: str = "A") -> np.ndarray:
        """
        Convert to a 2-D complex128 array
        Raises MatrixValidationError if the shape or entries are invalid
        """
        try:
            matrix = np.asarray(value, dtype=np.complex128)
        except (TypeError, ValueError) as e:
            raise MatrixValidationError(f"{name} is not a numeric matrix: {e}")

        if matrix.ndim != 2 or matrix.shape[0] == 0 or matrix.shape[1] == 0:
            raise MatrixValidationError(f"{name} must be a non-empty 2-D matrix, got shape {matrix.shape}")

        if not np.all(np.isfinite(matrix)):
            raise NonFiniteEntryError(f"{name} has NaN or infinite entries")

        return matrix

    @staticmethod
    def square(value, name: str = "A") -> np.ndarray:
        """Convert and require a square matrix"""
        matrix = MatrixValidator.as_matrix(value, name)
        if matrix.shape[0] != matrix.shape[1]:
            raise NonSquareError(f"{name} must be square, got {matrix.shape[0]}x{matrix.shape[1]}")
        return matrix

    @staticmethod
    def same_square(*matrices, names: Optional[Tuple[str, ...]] = None) -> Tuple[np.ndarray, ...]:
        """Require square matrices sharing one dimension"""
        names = names or tuple("ABCD"[i] if i < 4 else f"M{i}" for i in range(len(matrices)))
        converted = tuple(MatrixValidator.square(m, name) for m, name in zip(matrices, names))
        sizes = {m.shape[0] for m in converted}
        if len(sizes) > 1:
            shapes = ", ".join(f"{name}: {m.shape[0]}x{m.shape[1]}" for m, name in zip(converted, names))
            raise DimensionMismatchError(f"operands must share one dimension ({shapes})")
        return converted

    @staticmethod
    def tolerance(tol: float) -> float:
        """Require a positive finite tolerance"""
        if tol is None or not math.isfinite(tol) or tol <= 0:
            raise ToleranceNotPositiveError(f"tolerance must be positive, got {tol}")
        return float(tol)

    @staticmethod
    def unit_interval(t: Optional[float], name: str = "t") -> float:
        """Require a parameter in [0, 1]"""
        if t is None:
            raise MissingParameterError(f"parameter {name} is required")
        if not math.isfinite(t) or t < 0.0 or t > 1.0:
            raise MatrixValidationError(f"parameter {name} must lie in [0, 1], got {t}")
        return float(t)

    @staticmethod
    def nonnegative_real(value, name: str = "A") -> np.ndarray:
        """Require a square matrix with real, entrywise nonnegative entries"""
        matrix = MatrixValidator.square(value, name)
        if np.any(matrix.imag != 0.0):
            raise NonRealError(f"{name} has entries with nonzero imaginary part")
        if np.any(matrix.real < 0.0):
            raise NegativeEntryError(f"{name} has negative entries")
        return matrix.real.astype(np.float64)


def handle_cli_error(error: Exception) -> Tuple[int, str]:
    """
    Convert errors to an exit code and a user-friendly message
    """
    if isinstance(error, ParseError):
        return error.exit_code, f"Could not read matrix file: {error}"

    if isinstance(error, UnknownBoundError):
        return error.exit_code, f"Unknown bound: {error}. Run 'bounds --list' to see the catalogue."

    if isinstance(error, UsageError):
        return error.exit_code, f"Usage error: {error}"

    if isinstance(error, MatrixValidationError):
        return error.exit_code, f"Invalid matrix input: {error}"

    if isinstance(error, WRadiusError):
        return error.exit_code, str(error)

    # Anything else is a bug rather than bad input
    return config.EXIT_CODES["violation"], f"Unexpected failure: {type(error).__name__}: {error}"
