"""
Seeded random ensembles of block operator matrices
Identical specs give identical matrices: every instance draws from its own
child of numpy's SeedSequence(seed)
"""
from typing import Iterator, List, Literal

import numpy as np
from pydantic import BaseModel, Field

import config
from linalg.block_matrix import BlockOperatorMatrix

EnsembleName = Literal["gaussian", "nilpotent", "normal", "positive", "shift"]


class EnsembleSpec(BaseModel):
    """Which ensemble to draw, how many instances, and their shape"""
    seed: int = Field(default=config.VERIFY["seed"], ge=0, lt=2 ** 64)
    count: int = Field(default=config.VERIFY["count"], ge=1)
    n: int = Field(default=config.VERIFY["n"], ge=1)
    d: int = Field(default=config.VERIFY["d"], ge=1)
    ensemble: EnsembleName = config.VERIFY["ensemble"]


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard complex Gaussian entries, E|z|² = 1"""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_unitary(rng: np.random.Generator, m: int) -> np.ndarray:
    """Haar unitary from the QR factorization of a Gaussian matrix"""
    Q, R = np.linalg.qr(complex_gaussian(rng, (m, m)))
    phases = np.diagonal(R) / np.abs(np.diagonal(R))
    return Q * phases


def _gaussian(rng: np.random.Generator, m: int) -> np.ndarray:
    return complex_gaussian(rng, (m, m))


def _nilpotent(rng: np.random.Generator, m: int) -> np.ndarray:
    return np.triu(complex_gaussian(rng, (m, m)), k=1)


def _normal(rng: np.random.Generator, m: int) -> np.ndarray:
    U = random_unitary(rng, m)
    return (U * complex_gaussian(rng, m)) @ U.conj().T


def _positive(rng: np.random.Generator, m: int) -> np.ndarray:
    G = complex_gaussian(rng, (m, m))
    return G.conj().T @ G


def _shift(rng: np.random.Generator, m: int) -> np.ndarray:
    """Weighted forward shift: weights on the superdiagonal"""
    return np.diag(np.abs(rng.standard_normal(m - 1)), k=1).astype(np.complex128)


GENERATORS = {
    "gaussian": _gaussian,
    "nilpotent": _nilpotent,
    "normal": _normal,
    "positive": _positive,
    "shift": _shift,
}


def generate_instance(spec: EnsembleSpec, index: int) -> BlockOperatorMatrix:
    """The index-th instance of the ensemble, independent of how many others are drawn"""
    child = np.random.SeedSequence(spec.seed, spawn_key=(index,))
    rng = np.random.default_rng(child)
    matrix = GENERATORS[spec.ensemble](rng, spec.n * spec.d)
    return BlockOperatorMatrix.from_flat(matrix, spec.n)


def iter_ensemble(spec: EnsembleSpec) -> Iterator[BlockOperatorMatrix]:
    for index in range(spec.count):
        yield generate_instance(spec, index)


def generate_ensemble(spec: EnsembleSpec) -> List[BlockOperatorMatrix]:
    return list(iter_ensemble(spec))
