"""
Bound catalogue: CLI names mapped to evaluators
Transparent registry in the manner of a weight table; every name a user can
pass to `bounds --bounds` is listed here
"""
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Union
import logging

import numpy as np

from analyzers import block_bounds, operator_bounds
from analyzers.block_bounds import BoundId
from analyzers.operator_bounds import SingleVariant, TwoBlockVariant
from analyzers.results import BoundResult
from linalg.block_matrix import BlockOperatorMatrix
from utils import UnknownBoundError, UsageError

logger = logging.getLogger(__name__)

Operand = Union[np.ndarray, BlockOperatorMatrix]

BLOCK = "block"
TWO_BLOCK = "two_block"
SINGLE = "single"

DEFAULT_T = 0.5


@dataclass(frozen=True)
class CatalogueEntry:
    name: str
    family: str
    description: str
    evaluate: Callable[[Operand, Optional[float]], BoundResult]
    takes_t: bool = False
    min_variant: Optional[str] = None

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "family": self.family,
            "takes_t": self.takes_t,
            "min_variant": self.min_variant,
            "description": self.description,
        }


def _as_block(operand: Operand, name: str) -> BlockOperatorMatrix:
    if not isinstance(operand, BlockOperatorMatrix):
        raise UsageError(f"bound {name} needs a block matrix file (kind 'block')")
    return operand


def _as_pair(operand: Operand, name: str, zero_diagonal: bool) -> BlockOperatorMatrix:
    A = _as_block(operand, name)
    if A.n != 2:
        raise UsageError(f"bound {name} needs a 2x2 block grid, got {A.n}x{A.n}")
    if zero_diagonal and (np.any(A.block(0, 0)) or np.any(A.block(1, 1))):
        raise UsageError(f"bound {name} needs zero diagonal blocks")
    return A


def _as_dense(operand: Operand) -> np.ndarray:
    if isinstance(operand, BlockOperatorMatrix):
        return operand.flatten()
    return operand


def _block_entry(bound_id: BoundId, description: str, min_variant: Optional[BoundId] = None) -> CatalogueEntry:
    takes_t = bound_id in block_bounds.T_FAMILIES
    return CatalogueEntry(
        name=bound_id.value,
        family=BLOCK,
        description=description,
        evaluate=lambda A, t: block_bounds.evaluate_bound(_as_block(A, bound_id.value), bound_id, t if takes_t else None),
        takes_t=takes_t,
        min_variant=min_variant.value if min_variant else None,
    )


def _two_block_entry(variant: TwoBlockVariant, description: str) -> CatalogueEntry:
    zero_diagonal = variant != TwoBlockVariant.P22

    def evaluate(operand: Operand, t: Optional[float]) -> BoundResult:
        A = _as_pair(operand, variant.value, zero_diagonal)
        if zero_diagonal:
            return operator_bounds.two_block_bound(A.block(0, 1), A.block(1, 0), variant, t)
        return operator_bounds.two_block_bound(A.block(0, 1), A.block(1, 0), variant, C=A.block(0, 0), D=A.block(1, 1))

    return CatalogueEntry(
        name=variant.value,
        family=TWO_BLOCK,
        description=description,
        evaluate=evaluate,
        takes_t=variant == TwoBlockVariant.PROP5,
    )


def _single_entry(variant: SingleVariant, description: str, min_variant: Optional[SingleVariant] = None) -> CatalogueEntry:
    takes_t = variant in (SingleVariant.PROP1, SingleVariant.P112)
    return CatalogueEntry(
        name=variant.value,
        family=SINGLE,
        description=description,
        evaluate=lambda A, t: operator_bounds.single_operator_bound(_as_dense(A), variant, t if takes_t else None),
        takes_t=takes_t,
        min_variant=min_variant.value if min_variant else None,
    )


CATALOGUE: Dict[str, CatalogueEntry] = {
    entry.name: entry
    for entry in [
        _block_entry(BoundId.HOU_DU, "a_ij = ‖A_ij‖ everywhere"),
        _block_entry(BoundId.AOK, "w(A_ii) on the diagonal, ‖A_ij‖ off it"),
        _block_entry(BoundId.BHUNIA_SQRT, "upper-triangular ‖|A_ij|+|A_ji*|‖^½·‖|A_ij*|+|A_ji|‖^½"),
        _block_entry(BoundId.REM2_I, "upper-triangular t-family with exponents 2t / 2(1−t)", BoundId.REM12_I),
        _block_entry(BoundId.REM2_II, "upper-triangular t-family with mixed exponents", BoundId.REM12_II),
        _block_entry(BoundId.REM12_I, "rem2_i minimized over t entry by entry"),
        _block_entry(BoundId.REM12_II, "rem2_ii minimized over t entry by entry"),
        _block_entry(BoundId.COR1_1, "off-diagonal contraction entries with the power pair λ^t, λ^(1−t)"),
        _block_entry(BoundId.COR2, "paired contraction entries, t above the diagonal and 1−t below"),
        _block_entry(BoundId.COR3, "paired contraction entries with one t"),
        _block_entry(BoundId.PROP4, "min{√½‖|A_ij|²+|A_ji*|²‖, √½‖|A_ij*|²+|A_ji|²‖} off the diagonal"),
        _two_block_entry(TwoBlockVariant.PROP5, "[[0, A], [B, 0]] with the power pair at t"),
        _two_block_entry(TwoBlockVariant.P2_MIN, "[[0, A], [B, 0]], smaller of the two quadratic means"),
        _two_block_entry(TwoBlockVariant.P2_MAX, "[[0, A], [B, 0]], larger of the two quadratic means"),
        _two_block_entry(TwoBlockVariant.P22, "[[C, A], [B, D]] through w(C), w(D) and p2_min"),
        _single_entry(SingleVariant.PROP1, "‖A‖^t·½‖|A|^(1−t)+|A*|^(1−t)‖", SingleVariant.PROP1_MIN),
        _single_entry(SingleVariant.PROP1_MIN, "prop1 minimized over t"),
        _single_entry(SingleVariant.P112, "½‖|A|^2t+|A*|^2t‖^½·‖|A*|^2(1−t)+|A|^2(1−t)‖^½", SingleVariant.P112_MIN),
        _single_entry(SingleVariant.P112_MIN, "p112 minimized over t"),
        _single_entry(SingleVariant.KITTANEH_SUM, "½‖|A|+|A*|‖"),
        _single_entry(SingleVariant.KITTANEH_SQ, "√(½‖|A|²+|A*|²‖)"),
    ]
}


class BoundCatalogue:
    """Resolves bound names and evaluates them on a loaded operand"""

    @staticmethod
    def names() -> List[str]:
        return list(CATALOGUE)

    @staticmethod
    def listing() -> List[Dict]:
        return [entry.to_dict() for entry in CATALOGUE.values()]

    @staticmethod
    def resolve(names: str, operand: Operand) -> List[CatalogueEntry]:
        """
        Parse a comma-separated name list, or 'all'
        'all' picks every bound applicable to the operand
        """
        if names.strip() == "all":
            return BoundCatalogue.applicable(operand)

        entries = []
        for name in (part.strip() for part in names.split(",")):
            if not name:
                continue
            if name not in CATALOGUE:
                raise UnknownBoundError(name)
            entries.append(CATALOGUE[name])
        if not entries:
            raise UsageError("no bound names given")
        return entries

    @staticmethod
    def applicable(operand: Operand) -> List[CatalogueEntry]:
        if not isinstance(operand, BlockOperatorMatrix):
            return [e for e in CATALOGUE.values() if e.family == SINGLE]

        entries = [e for e in CATALOGUE.values() if e.family == BLOCK]
        if operand.n == 2:
            zero_diagonal = not (np.any(operand.block(0, 0)) or np.any(operand.block(1, 1)))
            entries += [
                e for e in CATALOGUE.values()
                if e.family == TWO_BLOCK and (zero_diagonal or e.name == TwoBlockVariant.P22.value)
            ]
        return entries

    @staticmethod
    def evaluate(entry: CatalogueEntry, operand: Operand, t: Optional[float] = None,
                 min_t: bool = False) -> BoundResult:
        """
        Evaluate one entry; with min_t a t-family switches to its min-over-t variant,
        otherwise t-families fall back to t = 1/2 when no t is given
        (logged as a warning when min_t was asked for)
        """
        if min_t and entry.min_variant:
            entry = CATALOGUE[entry.min_variant]
        if entry.takes_t and t is None:
            if min_t:
                logger.warning("bound %s has no min-over-t variant; evaluated at t = %g", entry.name, DEFAULT_T)
            else:
                logger.info("bound %s evaluated at default t = %g", entry.name, DEFAULT_T)
            t = DEFAULT_T
        return entry.evaluate(operand, t)

    @staticmethod
    def evaluate_all(names: str, operand: Operand, t: Optional[float] = None,
                     min_t: bool = False) -> List[BoundResult]:
        if t is not None and min_t:
            raise UsageError("--t and --min-t are mutually exclusive")

        # with --min-t, rem2_i and rem12_i name the same bound
        entries: Dict[str, CatalogueEntry] = {}
        for entry in BoundCatalogue.resolve(names, operand):
            if min_t and entry.min_variant:
                entry = CATALOGUE[entry.min_variant]
            entries.setdefault(entry.name, entry)
        return [BoundCatalogue.evaluate(e, operand, t, min_t) for e in entries.values()]
