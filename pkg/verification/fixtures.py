"""
Regression fixtures: worked examples with known values, rerun by `reproduce`
"""
from dataclasses import dataclass
from typing import Callable, List, Optional
import logging
import math

from pydantic import BaseModel

from analyzers import block_bounds, operator_bounds
from analyzers.radius import numerical_radius, w_nonneg
from linalg.block_matrix import BlockOperatorMatrix
from matrix_storage import MatrixStorage, Operand

logger = logging.getLogger(__name__)

FIXTURE_TOL = 1e-6


@dataclass(frozen=True)
class WorkedExample:
    name: str
    matrix: str  # fixture file name
    description: str
    expected: float
    compute: Callable[[Operand], float]
    tol: float = FIXTURE_TOL


def _true_w(operand: Operand) -> float:
    matrix = operand.flatten() if isinstance(operand, BlockOperatorMatrix) else operand
    return numerical_radius(matrix, 1e-9).mid


WORKED_EXAMPLES: List[WorkedExample] = [
    WorkedExample(
        name="prop4_block_example",
        matrix="block_example",
        description="prop4 on zero-diagonal blocks A12 = A21 = [[0,1],[0,0]]",
        expected=1.0 / math.sqrt(2.0),
        compute=lambda A: block_bounds.evaluate_bound(A, "prop4").value.hi,
    ),
    WorkedExample(
        name="aok_block_example",
        matrix="block_example",
        description="aok on the same block matrix",
        expected=1.0,
        compute=lambda A: block_bounds.evaluate_bound(A, "aok").value.hi,
    ),
    WorkedExample(
        name="true_w_block_example",
        matrix="block_example",
        description="certified w of the same block matrix",
        expected=0.5,
        compute=_true_w,
    ),
    WorkedExample(
        name="prop1_min_shift23",
        matrix="shift23",
        description="prop1 minimized over t on [[0,2,0],[0,0,3],[0,0,0]]",
        expected=2.5,
        compute=lambda A: operator_bounds.single_operator_bound(A, "prop1_min").value.hi,
    ),
    WorkedExample(
        name="prop1_half_shift23",
        matrix="shift23",
        description="prop1 at t = 1/2 on the same matrix",
        expected=(3.0 + math.sqrt(6.0)) / 2.0,
        compute=lambda A: operator_bounds.single_operator_bound(A, "prop1", 0.5).value.hi,
    ),
    WorkedExample(
        name="true_w_shift23",
        matrix="shift23",
        description="certified w of the same matrix",
        expected=math.sqrt(13.0) / 2.0,
        compute=_true_w,
    ),
    WorkedExample(
        name="fastpath_w_shift23",
        matrix="shift23",
        description="½λ_max(A + Aᵀ) of the same entrywise-nonnegative matrix",
        expected=math.sqrt(13.0) / 2.0,
        compute=lambda A: w_nonneg(A).mid,
    ),
]


class ExampleOutcome(BaseModel):
    name: str
    description: str
    expected: float
    computed: float
    difference: float
    tol: float
    passed: bool


class ReproductionReport(BaseModel):
    outcomes: List[ExampleOutcome]

    @property
    def ok(self) -> bool:
        return all(o.passed for o in self.outcomes)


def reproduce(storage: Optional[MatrixStorage] = None) -> ReproductionReport:
    """Recompute every worked example from its fixture file"""
    storage = storage or MatrixStorage()
    outcomes = []
    for example in WORKED_EXAMPLES:
        computed = float(example.compute(storage.load(example.matrix)))
        difference = computed - example.expected
        passed = abs(difference) <= example.tol
        if not passed:
            logger.warning("%s: expected %.10g, computed %.10g", example.name, example.expected, computed)
        outcomes.append(ExampleOutcome(
            name=example.name,
            description=example.description,
            expected=example.expected,
            computed=computed,
            difference=difference,
            tol=example.tol,
            passed=passed,
        ))
    return ReproductionReport(outcomes=outcomes)
