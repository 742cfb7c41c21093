"""
Report Generator - bound tables for one matrix, as JSON or a markdown table
"""
from typing import Any, Dict, List, Literal
import logging

from pydantic import BaseModel

from analyzers.results import BoundResult
from linalg.enclosure import Enclosure

logger = logging.getLogger(__name__)

ReportFormat = Literal["json", "md"]


class ReportRow(BaseModel):
    label: str
    id: str
    params: Dict[str, Any]
    value: float
    gap: float


class Report(BaseModel):
    input: str
    true_w: Dict[str, Any]
    tolerance: float
    rows: List[ReportRow]


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    return value


class ReportGenerator:
    """Builds and renders bound reports"""

    @staticmethod
    def build(input_name: str, true_w: Enclosure, results: List[BoundResult], tolerance: float) -> Report:
        """
        One row per bound, sorted by value ascending
        gap = bound value − true_w.hi; a gap below −2·tolerance means an unsound bound
        """
        rows = []
        for result in results:
            params = dict(result.params)
            if result.entry_argmins:
                params["entry_argmins"] = result.entry_argmins
            gap = result.value.hi - true_w.hi
            if gap < -2.0 * tolerance:
                logger.warning("bound %s lies %.3e below the true numerical radius", result.label, -gap)
            rows.append(ReportRow(
                label=result.label,
                id=result.id,
                params=_plain(params),
                value=result.value.hi,
                gap=gap,
            ))

        rows.sort(key=lambda row: (row.value, row.label))
        return Report(input=input_name, true_w=true_w.to_dict(), tolerance=tolerance, rows=rows)

    @staticmethod
    def to_json(report: Report) -> str:
        return report.model_dump_json(indent=2)

    @staticmethod
    def to_markdown(report: Report) -> str:
        lines = [
            f"## Numerical radius bounds: {report.input}",
            "",
            f"w(A) ∈ [{report.true_w['lo']:.10g}, {report.true_w['hi']:.10g}] ({report.true_w['kind']})",
            "",
            "| Bound | Value | Gap |",
            "|---|---|---|",
        ]
        for row in report.rows:
            lines.append(f"| {row.label} | {row.value:.10g} | {row.gap:.3e} |")
        return "\n".join(lines) + "\n"

    @staticmethod
    def render(report: Report, fmt: ReportFormat = "json") -> str:
        if fmt == "md":
            return ReportGenerator.to_markdown(report)
        return ReportGenerator.to_json(report)
