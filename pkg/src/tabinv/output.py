"""Text, JSON and CSV renderings of distributions, reports and appendix tables.

Every JSON document goes through the schema before it is rendered, and all
JSON is dumped with sorted keys so output is byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Literal, Mapping, Sequence

import jsonschema

from .errors import Error
from .formulas import tail_end_threshold
from .models import AppendixTable, InversionDistribution, Partition, Report
from .partition import rectangle, stair_step_shape
from .result import Result
from .schema import load_schema

Format = Literal["text", "json", "csv"]
FORMATS: tuple[Format, ...] = ("text", "json", "csv")


@dataclass(frozen=True, slots=True)
class AppendixRow:
    i: int
    rectangle: int
    stair_step: int | None
    stair_step_i: int | None

    @property
    def agree(self) -> bool:
        return self.stair_step == self.rectangle


def validate_document(doc: Mapping[str, object], subject: str) -> Result[str, Error]:
    """Validate ``doc`` against the bundled schema and return its canonical JSON."""
    text: str = json.dumps(doc, sort_keys=True)
    try:
        jsonschema.validate(json.loads(text), load_schema())
    except jsonschema.ValidationError as exc:
        return Result.failure(Error(code="schema", message=exc.message, subject=subject))
    return Result.success(text)


def _label(shape: Partition) -> str:
    return f"({shape})"


def distribution_document(dist: InversionDistribution) -> dict[str, object]:
    return {
        "shape": list(dist.shape.parts),
        "max_inversions": dist.max_inversions,
        "counts": list(dist.counts),
        "total": dist.total,
    }


def render_distribution(dist: InversionDistribution, fmt: Format) -> Result[str, Error]:
    if fmt == "json":
        return validate_document(distribution_document(dist), str(dist.shape))
    if fmt == "csv":
        lines: list[str] = ["i,count", *(f"{i},{c}" for i, c in enumerate(dist.counts))]
        return Result.success("\n".join(lines))
    width: int = max(len(str(dist.total)), len(_label(dist.shape)))
    label_width: int = max(len("TOTAL"), len(f"m={dist.max_inversions}"))
    rows: list[str] = [f"{'':<{label_width}}  {_label(dist.shape):>{width}}"]
    rows += [f"{f'm={i}':<{label_width}}  {c:>{width}}" for i, c in enumerate(dist.counts)]
    rows.append(f"{'TOTAL':<{label_width}}  {dist.total:>{width}}")
    return Result.success("\n".join(rows))


def render_betti(shape: Partition, betti: tuple[int, ...], fmt: Format) -> Result[str, Error]:
    if fmt == "json":
        return validate_document({"shape": list(shape.parts), "betti": list(betti)}, str(shape))
    if fmt == "csv":
        return Result.success("\n".join(["m,betti", *(f"{m},{b}" for m, b in enumerate(betti))]))
    return Result.success("\n".join(f"b_{m}={b}" for m, b in enumerate(betti)))


def render_report(report: Report) -> Result[str, Error]:
    doc: dict[str, object] = {
        "claim": report.claim,
        "params": report.params,
        "status": report.status,
        "evidence": list(report.evidence),
    }
    return validate_document(doc, report.claim)


def appendix_rows(table: AppendixTable) -> tuple[AppendixRow, ...]:
    """Line the stair-step column up against the rectangle column.

    Stair-step entry j sits on row j+m-1 inside the tail (past the threshold)
    and on row j+1 before it.
    """
    threshold: int = tail_end_threshold(table.m, table.n)
    placed: dict[int, int] = {}
    for j in range(len(table.stair_step)):
        row: int = j + table.m - 1 if j + table.m - 1 > threshold else j + 1
        assert row not in placed
        placed[row] = j
    return tuple(
        AppendixRow(
            i=i,
            rectangle=count,
            stair_step=None if i not in placed else table.stair_step[placed[i]],
            stair_step_i=placed.get(i),
        )
        for i, count in enumerate(table.rectangle)
    )


def appendix_table_document(table: AppendixTable) -> dict[str, object]:
    return {
        "rectangle": list(rectangle(table.m, table.n).parts),
        "stair_step": list(stair_step_shape(table.m, table.n).parts),
        "rows": [
            {
                "i": r.i,
                "rectangle": r.rectangle,
                "stair_step": r.stair_step,
                "stair_step_i": r.stair_step_i,
                "agree": r.agree,
            }
            for r in appendix_rows(table)
        ],
        "totals": [sum(table.rectangle), sum(table.stair_step)],
    }


def _appendix_csv_rows(table: AppendixTable) -> list[str]:
    return [
        f"{table.m},{table.n},{r.i},{r.rectangle},"
        f"{'' if r.stair_step is None else r.stair_step},"
        f"{'' if r.stair_step_i is None else r.stair_step_i},"
        f"{'true' if r.agree else 'false'}"
        for r in appendix_rows(table)
    ]


def _appendix_text(table: AppendixTable) -> str:
    rect_shape: Partition = rectangle(table.m, table.n)
    stair_shape: Partition = stair_step_shape(table.m, table.n)
    rect_total: int = sum(table.rectangle)
    width: int = max(len(str(rect_total)), len(_label(rect_shape)), len(_label(stair_shape)))
    label_width: int = max(len("TOTAL"), len(f"m={len(table.rectangle) - 1}"))
    text: list[str] = [
        f"{'':<{label_width}}  {_label(rect_shape):>{width}}  {_label(stair_shape):>{width}}"
    ]
    for r in appendix_rows(table):
        right: str = "" if r.stair_step is None else str(r.stair_step)
        right_label: str = "" if r.stair_step_i is None else f"m={r.stair_step_i}"
        mark: str = " *" if r.agree else ""
        text.append(
            f"{f'm={r.i}':<{label_width}}  {r.rectangle:>{width}}  {right:>{width}}"
            f"  {right_label:<{label_width}}{mark}"
        )
    text.append(f"{'TOTAL':<{label_width}}  {rect_total:>{width}}  {sum(table.stair_step):>{width}}")
    return "\n".join(line.rstrip() for line in text)


def render_appendix(tables: Sequence[AppendixTable], fmt: Format) -> Result[str, Error]:
    """One document for all ``tables``: a JSON object, a single CSV, or text blocks."""
    if fmt == "json":
        return validate_document(
            {"tables": [appendix_table_document(t) for t in tables]}, "appendix"
        )
    if fmt == "csv":
        lines: list[str] = ["m,n,i,rectangle,stair_step,stair_step_i,agree"]
        for t in tables:
            lines += _appendix_csv_rows(t)
        return Result.success("\n".join(lines))
    return Result.success("\n\n".join(_appendix_text(t) for t in tables))
