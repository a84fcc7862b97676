"""Drivers that compare closed formulas and bijections against the enumeration oracle.

Each claim runs over one or more instances and yields a single ``Report``;
sweeps fold their per-instance reports into one whose evidence rows are the
instance summaries.  Appendix reproduction renders the golden and the
recomputed tables through the same renderer and compares the text.
"""

from __future__ import annotations

import difflib
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterator

from .bijections import (
    phi1_general,
    phi1_rect,
    phi2_general,
    phi2_rect,
    rewind,
    verify_hook_lemma,
    verify_tail_conjecture,
)
from .enumeration import (
    DEFAULT_BUDGET,
    enumerate_inverted,
    inversion_distribution,
    inverted_with_inversions,
    standard_tableaux,
)
from .errors import Error
from .formulas import m_minus_1_count, m_minus_2_count, two_row_distribution
from .models import (
    AppendixTable,
    InversionDistribution,
    Partition,
    Report,
    StairStepMove,
    Status,
    Tableau,
)
from .output import Format, render_appendix
from .partition import (
    partitions_up_to,
    rectangle,
    stair_step_shape,
    stair_step_shapes,
    standard_count_hook,
    total_inverted_count,
    triangular,
)
from .result import Result
from .schema import load_appendix
from .tableau import format_tableau, inversion_count, max_inversion_tableau

CLAIMS: tuple[str, ...] = (
    "hook",
    "totals",
    "two-row",
    "max-unique",
    "rect-i1",
    "general-i1",
    "m1",
    "m2",
    "lemma",
    "tail",
)


@dataclass(frozen=True, slots=True)
class ClaimRequest:
    claim: str
    shape: Partition | None = None
    max_n: int | None = None
    m: int | None = None
    n: int | None = None
    i: int | None = None


def _usage(request: ClaimRequest, message: str) -> Error:
    return Error(code="usage", message=message, subject=request.claim)


def _status(ok: bool) -> Status:
    return "pass" if ok else "fail"


def _distribution(
    p: Partition, workers: int, budget: int
) -> Result[InversionDistribution, Error]:
    return inversion_distribution(p, workers, budget)


def _zero_counts(dist: InversionDistribution) -> list[int]:
    return [i for i, c in enumerate(dist.counts) if c == 0]


def check_hook(p: Partition, workers: int, budget: int) -> Result[Report, Error]:
    dist: Result[InversionDistribution, Error] = _distribution(p, workers, budget)
    if dist.value is None:
        assert dist.error is not None
        return Result.failure(dist.error)
    enumerated: int = dist.value.counts[0]
    hook: int = standard_count_hook(p)
    return Result.success(
        Report(
            claim="hook",
            params={"shape": list(p.parts)},
            status=_status(enumerated == hook),
            evidence=(
                {"enumerated": enumerated, "hook": hook, "zero_counts": _zero_counts(dist.value)},
            ),
        )
    )


def check_totals(p: Partition, workers: int, budget: int) -> Result[Report, Error]:
    dist: Result[InversionDistribution, Error] = _distribution(p, workers, budget)
    if dist.value is None:
        assert dist.error is not None
        return Result.failure(dist.error)
    formula: int = total_inverted_count(p)
    return Result.success(
        Report(
            claim="totals",
            params={"shape": list(p.parts)},
            status=_status(dist.value.total == formula),
            evidence=(
                {
                    "enumerated": dist.value.total,
                    "formula": formula,
                    "zero_counts": _zero_counts(dist.value),
                },
            ),
        )
    )


def check_max_unique(p: Partition, budget: int) -> Result[Report, Error]:
    every: Result[Iterator[Tableau], Error] = enumerate_inverted(p, budget)
    if every.value is None:
        assert every.error is not None
        return Result.failure(every.error)
    maximizer: Tableau = max_inversion_tableau(p)
    top: int = inversion_count(maximizer)
    attained: list[Tableau] = [t for t in every.value if inversion_count(t) == top]
    return Result.success(
        Report(
            claim="max-unique",
            params={"shape": list(p.parts)},
            status=_status(attained == [maximizer]),
            evidence=(
                {
                    "max_inversions": top,
                    "attained": len(attained),
                    "tableau": format_tableau(maximizer),
                },
            ),
        )
    )


def check_two_row(n: int, workers: int, budget: int) -> Result[Report, Error]:
    if n < 1:
        return Result.failure(Error(code="domain", message="needs n >= 1", subject=f"n={n}"))
    dist: Result[InversionDistribution, Error] = _distribution(Partition((n, n)), workers, budget)
    if dist.value is None:
        assert dist.error is not None
        return Result.failure(dist.error)
    formula: tuple[int, ...] = two_row_distribution(n)
    return Result.success(
        Report(
            claim="two-row",
            params={"n": n},
            status=_status(formula == dist.value.counts),
            evidence=tuple(
                {"i": i, "formula": f, "enumerated": e, "match": f == e}
                for i, (f, e) in enumerate(zip(formula, dist.value.counts, strict=True))
            ),
        )
    )


def check_rect_i1(p: Partition, budget: int) -> Result[Report, Error]:
    """Count and bijection check of 1-inverted rectangles against their stair-step SYT."""
    if not p.is_rectangular or p.length < 2:
        return Result.failure(
            Error(code="wrong-shape", message="needs a rectangle with m >= 2", subject=str(p))
        )
    m, n = p.length, p.parts[0]
    stair: Partition = stair_step_shape(m, n)
    ones: Result[tuple[Tableau, ...], Error] = inverted_with_inversions(p, 1, budget)
    if ones.value is None:
        assert ones.error is not None
        return Result.failure(ones.error)
    failures: list[str] = []
    images: set[Tableau] = set()
    for t in ones.value:
        image, trace = phi1_rect(t).unwrap()
        images.add(image)
        back: Tableau = phi2_rect(image).unwrap()[0]
        if back != t or rewind(image, trace) != t:
            failures.append(format_tableau(t))
    standard: tuple[Tableau, ...] = tuple(standard_tableaux(stair))
    for s in standard:
        if phi1_rect(phi2_rect(s).unwrap()[0]).unwrap()[0] != s:
            failures.append(format_tableau(s))
    hook: int = standard_count_hook(stair)
    ok: bool = len(ones.value) == hook == len(images) == len(standard) and not failures
    return Result.success(
        Report(
            claim="rect-i1",
            params={"shape": list(p.parts), "stair_step": list(stair.parts)},
            status=_status(ok),
            evidence=(
                {
                    "enumerated": len(ones.value),
                    "hook": hook,
                    "distinct_images": len(images),
                    "round_trip_failures": failures,
                },
            ),
        )
    )


def check_general_i1(p: Partition, budget: int) -> Result[Report, Error]:
    ones: Result[tuple[Tableau, ...], Error] = inverted_with_inversions(p, 1, budget)
    if ones.value is None:
        assert ones.error is not None
        return Result.failure(ones.error)
    mapped: Counter[StairStepMove] = Counter()
    images: set[Tableau] = set()
    failures: list[str] = []
    for t in ones.value:
        move, image, _ = phi1_general(t).unwrap()
        mapped[move] += 1
        images.add(image)
        if phi2_general(move, image, p).unwrap()[0] != t:
            failures.append(format_tableau(t))
    rows: list[dict[str, object]] = []
    hook_total: int = 0
    for move, shape in stair_step_shapes(p):
        hook: int = standard_count_hook(shape)
        hook_total += hook
        rows.append(
            {
                "source_row": move.source_row,
                "target_row": move.target_row,
                "stair_step": list(shape.parts),
                "hook": hook,
                "mapped": mapped.get(move, 0),
            }
        )
    ok: bool = (
        len(ones.value) == hook_total == len(images)
        and all(row["hook"] == row["mapped"] for row in rows)
        and not failures
    )
    if failures:
        rows.append({"round_trip_failures": failures})
    return Result.success(
        Report(
            claim="general-i1",
            params={"shape": list(p.parts), "enumerated": len(ones.value), "hook_total": hook_total},
            status=_status(ok),
            evidence=tuple(rows),
        )
    )


def _rectangle_tail(
    claim: str,
    m: int,
    n: int,
    offset: int,
    formula: Result[int, Error],
    workers: int,
    budget: int,
) -> Result[Report, Error]:
    if formula.value is None:
        assert formula.error is not None
        return Result.failure(formula.error)
    dist: Result[InversionDistribution, Error] = _distribution(rectangle(m, n), workers, budget)
    if dist.value is None:
        assert dist.error is not None
        return Result.failure(dist.error)
    enumerated: int = dist.value.counts[dist.value.max_inversions - offset]
    return Result.success(
        Report(
            claim=claim,
            params={"m": m, "n": n},
            status=_status(enumerated == formula.value),
            evidence=(
                {
                    "i": dist.value.max_inversions - offset,
                    "formula": formula.value,
                    "enumerated": enumerated,
                },
            ),
        )
    )


def check_m1(m: int, n: int, workers: int, budget: int) -> Result[Report, Error]:
    return _rectangle_tail("m1", m, n, 1, m_minus_1_count(m, n), workers, budget)


def check_m2(m: int, n: int, workers: int, budget: int) -> Result[Report, Error]:
    return _rectangle_tail("m2", m, n, 2, m_minus_2_count(m, n), workers, budget)


def _combine(claim: str, params: dict[str, object], reports: list[Report]) -> Report:
    if len(reports) == 1:
        return reports[0]
    statuses: set[Status] = {r.status for r in reports}
    status: Status = "pass"
    if "fail" in statuses:
        status = "fail"
    elif "out-of-hypothesis" in statuses:
        status = "out-of-hypothesis"
    return Report(
        claim=claim,
        params={**params, "instances": len(reports)},
        status=status,
        evidence=tuple(
            {"params": r.params, "status": r.status, "evidence": list(r.evidence)} for r in reports
        ),
    )


def _shapes(request: ClaimRequest) -> Result[tuple[Partition, ...], Error]:
    if request.shape is not None:
        return Result.success((request.shape,))
    if request.max_n is not None:
        return Result.success(tuple(partitions_up_to(request.max_n)))
    return Result.failure(_usage(request, "needs --shape or --max-n"))


def _sweep(
    request: ClaimRequest,
    instances: tuple[Partition, ...] | tuple[int, ...] | tuple[tuple[int, int], ...],
    check: Callable[..., Result[Report, Error]],
) -> Result[Report, Error]:
    if not instances:
        return Result.failure(_usage(request, "the requested range selects no instances"))
    reports: list[Report] = []
    for instance in instances:
        outcome: Result[Report, Error] = check(instance)
        if outcome.value is None:
            assert outcome.error is not None
            return Result.failure(outcome.error)
        reports.append(outcome.value)
    params: dict[str, object] = {"max_n": request.max_n} if request.max_n is not None else {}
    return Result.success(_combine(request.claim, params, reports))


def run_claim(
    request: ClaimRequest, workers: int = 1, budget: int = DEFAULT_BUDGET
) -> Result[Report, Error]:
    """Run one named claim; ``usage`` and ``domain`` errors mean the request itself is bad."""
    claim: str = request.claim
    if claim not in CLAIMS:
        return Result.failure(_usage(request, f"unknown claim; expected one of {', '.join(CLAIMS)}"))

    if claim in ("hook", "totals", "max-unique", "rect-i1", "general-i1"):
        shapes: Result[tuple[Partition, ...], Error] = _shapes(request)
        if shapes.value is None:
            assert shapes.error is not None
            return Result.failure(shapes.error)
        chosen: tuple[Partition, ...] = shapes.value
        if claim == "rect-i1" and request.shape is None:
            chosen = tuple(p for p in chosen if p.is_rectangular and p.length >= 2)
        checks: dict[str, Callable[[Partition], Result[Report, Error]]] = {
            "hook": lambda p: check_hook(p, workers, budget),
            "totals": lambda p: check_totals(p, workers, budget),
            "max-unique": lambda p: check_max_unique(p, budget),
            "rect-i1": lambda p: check_rect_i1(p, budget),
            "general-i1": lambda p: check_general_i1(p, budget),
        }
        return _sweep(request, chosen, checks[claim])

    if claim == "two-row":
        if request.n is not None:
            return check_two_row(request.n, workers, budget)
        if request.max_n is not None:
            return _sweep(
                request,
                tuple(range(1, request.max_n + 1)),
                lambda n: check_two_row(n, workers, budget),
            )
        return Result.failure(_usage(request, "needs --n or --max-n"))

    if claim == "lemma":
        if request.m is None and request.max_n is None:
            return Result.failure(_usage(request, "needs --m or --max-n"))
        if request.m is not None and request.m < 2:
            return Result.failure(
                Error(code="domain", message="needs m >= 2", subject=f"m={request.m}")
            )
        ms: tuple[int, ...] = (
            (request.m,) if request.m is not None else tuple(range(2, (request.max_n or 1) + 1))
        )
        pairs: tuple[tuple[int, int], ...] = tuple(
            (m, i)
            for m in ms
            for i in (
                (request.i,)
                if request.i is not None
                else range(triangular(m - 2) + 1, triangular(m - 1) + 1)
            )
        )
        return _sweep(request, pairs, lambda mi: verify_hook_lemma(mi[0], mi[1], budget))

    if request.m is None or request.n is None:
        return Result.failure(_usage(request, "needs --m and --n"))
    if claim == "m1":
        return check_m1(request.m, request.n, workers, budget)
    if claim == "m2":
        return check_m2(request.m, request.n, workers, budget)
    return verify_tail_conjecture(request.m, request.n, workers, budget)


@dataclass(frozen=True, slots=True)
class AppendixOutcome:
    rendered: str
    diff: str

    @property
    def matched(self) -> bool:
        return not self.diff


def golden_tables() -> tuple[AppendixTable, ...]:
    return tuple(
        AppendixTable(
            m=int(entry["m"]),
            n=int(entry["n"]),
            rectangle=tuple(int(c) for c in entry["rectangle"]),
            stair_step=tuple(int(c) for c in entry["stair_step"]),
        )
        for entry in load_appendix()["tables"]
    )


def compute_table(m: int, n: int, workers: int, budget: int) -> Result[AppendixTable, Error]:
    rect: Result[InversionDistribution, Error] = _distribution(rectangle(m, n), workers, budget)
    if rect.value is None:
        assert rect.error is not None
        return Result.failure(rect.error)
    stair: Result[InversionDistribution, Error] = _distribution(
        stair_step_shape(m, n), workers, budget
    )
    if stair.value is None:
        assert stair.error is not None
        return Result.failure(stair.error)
    return Result.success(
        AppendixTable(m=m, n=n, rectangle=rect.value.counts, stair_step=stair.value.counts)
    )


def _render(table: AppendixTable, fmt: Format) -> str:
    return render_appendix((table,), fmt).unwrap()


def reproduce_appendix(
    fmt: Format,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
    only: int | None = None,
) -> Result[AppendixOutcome, Error]:
    """Recompute the golden tables (or the one whose rectangle width is ``only``) and diff them."""
    goldens: tuple[AppendixTable, ...] = tuple(
        g for g in golden_tables() if only is None or g.n == only
    )
    if not goldens:
        return Result.failure(
            Error(code="usage", message="no golden table with that width", subject=str(only))
        )
    computed_tables: list[AppendixTable] = []
    diffs: list[str] = []
    for golden in goldens:
        computed: Result[AppendixTable, Error] = compute_table(golden.m, golden.n, workers, budget)
        if computed.value is None:
            assert computed.error is not None
            return Result.failure(computed.error)
        expected_text: str = _render(golden, fmt)
        actual_text: str = _render(computed.value, fmt)
        computed_tables.append(computed.value)
        if expected_text != actual_text:
            diffs.append(
                "\n".join(
                    difflib.unified_diff(
                        expected_text.splitlines(),
                        actual_text.splitlines(),
                        fromfile=f"golden {rectangle(golden.m, golden.n)}",
                        tofile=f"computed {rectangle(golden.m, golden.n)}",
                        lineterm="",
                    )
                )
            )
    rendered: str = render_appendix(computed_tables, fmt).unwrap()
    return Result.success(AppendixOutcome(rendered=rendered, diff="\n".join(diffs)))
