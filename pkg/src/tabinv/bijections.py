"""Maps between 1-inverted tableaux of a shape and standard tableaux of its stair-step shapes.

The forward map starts from the standardization of a 1-inverted tableau,
lifts the larger entry of the inversion out of its box and runs two
independent processes: a bump chain that carries an ever larger value one
column to the right until it lands in a new box, and a hole that slides
right/down (taking the smaller neighbour) until it rests at a corner.  The
bump chain only visits rows above the inversion and the hole only rows below
it, so the two never meet.  The reverse map undoes both processes column by
column, moving right to left.
"""

from __future__ import annotations

from collections.abc import Iterable

from .enumeration import DEFAULT_BUDGET, inversion_distribution, inverted_with_inversions
from .errors import Error
from .formulas import tail_end_threshold
from .models import (
    BumpStep,
    BumpTrace,
    Cell,
    InversionDistribution,
    InversionPair,
    Partition,
    Report,
    Slide,
    StairStepMove,
    Status,
    Tableau,
)
from .partition import rectangle, stair_step_shape, stair_step_shapes, triangular
from .result import Result
from .tableau import (
    column_swap_decomposition,
    format_tableau,
    inversion_count,
    inversions,
    is_row_standard,
    is_standard,
)

Grid = dict[Cell, int]


def _grid(t: Tableau) -> Grid:
    return {(r, c): v for r, row in enumerate(t.rows, start=1) for c, v in enumerate(row, start=1)}


def _tableau(grid: Grid) -> Tableau:
    rows: int = max(r for r, _ in grid)
    return Tableau(
        tuple(
            tuple(grid[(r, c)] for c in range(1, 1 + sum(1 for rr, _ in grid if rr == r)))
            for r in range(1, rows + 1)
        )
    )


def _column(grid: Grid, column: int) -> list[tuple[Cell, int]]:
    return sorted(((cell, v) for cell, v in grid.items() if cell[1] == column), key=lambda e: e[0])


def _flip_rows(grid: Grid, upper: int, through_column: int) -> None:
    for c in range(1, through_column + 1):
        grid[(upper, c)], grid[(upper + 1, c)] = grid[(upper + 1, c)], grid[(upper, c)]


def _wrong_count(t: Tableau, found: int) -> Error:
    return Error(
        code="wrong-inversion-count",
        message=f"expected exactly one inversion, found {found}",
        subject=format_tableau(t),
    )


def phi1_general(t: Tableau) -> Result[tuple[StairStepMove, Tableau, BumpTrace], Error]:
    """Send a 1-inverted tableau of shape λ to a standard tableau of a stair-step shape of λ."""
    if not is_row_standard(t):
        return Result.failure(
            Error(
                code="input-not-standard",
                message="rows must increase left to right",
                subject=format_tableau(t),
            )
        )
    found: int = inversion_count(t)
    if found != 1:
        return Result.failure(_wrong_count(t, found))
    pair, r = column_swap_decomposition(t)
    k: int = pair.column
    grid: Grid = _grid(t)
    _flip_rows(grid, r, k)
    assert is_standard(_tableau(grid)), "flipping the inversion rows must standardize"

    hole: Cell = (r + 1, k)
    carry: int = grid.pop(hole)
    assert carry == pair.large
    bumps: list[BumpStep] = []
    slides: list[Slide] = []
    added: Cell | None = None
    resting: bool = False
    j: int = k
    while added is None or not resting:
        if added is None:
            larger: list[tuple[Cell, int]] = [e for e in _column(grid, j + 1) if e[1] > carry]
            if larger:
                cell, outgoing = larger[0]
                assert cell[0] <= r
                grid[cell] = carry
                bumps.append(BumpStep(cell=cell, incoming=carry, outgoing=outgoing))
                carry = outgoing
            else:
                cell = (len(_column(grid, j + 1)) + 1, j + 1)
                assert cell[0] <= r and (cell[0], j) in grid
                grid[cell] = carry
                bumps.append(BumpStep(cell=cell, incoming=carry, outgoing=None))
                added = cell
        while not resting and hole[1] == j:
            right: Cell = (hole[0], hole[1] + 1)
            below: Cell = (hole[0] + 1, hole[1])
            options: list[Cell] = [c for c in (right, below) if c in grid]
            if not options:
                resting = True
                break
            source: Cell = min(options, key=lambda c: grid[c])
            value: int = grid.pop(source)
            grid[hole] = value
            slides.append(Slide(value=value, source=source, target=hole))
            hole = source
        j += 1

    assert added is not None
    move: StairStepMove = StairStepMove(source_row=hole[0], target_row=added[0])
    image: Tableau = _tableau(grid)
    assert image.shape == move.apply(t.shape)
    trace: BumpTrace = BumpTrace(
        inversion=pair,
        flip_row=r,
        bumps=tuple(bumps),
        slides=tuple(slides),
        added=added,
        removed=hole,
    )
    return Result.success((move, image, trace))


def phi2_general(
    move: StairStepMove, t: Tableau, shape: Partition
) -> Result[tuple[Tableau, BumpTrace], Error]:
    """Inverse of :func:`phi1_general`: rebuild the 1-inverted tableau of ``shape``."""
    if move not in {mv for mv, _ in stair_step_shapes(shape)} or t.shape != move.apply(shape):
        return Result.failure(
            Error(
                code="shape-mismatch",
                message=f"tableau shape {t.shape} is not {shape} moved by "
                f"({move.source_row}->{move.target_row})",
                subject=format_tableau(t),
            )
        )
    if not is_standard(t):
        return Result.failure(
            Error(
                code="input-not-standard",
                message="the reverse map needs a standard Young tableau",
                subject=format_tableau(t),
            )
        )
    grid: Grid = _grid(t)
    added: Cell = (move.target_row, shape.parts[move.target_row - 1] + 1)
    removed: Cell = (move.source_row, shape.parts[move.source_row - 1])
    carry: int = grid.pop(added)
    hole: Cell = removed
    unbumps: list[BumpStep] = [BumpStep(cell=added, incoming=carry, outgoing=None)]
    unslides: list[Slide] = []
    j: int = added[1] - 1
    while True:
        filled: bool = False
        while hole[1] == j:
            above: Cell = (hole[0] - 1, hole[1])
            left: Cell = (hole[0], hole[1] - 1)
            candidates: list[tuple[int, Cell | None]] = [(carry, None)]
            candidates += [(grid[c], c) for c in (above, left) if c in grid]
            value, source = max(candidates, key=lambda e: e[0])
            if source is None:
                assert above in grid, "the carried value needs an entry above the hole"
                grid[hole] = carry
                filled = True
                break
            grid[hole] = grid.pop(source)
            unslides.append(Slide(value=value, source=hole, target=source))
            hole = source
        if filled:
            break
        smaller: list[tuple[Cell, int]] = [e for e in _column(grid, j) if e[1] < carry]
        assert smaller, f"no entry of column {j} lies below the carried {carry}"
        cell, incoming = smaller[-1]
        grid[cell] = carry
        unbumps.append(BumpStep(cell=cell, incoming=incoming, outgoing=carry))
        carry = incoming
        j -= 1

    flip_row: int = hole[0] - 1
    _flip_rows(grid, flip_row, j)
    preimage: Tableau = _tableau(grid)
    pair: InversionPair = InversionPair(
        column=j, small=grid[(flip_row + 1, j)], large=grid[(flip_row, j)]
    )
    assert inversions(preimage) == (pair,)
    trace: BumpTrace = BumpTrace(
        inversion=pair,
        flip_row=flip_row,
        bumps=tuple(reversed(unbumps)),
        slides=tuple(reversed(unslides)),
        added=added,
        removed=removed,
    )
    return Result.success((preimage, trace))


def phi1_rect(t: Tableau) -> Result[tuple[Tableau, BumpTrace], Error]:
    shape: Partition = t.shape
    if not shape.is_rectangular or shape.length < 2:
        return Result.failure(
            Error(
                code="wrong-shape",
                message="expected a rectangle with at least two rows",
                subject=str(shape),
            )
        )
    mapped: Result[tuple[StairStepMove, Tableau, BumpTrace], Error] = phi1_general(t)
    if mapped.value is None:
        assert mapped.error is not None
        return Result.failure(mapped.error)
    move, image, trace = mapped.value
    assert move == StairStepMove(source_row=shape.length, target_row=1)
    return Result.success((image, trace))


def _stair_step_dimensions(shape: Partition) -> tuple[int, int] | None:
    n: int = shape.parts[0] - 1
    if n < 1:
        return None
    m: int = shape.length + 1 if n == 1 else shape.length
    if m < 2 or stair_step_shape(m, n) != shape:
        return None
    return m, n


def phi2_rect(t: Tableau) -> Result[tuple[Tableau, BumpTrace], Error]:
    dims: tuple[int, int] | None = _stair_step_dimensions(t.shape)
    if dims is None:
        return Result.failure(
            Error(
                code="wrong-shape",
                message="expected a stair-step shape (n+1, n, ..., n, n-1)",
                subject=str(t.shape),
            )
        )
    m, n = dims
    return phi2_general(StairStepMove(source_row=m, target_row=1), t, rectangle(m, n))


def rewind(image: Tableau, trace: BumpTrace) -> Tableau:
    """Replay ``trace`` backwards from the forward map's output to its input."""
    grid: Grid = _grid(image)
    for step in reversed(trace.bumps):
        if step.outgoing is None:
            del grid[step.cell]
        else:
            grid[step.cell] = step.outgoing
    for slide in reversed(trace.slides):
        grid[slide.source] = grid.pop(slide.target)
    grid[(trace.flip_row + 1, trace.inversion.column)] = trace.bumps[0].incoming
    _flip_rows(grid, trace.flip_row, trace.inversion.column)
    return _tableau(grid)


def _column_shape(m: int) -> Partition:
    return Partition((1,) * m)


def _hook_shape(m: int) -> Partition:
    return Partition((2, *(1,) * (m - 2)))


def _classes(tableaux: Iterable[Tableau], cell: Cell) -> dict[int, list[Tableau]]:
    grouped: dict[int, list[Tableau]] = {}
    for t in tableaux:
        grouped.setdefault(t.entry(*cell), []).append(t)
    return grouped


def verify_hook_lemma(m: int, i: int, budget: int = DEFAULT_BUDGET) -> Result[Report, Error]:
    """Match i-inverted columns of height m with (i-m+1)-inverted hooks (2, 1^(m-2)).

    Column tableaux are grouped by their top entry and hooks by their
    second-column entry; within each group members are paired in enumeration
    order.  Below the lemma's threshold the comparison still runs and the
    report is marked out-of-hypothesis.
    """
    if m < 2:
        return Result.failure(Error(code="domain", message="needs m >= 2", subject=f"m={m}"))
    column_side: Result[tuple[Tableau, ...], Error] = inverted_with_inversions(
        _column_shape(m), i, budget
    )
    hook_side: Result[tuple[Tableau, ...], Error] = (
        inverted_with_inversions(_hook_shape(m), i - m + 1, budget)
        if i - m + 1 >= 0
        else Result.success(())
    )
    if column_side.value is None or hook_side.value is None:
        error: Error | None = column_side.error or hook_side.error
        assert error is not None
        return Result.failure(error)
    columns: dict[int, list[Tableau]] = _classes(column_side.value, (1, 1))
    hooks: dict[int, list[Tableau]] = _classes(hook_side.value, (1, 2))
    evidence: list[dict[str, object]] = []
    for k in sorted(set(columns) | set(hooks)):
        left: list[Tableau] = columns.get(k, [])
        right: list[Tableau] = hooks.get(k, [])
        evidence.append(
            {
                "k": k,
                "column": len(left),
                "hook": len(right),
                "match": len(left) == len(right),
                "pairs": [[format_tableau(a), format_tableau(b)] for a, b in zip(left, right)],
            }
        )
    agree: bool = len(column_side.value) == len(hook_side.value) and all(
        row["match"] for row in evidence
    )
    params: dict[str, object] = {
        "m": m,
        "i": i,
        "column_count": len(column_side.value),
        "hook_count": len(hook_side.value),
    }
    status: Status
    if i <= triangular(m - 2):
        status = "out-of-hypothesis"
        params["reason"] = "threshold-violation"
    else:
        status = "pass" if agree else "fail"
    return Result.success(
        Report(
            claim="lemma",
            params=params,
            status=status,
            evidence=tuple(evidence),
        )
    )


def tail_comparison(
    rect: InversionDistribution, stair: InversionDistribution, m: int, n: int
) -> Report:
    """Compare |S_i(rect)| with |S_{i-m+1}(stair)| for every i and locate where agreement starts."""
    threshold: int = tail_end_threshold(m, n)
    shifted: list[int | None] = [
        stair.counts[i - m + 1] if 0 <= i - m + 1 < len(stair.counts) else None
        for i in range(len(rect.counts))
    ]
    matches: list[bool] = [a == b for a, b in zip(rect.counts, shifted)]
    empirical_start: int = len(matches)
    while empirical_start > 0 and matches[empirical_start - 1]:
        empirical_start -= 1
    evidence: tuple[dict[str, object], ...] = tuple(
        {
            "i": i,
            "rectangle": count,
            "stair_step": shifted[i],
            "match": matches[i],
            "in_tail": i > threshold,
        }
        for i, count in enumerate(rect.counts)
    )
    agree: bool = all(ok for i, ok in enumerate(matches) if i > threshold)
    return Report(
        claim="tail",
        params={"m": m, "n": n, "threshold": threshold, "empirical_start": empirical_start},
        status="pass" if agree else "fail",
        evidence=tuple(evidence),
    )


def verify_tail_conjecture(
    m: int, n: int, workers: int = 1, budget: int = DEFAULT_BUDGET
) -> Result[Report, Error]:
    if m < 2 or n < 1:
        return Result.failure(
            Error(code="domain", message="needs m >= 2 and n >= 1", subject=f"{m}x{n}")
        )
    rect: Result[InversionDistribution, Error] = inversion_distribution(
        rectangle(m, n), workers, budget
    )
    stair: Result[InversionDistribution, Error] = inversion_distribution(
        stair_step_shape(m, n), workers, budget
    )
    if rect.value is None or stair.value is None:
        error: Error | None = rect.error or stair.error
        assert error is not None
        return Result.failure(error)
    return Result.success(tail_comparison(rect.value, stair.value, m, n))
