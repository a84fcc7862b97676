"""Shape-level arithmetic on partitions.

Rows and columns are 1-based in everything this module documents; the
sequences it returns are plain tuples whose first element is row/column 1.
"""

from __future__ import annotations

import math
import re
from typing import Iterator

from .errors import Error
from .models import UNBOUNDED, Gap, Partition, StairStepMove
from .result import Result

_PARTITION_TEXT: re.Pattern[str] = re.compile(r"^\(?\s*\d+(\s*,\s*\d+)*\s*\)?$")


def parse_partition(text: str) -> Result[Partition, Error]:
    """Parse ``"4,3,2,2"`` (parentheses and spaces tolerated)."""
    stripped: str = text.strip()
    if not _PARTITION_TEXT.match(stripped):
        return Result.failure(
            Error(code="parse", message="expected comma-separated parts", subject=text)
        )
    parts: tuple[int, ...] = tuple(int(p) for p in re.findall(r"\d+", stripped))
    try:
        return Result.success(Partition(parts))
    except ValueError as exc:
        return Result.failure(Error(code="parse", message=str(exc), subject=text))


def column_heights(p: Partition) -> tuple[int, ...]:
    return tuple(
        sum(1 for part in p.parts if part >= j) for j in range(1, p.parts[0] + 1)
    )


def triangular(k: int) -> int:
    if k < 0:
        raise ValueError(f"triangular numbers need k >= 0, got {k}")
    return k * (k + 1) // 2


def max_inversions(p: Partition) -> int:
    return sum(math.comb(h, 2) for h in column_heights(p))


def hook_lengths(p: Partition) -> tuple[tuple[int, ...], ...]:
    heights: tuple[int, ...] = column_heights(p)
    return tuple(
        tuple(
            (part - j) + (heights[j - 1] - i) + 1 for j in range(1, part + 1)
        )
        for i, part in enumerate(p.parts, start=1)
    )


def standard_count_hook(p: Partition) -> int:
    """Number of standard Young tableaux of shape ``p`` (hook-length formula)."""
    denominator: int = math.prod(h for row in hook_lengths(p) for h in row)
    numerator: int = math.factorial(p.size)
    assert numerator % denominator == 0, f"hook product does not divide {p.size}!"
    return numerator // denominator


def total_inverted_count(p: Partition) -> int:
    """Row-standard fillings: ordered set partitions of 1..N into rows of sizes p."""
    total: int = 1
    running: int = 0
    for part in p.parts:
        running += part
        total *= math.comb(running, part)
    return total


def row_gaps(p: Partition) -> tuple[tuple[int, ...], tuple[Gap, ...]]:
    """Return ``(d, d_tilde)``: d_i = λ_i − λ_{i+1} (d_m = λ_m), d̃_i = λ_{i−1} − λ_i."""
    padded: tuple[int, ...] = (*p.parts, 0)
    d: tuple[int, ...] = tuple(padded[i] - padded[i + 1] for i in range(p.length))
    d_tilde: tuple[Gap, ...] = (
        UNBOUNDED,
        *(p.parts[i - 1] - p.parts[i] for i in range(1, p.length)),
    )
    return d, d_tilde


def _positive(gap: Gap) -> bool:
    return gap is UNBOUNDED or (isinstance(gap, int) and gap > 0)


def stair_step_shapes(p: Partition) -> tuple[tuple[StairStepMove, Partition], ...]:
    """All one-box moves from a lower corner below row 1 to a higher addable cell.

    Ordered lexicographically on (target_row, source_row).
    """
    d, d_tilde = row_gaps(p)
    moves: list[tuple[StairStepMove, Partition]] = []
    for target in range(1, p.length + 1):
        if not _positive(d_tilde[target - 1]):
            continue
        for source in range(target + 1, p.length + 1):
            if d[source - 1] > 0:
                move: StairStepMove = StairStepMove(source_row=source, target_row=target)
                moves.append((move, move.apply(p)))
    return tuple(moves)


def stair_step_shape(m: int, n: int) -> Partition:
    """The rectangular stair-step (n+1, n, …, n, n−1) with m rows."""
    if m < 2 or n < 1:
        raise ValueError(f"stair-step shapes need m >= 2 and n >= 1, got {m}x{n}")
    return StairStepMove(source_row=m, target_row=1).apply(Partition((n,) * m))


def rectangle(m: int, n: int) -> Partition:
    return Partition((n,) * m)


def partitions_of(n: int) -> Iterator[Partition]:
    """Every partition of ``n``, reverse-lexicographic: (n) first, (1,…,1) last."""
    if n < 1:
        raise ValueError(f"partitions_of needs n >= 1, got {n}")

    def _descend(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in _descend(remaining - first, first):
                yield (first, *rest)

    return (Partition(parts) for parts in _descend(n, n))


def partitions_up_to(n: int) -> Iterator[Partition]:
    for size in range(1, n + 1):
        yield from partitions_of(size)
