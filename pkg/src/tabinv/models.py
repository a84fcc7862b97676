from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Literal


class Unbounded(Enum):
    """Marker for a row gap with no upper bound (the first row's d-tilde)."""

    UNBOUNDED = "inf"

    def __str__(self) -> str:
        return "∞"


UNBOUNDED: Unbounded = Unbounded.UNBOUNDED

Gap = int | Unbounded


@dataclass(frozen=True, slots=True)
class Partition:
    """A non-increasing sequence of positive parts; the shape of a tableau."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("a partition needs at least one part")
        if any(p < 1 for p in self.parts):
            raise ValueError(f"parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"parts must be non-increasing: {self.parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def is_rectangular(self) -> bool:
        return self.parts[0] == self.parts[-1]

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


@dataclass(frozen=True, slots=True)
class StairStepMove:
    """Moves the last box of ``source_row`` to the end of ``target_row`` (1-based)."""

    source_row: int
    target_row: int

    def epsilon(self, rows: int) -> tuple[int, ...]:
        return tuple(
            1 if i == self.target_row else -1 if i == self.source_row else 0
            for i in range(1, rows + 1)
        )

    def apply(self, shape: Partition) -> Partition:
        moved: list[int] = [
            part + eps for part, eps in zip(shape.parts, self.epsilon(shape.length))
        ]
        # a source row of length one empties and can only be the last row
        return Partition(tuple(p for p in moved if p > 0))


@dataclass(frozen=True, slots=True)
class Tableau:
    """A bijective filling of a Young diagram by 1..N, stored row by row."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows or any(len(row) == 0 for row in self.rows):
            raise ValueError("a tableau needs non-empty rows")
        if any(len(a) < len(b) for a, b in zip(self.rows, self.rows[1:])):
            raise ValueError("row lengths must be non-increasing")
        size: int = sum(len(row) for row in self.rows)
        if sorted(v for row in self.rows for v in row) != list(range(1, size + 1)):
            raise ValueError(f"entries must be exactly 1..{size}, each once")

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(row) for row in self.rows))

    @property
    def size(self) -> int:
        return sum(len(row) for row in self.rows)

    def entry(self, row: int, column: int) -> int:
        return self.rows[row - 1][column - 1]

    def column(self, column: int) -> tuple[int, ...]:
        return tuple(row[column - 1] for row in self.rows if len(row) >= column)

    def position(self, value: int) -> tuple[int, int]:
        for r, row in enumerate(self.rows, start=1):
            if value in row:
                return r, row.index(value) + 1
        raise KeyError(value)


@dataclass(frozen=True, slots=True, order=True)
class InversionPair:
    column: int
    small: int
    large: int


@dataclass(frozen=True, slots=True)
class InversionDistribution:
    shape: Partition
    counts: tuple[int, ...]

    @property
    def max_inversions(self) -> int:
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True, slots=True)
class Composition:
    parts: tuple[int, ...]

    @property
    def target(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)


@dataclass(frozen=True, slots=True)
class WorkRange:
    """Half-open slice [start, stop) of the lexicographic first-row choices."""

    start: int
    stop: int


Cell = tuple[int, int]


@dataclass(frozen=True, slots=True)
class Slide:
    value: int
    source: Cell
    target: Cell


@dataclass(frozen=True, slots=True)
class BumpStep:
    """``incoming`` lands in ``cell``; ``outgoing`` is the entry it displaced."""

    cell: Cell
    incoming: int
    outgoing: int | None


@dataclass(frozen=True, slots=True)
class BumpTrace:
    inversion: InversionPair
    flip_row: int  # rows flip_row and flip_row + 1 are exchanged in columns 1..inversion.column
    bumps: tuple[BumpStep, ...]
    slides: tuple[Slide, ...]
    added: Cell
    removed: Cell

    @property
    def distinguished(self) -> tuple[int, ...]:
        return tuple(step.incoming for step in self.bumps)


Status = Literal["pass", "fail", "out-of-hypothesis"]


@dataclass(frozen=True, slots=True)
class Report:
    claim: str
    params: dict[str, object]
    status: Status
    evidence: tuple[dict[str, object], ...]

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True, slots=True)
class AppendixTable:
    """Inversion distributions of the m×n rectangle and of its stair-step shape."""

    m: int
    n: int
    rectangle: tuple[int, ...]
    stair_step: tuple[int, ...]
