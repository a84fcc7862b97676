"""Tableaux as values: standardness, inversions, standardization, splits.

A pair of entries sharing a column is an inversion when their vertical order
disagrees with the vertical order of their right neighbours.  A missing right
neighbour counts as an arbitrarily large value, and such values increase from
top to bottom; with that convention the two cases of the definition
(missing neighbour with the smaller entry below, or right neighbours in the
wrong order) collapse into one comparison.
"""

from __future__ import annotations

import re
from itertools import combinations

from .errors import Error
from .models import InversionPair, Partition, Tableau
from .partition import column_heights, max_inversions
from .result import Result

_ROW_SEPARATOR: re.Pattern[str] = re.compile(r"\s*(?:/|\n)\s*")


def parse_tableau(text: str) -> Result[Tableau, Error]:
    """Parse ``"1 2 8 / 4 5 6 / 3 7 9"``; rows may also be newline-separated."""
    chunks: list[str] = [c for c in _ROW_SEPARATOR.split(text.strip()) if c]
    if not chunks:
        return Result.failure(Error(code="parse", message="empty tableau", subject=text))
    try:
        rows: tuple[tuple[int, ...], ...] = tuple(
            tuple(int(tok) for tok in chunk.replace(",", " ").split()) for chunk in chunks
        )
        return Result.success(Tableau(rows))
    except ValueError as exc:
        return Result.failure(Error(code="parse", message=str(exc), subject=text))


def format_tableau(t: Tableau, inline: bool = True) -> str:
    separator: str = " / " if inline else "\n"
    return separator.join(" ".join(str(v) for v in row) for row in t.rows)


def is_row_standard(t: Tableau) -> bool:
    return all(a < b for row in t.rows for a, b in zip(row, row[1:]))


def is_column_standard(t: Tableau) -> bool:
    return all(
        upper[j] < lower[j]
        for upper, lower in zip(t.rows, t.rows[1:])
        for j in range(len(lower))
    )


def is_standard(t: Tableau) -> bool:
    return is_row_standard(t) and is_column_standard(t)


def _key(t: Tableau, row: int, column: int) -> tuple[int, int]:
    # (0, value) for a real right neighbour, (1, row) for the imaginary large one
    cells: tuple[int, ...] = t.rows[row]
    if column + 1 < len(cells):
        return (0, cells[column + 1])
    return (1, row)


def inversions(t: Tableau) -> tuple[InversionPair, ...]:
    """Every inversion pair of a row-standard tableau, sorted by (column, small, large)."""
    found: list[InversionPair] = []
    for j, height in enumerate(column_heights(t.shape)):
        for upper, lower in combinations(range(height), 2):
            x: int = t.rows[upper][j]
            y: int = t.rows[lower][j]
            if (x > y) != (_key(t, upper, j) > _key(t, lower, j)):
                found.append(InversionPair(column=j + 1, small=min(x, y), large=max(x, y)))
    return tuple(sorted(found))


def inversion_count(t: Tableau) -> int:
    return sum(
        1
        for j, height in enumerate(column_heights(t.shape))
        for upper, lower in combinations(range(height), 2)
        if (t.rows[upper][j] > t.rows[lower][j])
        != (_key(t, upper, j) > _key(t, lower, j))
    )


def standardize(t: Tableau) -> Tableau:
    """Sort every column increasingly; the result is a standard Young tableau."""
    heights: tuple[int, ...] = column_heights(t.shape)
    columns: list[list[int]] = [sorted(t.column(j)) for j in range(1, len(heights) + 1)]
    rows: tuple[tuple[int, ...], ...] = tuple(
        tuple(columns[j][i] for j in range(len(row))) for i, row in enumerate(t.rows)
    )
    result: Tableau = Tableau(rows)
    assert is_standard(result), "standardization must be row- and column-standard"
    return result


def split_points(t: Tableau) -> Result[frozenset[int], Error]:
    """Columns j < n such that columns 1..j hold exactly the first j·m entries."""
    shape: Partition = t.shape
    if not shape.is_rectangular:
        return Result.failure(
            Error(
                code="unsupported-shape",
                message="splits are defined for rectangular tableaux only",
                subject=str(shape),
            )
        )
    m: int = shape.length
    n: int = shape.parts[0]
    points: set[int] = set()
    seen_max: int = 0
    for j in range(1, n):
        seen_max = max(seen_max, *t.column(j))
        if seen_max == j * m:
            points.add(j)
    return Result.success(frozenset(points))


def max_inversion_tableau(p: Partition) -> Tableau:
    """The unique filling of ``p`` with the maximum number of inversions.

    Columns are filled right to left with the largest unused values, each in
    the order opposite to its right neighbours (missing neighbours being
    large and increasing downwards).
    """
    heights: tuple[int, ...] = column_heights(p)
    grid: list[list[int]] = [[0] * part for part in p.parts]
    next_value: int = p.size
    for j in range(len(heights) - 1, -1, -1):
        height: int = heights[j]
        values: list[int] = list(range(next_value - height + 1, next_value + 1))
        next_value -= height

        def key(row: int) -> tuple[int, int]:
            if j + 1 < p.parts[row]:
                return (0, grid[row][j + 1])
            return (1, row)

        by_key_descending: list[int] = sorted(range(height), key=key, reverse=True)
        for row, value in zip(by_key_descending, values):
            grid[row][j] = value
    result: Tableau = Tableau(tuple(tuple(row) for row in grid))
    assert is_row_standard(result)
    assert inversion_count(result) == max_inversions(p)
    return result


def column_swap_decomposition(t: Tableau) -> tuple[InversionPair, int]:
    """For a 1-inverted tableau: its inversion and the upper row r (1-based).

    ``t`` equals its standardization with rows r and r+1 exchanged in columns
    1..k, where k is the inversion's column and the larger entry sits in row r.
    """
    pairs: tuple[InversionPair, ...] = inversions(t)
    assert len(pairs) == 1, f"expected exactly one inversion, found {len(pairs)}"
    pair: InversionPair = pairs[0]
    row_large, col_large = t.position(pair.large)
    row_small, col_small = t.position(pair.small)
    assert col_large == col_small == pair.column
    assert row_small == row_large + 1, "the larger entry must sit directly above the smaller"
    return pair, row_large
