"""Brute-force oracle over row-standard fillings.

A row-standard filling of a shape is an ordered set partition of 1..N into
blocks of the row sizes, each block written in increasing order.  Rows are
chosen top to bottom as lexicographic combinations of the values still
unused, which fixes one deterministic order for every run and every worker
count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations, islice, permutations, product
from typing import Iterator

from .errors import Error
from .models import InversionDistribution, Partition, Tableau, WorkRange
from .partition import column_heights, max_inversions, total_inverted_count
from .result import Result
from .tableau import inversion_count, is_standard

DEFAULT_BUDGET: int = 10**8

# (upper, lower, upper_right, lower_right) flat indices; inversion iff the two
# comparisons disagree
FullPair = tuple[int, int, int, int]
# (upper, lower) where the lower row has no right neighbour; inversion iff
# upper > lower
EdgePair = tuple[int, int]


def _check_budget(p: Partition, budget: int) -> Result[None, Error]:
    total: int = total_inverted_count(p)
    if total > budget:
        return Result.failure(
            Error(
                code="budget-exceeded",
                message=f"{total} fillings exceed the generation budget {budget}",
                subject=str(p),
            )
        )
    return Result.success(None)


def _offsets(parts: tuple[int, ...]) -> tuple[int, ...]:
    out: list[int] = [0]
    for part in parts:
        out.append(out[-1] + part)
    return tuple(out)


def _pair_tables(parts: tuple[int, ...]) -> tuple[tuple[FullPair, ...], tuple[EdgePair, ...]]:
    offsets: tuple[int, ...] = _offsets(parts)
    full: list[FullPair] = []
    edge: list[EdgePair] = []
    for j, height in enumerate(column_heights(Partition(parts))):
        for upper, lower in combinations(range(height), 2):
            a: int = offsets[upper] + j
            b: int = offsets[lower] + j
            # rows are non-increasing, so a lower right neighbour implies an upper one
            if j + 1 < parts[lower]:
                full.append((a, b, a + 1, b + 1))
            else:
                edge.append((a, b))
    return tuple(full), tuple(edge)


def _completions(
    parts: tuple[int, ...], remaining: tuple[int, ...]
) -> Iterator[tuple[int, ...]]:
    if not parts:
        yield ()
        return
    head: int = parts[0]
    for chosen in combinations(remaining, head):
        chosen_set: set[int] = set(chosen)
        rest: tuple[int, ...] = tuple(v for v in remaining if v not in chosen_set)
        for tail in _completions(parts[1:], rest):
            yield (*chosen, *tail)


def _flat_fillings(
    parts: tuple[int, ...], start: int = 0, stop: int | None = None
) -> Iterator[tuple[int, ...]]:
    values: tuple[int, ...] = tuple(range(1, sum(parts) + 1))
    for first in islice(combinations(values, parts[0]), start, stop):
        first_set: set[int] = set(first)
        rest: tuple[int, ...] = tuple(v for v in values if v not in first_set)
        for tail in _completions(parts[1:], rest):
            yield (*first, *tail)


def _unflatten(parts: tuple[int, ...], flat: tuple[int, ...]) -> Tableau:
    offsets: tuple[int, ...] = _offsets(parts)
    return Tableau(tuple(flat[offsets[i] : offsets[i + 1]] for i in range(len(parts))))


def enumerate_inverted(
    p: Partition, budget: int = DEFAULT_BUDGET
) -> Result[Iterator[Tableau], Error]:
    """Every row-standard filling of ``p``, lexicographic on the row sets."""
    guard: Result[None, Error] = _check_budget(p, budget)
    if not guard.ok and guard.error is not None:
        return Result.failure(guard.error)
    return Result.success(_unflatten(p.parts, flat) for flat in _flat_fillings(p.parts))


def _distribution_worker(task: tuple[tuple[int, ...], int, int]) -> tuple[int, ...]:
    parts, start, stop = task
    full, edge = _pair_tables(parts)
    counts: list[int] = [0] * (max_inversions(Partition(parts)) + 1)
    for f in _flat_fillings(parts, start, stop):
        n_inv: int = 0
        for a, b, c, d in full:
            if (f[a] > f[b]) != (f[c] > f[d]):
                n_inv += 1
        for a, b in edge:
            if f[a] > f[b]:
                n_inv += 1
        counts[n_inv] += 1
    return tuple(counts)


def partition_work(p: Partition, workers: int) -> tuple[WorkRange, ...]:
    """Split the first-row choices into ``workers`` contiguous ranges.

    Ranges are as even as possible; with more workers than choices the
    trailing ranges are empty.
    """
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    choices: int = math.comb(p.size, p.parts[0])
    size, extra = divmod(choices, workers)
    ranges: list[WorkRange] = []
    start: int = 0
    for w in range(workers):
        stop: int = start + size + (1 if w < extra else 0)
        ranges.append(WorkRange(start=start, stop=stop))
        start = stop
    return tuple(ranges)


def inversion_distribution(
    p: Partition, workers: int = 1, budget: int = DEFAULT_BUDGET
) -> Result[InversionDistribution, Error]:
    guard: Result[None, Error] = _check_budget(p, budget)
    if not guard.ok and guard.error is not None:
        return Result.failure(guard.error)
    tasks: tuple[tuple[tuple[int, ...], int, int], ...] = tuple(
        (p.parts, r.start, r.stop) for r in partition_work(p, workers) if r.stop > r.start
    )
    partials: list[tuple[int, ...]]
    if workers <= 1:
        partials = [_distribution_worker(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_distribution_worker, tasks))
    counts: list[int] = [0] * (max_inversions(p) + 1)
    for partial in partials:
        for i, c in enumerate(partial):
            counts[i] += c
    return Result.success(InversionDistribution(shape=p, counts=tuple(counts)))


def betti_numbers(
    p: Partition, workers: int = 1, budget: int = DEFAULT_BUDGET
) -> Result[tuple[int, ...], Error]:
    """b_m = |S_{d-m}(p)| with d = M_λ."""
    dist: Result[InversionDistribution, Error] = inversion_distribution(p, workers, budget)
    if dist.value is None:
        assert dist.error is not None
        return Result.failure(dist.error)
    return Result.success(tuple(reversed(dist.value.counts)))


def fiber(t: Tableau, budget: int = DEFAULT_BUDGET) -> Result[tuple[Tableau, ...], Error]:
    """All row-standard tableaux whose standardization is ``t``, sorted by rows.

    Every ordering of every column is tried, so the budget caps the product
    of the column factorials.
    """
    if not is_standard(t):
        return Result.failure(
            Error(
                code="input-not-standard",
                message="fiber needs a standard Young tableau",
                subject=str(t.shape),
            )
        )
    candidates: int = math.prod(math.factorial(h) for h in column_heights(t.shape))
    if candidates > budget:
        return Result.failure(
            Error(
                code="budget-exceeded",
                message=f"{candidates} column orderings exceed the generation budget {budget}",
                subject=str(t.shape),
            )
        )
    width: int = t.shape.parts[0]
    columns: tuple[tuple[int, ...], ...] = tuple(t.column(j) for j in range(1, width + 1))
    found: list[Tableau] = []
    for orders in product(*(permutations(col) for col in columns)):
        rows: tuple[tuple[int, ...], ...] = tuple(
            tuple(orders[j][i] for j in range(len(row))) for i, row in enumerate(t.rows)
        )
        if all(a < b for row in rows for a, b in zip(row, row[1:])):
            found.append(Tableau(rows))
    return Result.success(tuple(sorted(found, key=lambda tab: tab.rows)))


def standard_tableaux(p: Partition) -> Iterator[Tableau]:
    """Every standard Young tableau of ``p``; value v goes to the topmost rows first."""
    target: tuple[int, ...] = p.parts

    def _grow(rows: list[list[int]], value: int) -> Iterator[Tableau]:
        if value > p.size:
            yield Tableau(tuple(tuple(row) for row in rows))
            return
        for i, row in enumerate(rows):
            if len(row) < target[i] and (i == 0 or len(rows[i - 1]) > len(row)):
                row.append(value)
                yield from _grow(rows, value + 1)
                row.pop()

    return _grow([[] for _ in target], 1)


def inverted_with_inversions(
    p: Partition, i: int, budget: int = DEFAULT_BUDGET
) -> Result[tuple[Tableau, ...], Error]:
    """S_i(p) in enumeration order."""
    every: Result[Iterator[Tableau], Error] = enumerate_inverted(p, budget)
    if every.value is None:
        assert every.error is not None
        return Result.failure(every.error)
    return Result.success(tuple(t for t in every.value if inversion_count(t) == i))
