from __future__ import annotations

import math
from itertools import combinations

from .errors import Error
from .models import Composition
from .partition import triangular
from .result import Result


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError(f"catalan needs n >= 0, got {n}")
    return math.comb(2 * n, n) // (n + 1)


def mahonian_row(m_minus_1: int) -> tuple[int, ...]:
    """Coefficients of Π_{j=0}^{m-1} (1 + x + … + x^j), lowest degree first."""
    if m_minus_1 < 0:
        raise ValueError(f"mahonian needs m-1 >= 0, got {m_minus_1}")
    poly: list[int] = [1]
    for j in range(1, m_minus_1 + 1):
        grown: list[int] = [0] * (len(poly) + j)
        for degree, coefficient in enumerate(poly):
            for shift in range(j + 1):
                grown[degree + shift] += coefficient
        poly = grown
    return tuple(poly)


def mahonian(m_minus_1: int, i: int) -> int:
    if i < 0:
        return 0
    row: tuple[int, ...] = mahonian_row(m_minus_1)
    return row[i] if i < len(row) else 0


def compositions(n: int, k: int) -> tuple[Composition, ...]:
    """Compositions of ``n`` into ``k`` positive parts, lexicographic ascending."""
    if n < 1 or k < 1 or k > n:
        return ()
    found: list[Composition] = []
    # cut points 1..n-1 in lexicographic order give descending first parts; sort after
    for cuts in combinations(range(1, n), k - 1):
        bounds: tuple[int, ...] = (0, *cuts, n)
        found.append(Composition(tuple(b - a for a, b in zip(bounds, bounds[1:]))))
    return tuple(sorted(found, key=lambda c: c.parts))


def _catalan_product(c: Composition) -> int:
    return math.prod(catalan(part) for part in c.parts)


def two_row_count(n: int, i: int) -> int:
    """|S_i(n, n)| as a sum over compositions of n of products of Catalan numbers."""
    if n < 1 or i < 0:
        raise ValueError(f"two_row_count needs n >= 1 and i >= 0, got ({n}, {i})")
    return sum(_catalan_product(c) for c in compositions(n, i)) + sum(
        _catalan_product(c) for c in compositions(n, i + 1)
    )


def two_row_distribution(n: int) -> tuple[int, ...]:
    return tuple(two_row_count(n, i) for i in range(n + 1))


def m_minus_1_count(m: int, n: int) -> Result[int, Error]:
    """|S_{M-1}| for the m×n rectangle."""
    if m < 2 or n < 1:
        return Result.failure(
            Error(code="domain", message="needs m >= 2 and n >= 1", subject=f"{m}x{n}")
        )
    return Result.success(m * n - 1)


def m_minus_2_count(m: int, n: int) -> Result[int, Error]:
    """|S_{M-2}| for the m×n rectangle; two-row rectangles are outside the formula."""
    if m < 3 or n < 1:
        return Result.failure(
            Error(code="domain", message="needs m >= 3 and n >= 1", subject=f"{m}x{n}")
        )
    return Result.success((m * n - 2) * (m * n + 1) // 2)


def tail_end_threshold(m: int, n: int) -> int:
    if m < 2 or n < 1:
        raise ValueError(f"tail threshold needs m >= 2 and n >= 1, got {m}x{n}")
    return n * triangular(m - 2)
