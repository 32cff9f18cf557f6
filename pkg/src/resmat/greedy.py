"""Greedy row selection for box systems.

A type vector t is greedy when its prefix sums satisfy
t_0 + ... + t_I <= I + 1 for every I < n.  The greedy point set is the
closure of the mixed-cell points under column supports; for ordered bounds
it coincides with the set of points whose type vector is greedy, which gives
a closed-form size prediction.
"""

from __future__ import annotations

from collections import deque
from itertools import product
from typing import Iterator, Sequence

from .subdivision import (
    column_support,
    is_mixed,
    lattice_points,
    row_content_of,
    type_function_of,
)
from .systems import (
    Point,
    RowContent,
    TypeFunction,
    ZonotopeSystem,
    type_vector_of,
)


def is_greedy(t: Sequence[int]) -> bool:
    """Prefix-sum test: t_0 + ... + t_I <= I + 1 for all I < n."""
    n = sum(t)
    acc = 0
    for i in range(n):
        acc += t[i]
        if acc > i + 1:
            return False
    return True


def greedy_type_functions(n: int) -> Iterator[TypeFunction]:
    """All greedy type functions {1..n} -> {0..n}, in lexicographic order."""
    for phi in product(range(n + 1), repeat=n):
        if is_greedy(type_vector_of(phi, n)):
            yield phi


def predicted_size_zonotope(sys_: ZonotopeSystem) -> int:
    """Greedy matrix size by the cell-sum formula.

    Each greedy cell phi contributes prod_j a_phi(j)j points, so the size of
    the greedy point set is the sum of these products.
    """
    n = sys_.n
    total = 0
    for phi in greedy_type_functions(n):
        prod_ = 1
        for j, v in enumerate(phi):
            prod_ *= sys_.bounds[v][j]
        total += prod_
    return total


def greedy_closure(sys_: ZonotopeSystem) -> dict[Point, RowContent]:
    """Close the mixed points under column supports.

    Returns every reached point with its row content, keyed in lexicographic
    order.  Starting from the points of mixed cells, repeatedly add all
    column points of rows already collected.
    """
    n = sys_.n
    contents: dict[Point, RowContent] = {}
    seen: set[Point] = set()
    queue: deque[Point] = deque()
    for b in lattice_points(sys_):
        t = type_vector_of(type_function_of(b, sys_), n)
        if is_mixed(t):
            seen.add(b)
            queue.append(b)
    while queue:
        b = queue.popleft()
        contents[b] = row_content_of(b, sys_)
        for col in column_support(b, sys_):
            if col not in seen:
                seen.add(col)
                queue.append(col)
    return {b: contents[b] for b in sorted(contents)}


def check_no_escape(sys_: ZonotopeSystem) -> bool:
    """Exhaustive check that column supports never leave the greedy set."""
    n = sys_.n
    greedy_set = set()
    for b in lattice_points(sys_):
        if is_greedy(type_vector_of(type_function_of(b, sys_), n)):
            greedy_set.add(b)
    for b in greedy_set:
        for col in column_support(b, sys_):
            if col not in greedy_set:
                return False
    return True


def cell_table(
    sys_: ZonotopeSystem,
) -> list[tuple[TypeFunction, tuple[int, ...], int, bool, bool, RowContent]]:
    """Summary of every cell: (phi, t, point count, mixed, greedy, content).

    The content vertex is derived from phi alone, which doubles as a cross
    check against the per-point row_content_of values.
    """
    n = sys_.n
    out = []
    for phi in product(range(n + 1), repeat=n):
        t = type_vector_of(phi, n)
        count = 1
        for j, v in enumerate(phi):
            count *= sys_.bounds[v][j]
        i = max(k for k, c in enumerate(t) if c == 0)
        vertex = tuple(
            0 if phi[j] < i else sys_.bounds[i][j] for j in range(n)
        )
        out.append((phi, t, count, is_mixed(t), is_greedy(t), RowContent(i, vertex)))
    return out
