"""Symbolic matrix assembly over a closed point set, plus export.

Rows and columns are indexed by the same ordered point list.  The row of a
point b holds one entry per support point of its cell's polynomial: the
column b - vertex + a carries the label u_{poly, a}.  The diagonal entry is
therefore always u_{poly, vertex}.  Entries are labels only; numeric
specialization lives in the oracles module.

Point order is fixed to greedy-mixed, then greedy-non-mixed, then the rest,
lexicographic inside each class.  The greedy-first order makes the full
matrix visibly block triangular (greedy rows never touch non-greedy
columns), which the verification suite exploits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotClosed, UnsupportedFormat
from .greedy import is_greedy
from .multihomo import row_content_multi, type_function_multi
from .subdivision import is_mixed, row_content_of, type_function_of
from .systems import (
    CoeffRef,
    MultiHomoSystem,
    Point,
    RowContent,
    ZonotopeSystem,
    type_vector_of,
)


@dataclass(frozen=True)
class SymbolicMatrix:
    """Square sparse matrix of coefficient labels.

    entries maps (row index, column index) to a CoeffRef; both indices refer
    to positions in the points tuple.  Treat entries as read-only.
    """

    n: int
    points: tuple[Point, ...]
    entries: dict[tuple[int, int], CoeffRef]
    mixed_flags: tuple[bool, ...]
    greedy_flags: tuple[bool, ...]
    row_contents: tuple[RowContent, ...]

    @property
    def size(self) -> int:
        return len(self.points)

    def entry(self, row: int, col: int) -> CoeffRef | None:
        return self.entries.get((row, col))

    def row_entries(self, row: int) -> list[tuple[int, CoeffRef]]:
        out = [
            (c, ref) for (r, c), ref in self.entries.items() if r == row
        ]
        out.sort()
        return out


def _order_key(greedy: bool, mixed: bool, b: Point) -> tuple[int, Point]:
    if greedy and mixed:
        rank = 0
    elif greedy:
        rank = 1
    else:
        rank = 2
    return rank, b


def build_matrix(
    points: Iterable[Point],
    sys_: ZonotopeSystem | MultiHomoSystem,
    reflected: bool = False,
) -> SymbolicMatrix:
    """Assemble the symbolic matrix over a point set closed under columns.

    The set must contain every column point generated by its rows; the
    first missing one aborts the build with a NotClosed witness pair.
    """
    if isinstance(sys_, MultiHomoSystem):
        if reflected:
            raise ValueError("reflected orientation applies to box systems only")
        typefn = type_function_multi
        content = row_content_multi
    else:
        def typefn(b, s):
            return type_function_of(b, s, reflected=reflected)

        def content(b, s):
            return row_content_of(b, s, reflected=reflected)

    n = sys_.n
    pts = sorted(set(tuple(b) for b in points))
    decorated = []
    for b in pts:
        t = type_vector_of(typefn(b, sys_), n)
        decorated.append((b, is_mixed(t), is_greedy(t), content(b, sys_)))
    decorated.sort(key=lambda d: _order_key(d[2], d[1], d[0]))

    ordered = tuple(d[0] for d in decorated)
    index = {b: i for i, b in enumerate(ordered)}
    entries: dict[tuple[int, int], CoeffRef] = {}
    for ri, (b, _, _, rc) in enumerate(decorated):
        base = tuple(c - v for c, v in zip(b, rc.vertex))
        for a in sys_.support(rc.poly):
            col = tuple(c + x for c, x in zip(base, a))
            ci = index.get(col)
            if ci is None:
                raise NotClosed(b, col)
            entries[(ri, ci)] = CoeffRef(rc.poly, a)

    return SymbolicMatrix(
        n=n,
        points=ordered,
        entries=entries,
        mixed_flags=tuple(d[1] for d in decorated),
        greedy_flags=tuple(d[2] for d in decorated),
        row_contents=tuple(d[3] for d in decorated),
    )


def principal_submatrix(m: SymbolicMatrix) -> SymbolicMatrix:
    """Restrict to the non-mixed rows and columns, preserving order.

    Entries whose column is mixed are dropped; this is a pure restriction,
    so applying it twice returns the same matrix.
    """
    keep = [i for i, mixed in enumerate(m.mixed_flags) if not mixed]
    remap = {old: new for new, old in enumerate(keep)}
    entries = {
        (remap[r], remap[c]): ref
        for (r, c), ref in m.entries.items()
        if r in remap and c in remap
    }
    return SymbolicMatrix(
        n=m.n,
        points=tuple(m.points[i] for i in keep),
        entries=entries,
        mixed_flags=tuple(False for _ in keep),
        greedy_flags=tuple(m.greedy_flags[i] for i in keep),
        row_contents=tuple(m.row_contents[i] for i in keep),
    )


def _coords(p: Sequence[int]) -> str:
    return ",".join(str(c) for c in p)


def export_matrix(m: SymbolicMatrix, format: str) -> bytes:
    """Serialize deterministically to UTF-8 text.

    triplets: one line per entry, `row ; col ; poly ; support`, points as
    comma-joined coordinates.  dense: one line per row of space-separated
    tokens u[i][a_1,...,a_n] and 0.  An empty matrix exports its header
    section only, with n=0.
    """
    if format not in ("triplets", "dense"):
        raise UnsupportedFormat(f"unknown export format {format!r}")
    lines = [
        f"# n={m.n if m.size else 0}",
        f"# rows={m.size}",
        "# order=greedy-first-lex",
    ]
    if format == "triplets":
        for (r, c) in sorted(m.entries):
            ref = m.entries[(r, c)]
            lines.append(
                f"{_coords(m.points[r])} ; {_coords(m.points[c])} ; "
                f"{ref.poly} ; {_coords(ref.support)}"
            )
    else:
        for r in range(m.size):
            tokens = []
            for c in range(m.size):
                ref = m.entries.get((r, c))
                if ref is None:
                    tokens.append("0")
                else:
                    tokens.append(f"u[{ref.poly}][{_coords(ref.support)}]")
            lines.append(" ".join(tokens))
    return ("\n".join(lines) + "\n").encode("utf-8")
