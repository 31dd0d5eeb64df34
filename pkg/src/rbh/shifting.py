"""Same-part (x, y)-shifts and the bi-shifted fixpoint.

Shifting ``y`` onto ``x`` (x < y, same part) moves every edge ``{y, v}`` to
``{x, v}`` unless ``{x, v}`` is already there.  Repeating this for all
same-part pairs ends in a bi-shifted graph: one whose biadjacency is a
staircase (every row a prefix, row lengths non-increasing).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .bigraph import BipartiteGraph
from .errors import InvalidPair, SamePartViolation


@dataclass(frozen=True)
class ShiftPair:
    x: int
    y: int

    def __post_init__(self):
        if self.x >= self.y:
            raise InvalidPair(f"shift pair needs x < y, got ({self.x},{self.y})")


def _check_pair(g: BipartiteGraph, p: ShiftPair) -> None:
    if p.x < 0 or p.y >= g.n:
        raise InvalidPair(f"shift pair ({p.x},{p.y}) outside 0..{g.n - 1}")
    if g.in_x(p.x) != g.in_x(p.y):
        raise SamePartViolation(f"{p.x} and {p.y} lie in different parts")


def _shift_rows(rows: list[int], n_x: int, x: int, y: int) -> bool:
    """Apply the shift in place on a row list; return True if anything moved."""
    if x < n_x:
        moved = rows[y] & ~rows[x]
        if not moved:
            return False
        rows[x] |= moved
        rows[y] &= ~moved
        return True
    bx, by = 1 << (x - n_x), 1 << (y - n_x)
    changed = False
    for u, r in enumerate(rows):
        if r & by and not r & bx:
            rows[u] = (r & ~by) | bx
            changed = True
    return changed


def shift_xy(g: BipartiteGraph, p: ShiftPair | tuple[int, int]) -> BipartiteGraph:
    if not isinstance(p, ShiftPair):
        p = ShiftPair(*p)
    _check_pair(g, p)
    rows = list(g.rows)
    if not _shift_rows(rows, g.n_x, p.x, p.y):
        return g
    return BipartiteGraph(g.n_x, g.n_y, tuple(rows))


def shift_pairs(n_x: int, n_y: int) -> Iterator[ShiftPair]:
    """All same-part pairs: lexicographic within X, then within Y."""
    for x, y in combinations(range(n_x), 2):
        yield ShiftPair(x, y)
    for x, y in combinations(range(n_x, n_x + n_y), 2):
        yield ShiftPair(x, y)


def _sweep_until_clean(rows_list: list[list[int]], n_x: int, n_y: int, pairs=None) -> None:
    pairs = list(shift_pairs(n_x, n_y)) if pairs is None else pairs
    dirty = True
    while dirty:
        # each move lowers the label sum over edges, so this terminates
        dirty = False
        for p in pairs:
            for rows in rows_list:
                if _shift_rows(rows, n_x, p.x, p.y):
                    dirty = True


def bi_shift(g: BipartiteGraph, pairs: list[ShiftPair] | None = None) -> BipartiteGraph:
    """Sweep all same-part shifts until a pass changes nothing.

    ``pairs`` overrides the sweep order (default: ``shift_pairs``).
    """
    rows = list(g.rows)
    _sweep_until_clean([rows], g.n_x, g.n_y, pairs)
    return BipartiteGraph(g.n_x, g.n_y, tuple(rows))


def is_bi_shifted(g: BipartiteGraph) -> bool:
    """Staircase test: each row is a prefix and rows are nested downward."""
    prev = (1 << g.n_y) - 1
    for r in g.rows:
        if r & (r + 1):  # not of the form 2^d - 1
            return False
        if r & ~prev:
            return False
        prev = r
    return True


def is_shift_fixpoint(g: BipartiteGraph) -> bool:
    """True iff no single same-part shift changes ``g``."""
    return all(shift_xy(g, p) == g for p in shift_pairs(g.n_x, g.n_y))
