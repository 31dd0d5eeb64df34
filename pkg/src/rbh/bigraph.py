"""Bipartite graphs on a fixed, ordered bipartition.

Vertices are labeled ``0..n_x+n_y-1``: X holds ``0..n_x-1`` and Y holds
``n_x..n_x+n_y-1``.  Internally each X-vertex ``u`` stores its neighborhood
as an int bitmask ``rows[u]`` over Y-indices (bit ``j`` is the Y-vertex with
label ``n_x+j``).  The whole biadjacency packs into one integer with bit
``u*n_y + j``; enumeration walks those integers in increasing order.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import EnumerationTooLarge, InvalidEdge, InvalidParameter, ParseError, SamePartEdge

MAX_ENUM_EDGES = 36


@dataclass(frozen=True)
class BipartiteGraph:
    n_x: int
    n_y: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n_x < 0 or self.n_y < 0:
            raise InvalidParameter("part sizes must be non-negative")
        if len(self.rows) != self.n_x:
            raise InvalidParameter("need one row per X-vertex")
        full = (1 << self.n_y) - 1
        if any(r & ~full for r in self.rows):
            raise InvalidEdge("row bitmask exceeds Y range")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_mask(cls, n_x: int, n_y: int, mask: int) -> "BipartiteGraph":
        full = (1 << n_y) - 1
        return cls(n_x, n_y, tuple((mask >> (u * n_y)) & full for u in range(n_x)))

    @classmethod
    def from_biadjacency(cls, matrix) -> "BipartiteGraph":
        m = np.asarray(matrix, dtype=bool)
        if m.ndim != 2:
            raise InvalidParameter("biadjacency must be 2-D")
        n_x, n_y = m.shape
        rows = tuple(sum(1 << j for j in range(n_y) if m[u, j]) for u in range(n_x))
        return cls(n_x, n_y, rows)

    @classmethod
    def empty(cls, n_x: int, n_y: int) -> "BipartiteGraph":
        return cls(n_x, n_y, (0,) * n_x)

    @classmethod
    def complete(cls, n_x: int, n_y: int) -> "BipartiteGraph":
        return cls(n_x, n_y, ((1 << n_y) - 1,) * n_x)

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return self.n_x + self.n_y

    @property
    def mask(self) -> int:
        out = 0
        for u, r in enumerate(self.rows):
            out |= r << (u * self.n_y)
        return out

    @property
    def biadjacency(self) -> np.ndarray:
        m = np.zeros((self.n_x, self.n_y), dtype=bool)
        for u, r in enumerate(self.rows):
            for j in range(self.n_y):
                if r >> j & 1:
                    m[u, j] = True
        return m

    def adjacency_matrix(self) -> np.ndarray:
        """Full symmetric 0/1 adjacency matrix (float64), X labels first."""
        b = self.biadjacency.astype(float)
        a = np.zeros((self.n, self.n))
        a[: self.n_x, self.n_x :] = b
        a[self.n_x :, : self.n_x] = b.T
        return a

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def in_x(self, v: int) -> bool:
        return 0 <= v < self.n_x

    def in_y(self, v: int) -> bool:
        return self.n_x <= v < self.n

    def columns(self) -> tuple[int, ...]:
        """Neighborhoods of the Y-vertices as bitmasks over X-indices."""
        return tuple(
            sum(1 << u for u, r in enumerate(self.rows) if r >> j & 1) for j in range(self.n_y)
        )

    def has_edge(self, u: int, v: int) -> bool:
        if self.in_y(u) and self.in_x(v):
            u, v = v, u
        if not (self.in_x(u) and self.in_y(v)):
            return False
        return bool(self.rows[u] >> (v - self.n_x) & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(x_label, y_label)`` pairs in lexicographic order."""
        return [
            (u, self.n_x + j)
            for u, r in enumerate(self.rows)
            for j in range(self.n_y)
            if r >> j & 1
        ]

    def neighbors(self, v: int) -> list[int]:
        if self.in_x(v):
            r = self.rows[v]
            return [self.n_x + j for j in range(self.n_y) if r >> j & 1]
        if self.in_y(v):
            j = v - self.n_x
            return [u for u, r in enumerate(self.rows) if r >> j & 1]
        raise InvalidEdge(f"vertex {v} out of range")

    def degree(self, v: int) -> int:
        if self.in_x(v):
            return self.rows[v].bit_count()
        if self.in_y(v):
            j = v - self.n_x
            return sum(r >> j & 1 for r in self.rows)
        raise InvalidEdge(f"vertex {v} out of range")

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def neighbor_masks(self) -> list[int]:
        """Neighborhood of every vertex as a bitmask over all labels."""
        out = [r << self.n_x for r in self.rows]
        out.extend(c for c in self.columns())
        return out

    def transpose(self) -> "BipartiteGraph":
        """Swap the roles of X and Y (Y's vertices become labels 0..n_y-1)."""
        return BipartiteGraph(self.n_y, self.n_x, self.columns())

    def components(self) -> list[tuple[list[int], list[int]]]:
        """Connected components as (X-indices, Y-indices), isolated vertices included."""
        cols = self.columns()
        seen_x = [False] * self.n_x
        seen_y = [False] * self.n_y
        comps = []
        for start_x, start in [(True, i) for i in range(self.n_x)] + [(False, j) for j in range(self.n_y)]:
            if (seen_x if start_x else seen_y)[start]:
                continue
            xs, ys = [], []
            stack = [(start_x, start)]
            (seen_x if start_x else seen_y)[start] = True
            while stack:
                is_x, i = stack.pop()
                if is_x:
                    xs.append(i)
                    r = self.rows[i]
                    for j in range(self.n_y):
                        if r >> j & 1 and not seen_y[j]:
                            seen_y[j] = True
                            stack.append((False, j))
                else:
                    ys.append(i)
                    c = cols[i]
                    for u in range(self.n_x):
                        if c >> u & 1 and not seen_x[u]:
                            seen_x[u] = True
                            stack.append((True, u))
            comps.append((sorted(xs), sorted(ys)))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def __str__(self) -> str:
        return f"BipartiteGraph(({self.n_x},{self.n_y}), edges={self.edges()})"


def make_graph(n_x: int, n_y: int, edges: Iterable[Sequence[int]]) -> BipartiteGraph:
    """Build a graph from label pairs; repeated edges are merged."""
    rows = [0] * n_x
    n = n_x + n_y
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u},{v}) has a label outside 0..{n - 1}")
        if (u < n_x) == (v < n_x):
            raise SamePartEdge(f"edge ({u},{v}) joins two vertices of the same part")
        if u >= n_x:
            u, v = v, u
        rows[u] |= 1 << (v - n_x)
    return BipartiteGraph(n_x, n_y, tuple(rows))


def quasi_complement(g: BipartiteGraph) -> BipartiteGraph:
    full = (1 << g.n_y) - 1
    return BipartiteGraph(g.n_x, g.n_y, tuple(full & ~r for r in g.rows))


def join(g1: BipartiteGraph, g2: BipartiteGraph) -> BipartiteGraph:
    """Disjoint union plus every X1-Y2 and Y1-X2 edge.

    X labels of ``g1`` precede those of ``g2``; same for Y.
    """
    n_x, n_y = g1.n_x + g2.n_x, g1.n_y + g2.n_y
    y2_all = ((1 << g2.n_y) - 1) << g1.n_y
    y1_all = (1 << g1.n_y) - 1
    rows = [r | y2_all for r in g1.rows]
    rows += [(r << g1.n_y) | y1_all for r in g2.rows]
    return BipartiteGraph(n_x, n_y, tuple(rows))


# -- named extremal constructions ------------------------------------------


class FamilyName(NamedTuple):
    tag: str
    k: int
    n: int

    def __str__(self) -> str:
        return f"{self.tag}^{self.k}_{self.n}"

    @classmethod
    def parse(cls, text: str) -> "FamilyName":
        """Parse ``"B,1,3"`` or ``"B:1:3"``."""
        parts = text.replace(":", ",").split(",")
        if len(parts) != 3:
            raise InvalidParameter(f"cannot parse family name {text!r}; expected TAG,k,n")
        try:
            return cls(parts[0].strip().upper(), int(parts[1]), int(parts[2]))
        except ValueError as exc:
            raise InvalidParameter(f"cannot parse family name {text!r}") from exc


def _parts(tag: str, k: int, n: int) -> tuple[tuple[int, int], tuple[int, int]]:
    # (complete bipartite block, quasi-complemented block)
    if tag == "Q":
        return (k, n - k - 1), (n - k, k + 1)
    if tag == "R":
        return (k, k), (n - k, n - k)
    if tag == "S":
        return (k, n - k - 1), (n - k, k)
    if tag == "T":
        return (k, n - k - 1), (n - k - 1, k + 1)
    if tag == "B":
        return (k, n - k), (n - k, k)
    raise InvalidParameter(f"unknown family tag {tag!r}")


_K_RANGE = {"Q": lambda n: n - 1, "R": lambda n: n, "S": lambda n: n - 1, "T": lambda n: n - 1, "B": lambda n: n}


def construct(name: FamilyName) -> BipartiteGraph:
    """Build Q^k_n, R^k_n, S^k_n, T^k_n or B^k_n as a labeled graph.

    All are ``K_{a,b} ⊔ quasi_complement(K_{c,d})``, i.e. a join with an
    edgeless block.  Q/R/B land on parts (n, n); S on (n, n-1); T on (n-1, n).
    """
    tag, k, n = FamilyName(*name)
    if tag not in _K_RANGE:
        raise InvalidParameter(f"unknown family tag {tag!r}")
    if n < 1 or not 0 <= k <= _K_RANGE[tag](n):
        raise InvalidParameter(f"{tag}^{k}_{n}: parameter out of range")
    (a, b), (c, d) = _parts(tag, k, n)
    return join(BipartiteGraph.complete(a, b), BipartiteGraph.empty(c, d))


# -- isomorphism -------------------------------------------------------------


def _iso_same_parts(g: BipartiteGraph, h: BipartiteGraph) -> bool:
    if g.num_edges != h.num_edges:
        return False
    if g.n_y < g.n_x:
        g, h = g.transpose(), h.transpose()
    gdeg = [r.bit_count() for r in g.rows]
    hdeg = [r.bit_count() for r in h.rows]
    if sorted(gdeg) != sorted(hdeg):
        return False
    if sorted(c.bit_count() for c in g.columns()) != sorted(c.bit_count() for c in h.columns()):
        return False
    n_x, n_y = g.n_x, g.n_y
    # map rare-degree X vertices first
    freq = Counter(gdeg)
    order = sorted(range(n_x), key=lambda u: (freq[gdeg[u]], u))
    image = [0] * n_x
    used = [False] * n_x
    # column signatures restricted to the mapped prefix
    gsig = [0] * n_y
    hsig = [0] * n_y

    def search(t: int) -> bool:
        if t == n_x:
            return True
        gu = order[t]
        grow = g.rows[gu]
        for hu in range(n_x):
            if used[hu] or hdeg[hu] != gdeg[gu]:
                continue
            hrow = h.rows[hu]
            new_g = [gsig[j] | ((grow >> j & 1) << t) for j in range(n_y)]
            new_h = [hsig[j] | ((hrow >> j & 1) << t) for j in range(n_y)]
            if Counter(new_g) != Counter(new_h):
                continue
            old_g, old_h = gsig[:], hsig[:]
            gsig[:], hsig[:] = new_g, new_h
            used[hu] = True
            image[gu] = hu
            if search(t + 1):
                return True
            used[hu] = False
            gsig[:], hsig[:] = old_g, old_h
        return False

    return search(0)


def is_isomorphic(g: BipartiteGraph, h: BipartiteGraph) -> bool:
    """Bipartition-respecting isomorphism test.

    X may map onto X, or onto Y when the parts of ``h`` are those of ``g``
    swapped (this includes every balanced pair).
    """
    if (g.n_x, g.n_y) == (h.n_x, h.n_y) and _iso_same_parts(g, h):
        return True
    if (g.n_x, g.n_y) == (h.n_y, h.n_x):
        return _iso_same_parts(g, h.transpose())
    return False


# -- enumeration -------------------------------------------------------------


def enumerate_graphs(n_x: int, n_y: int, start: int = 0, stop: int | None = None) -> Iterator[BipartiteGraph]:
    """All labeled graphs on parts (n_x, n_y) in increasing bitmask order.

    ``start``/``stop`` restrict to a half-open mask range, which is how
    exhaustive work gets split between workers.
    """
    if n_x * n_y > MAX_ENUM_EDGES:
        raise EnumerationTooLarge(f"{n_x}x{n_y} has more than {MAX_ENUM_EDGES} potential edges")
    total = 1 << (n_x * n_y)
    stop = total if stop is None else min(stop, total)
    for mask in range(start, stop):
        yield BipartiteGraph.from_mask(n_x, n_y, mask)


# -- BGF text format ---------------------------------------------------------


def encode_graph(g: BipartiteGraph) -> str:
    edges = g.edges()
    lines = [f"p bgf {g.n_x} {g.n_y} {len(edges)}"]
    lines += [f"e {u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def _parse_ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        vals = [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None
    if any(v < 0 for v in vals):
        raise ParseError("negative value", lineno)
    return vals


def decode_graph_lines(lines: Sequence[str], first_lineno: int = 1) -> BipartiteGraph:
    """Decode one BGF block given as a list of lines (line numbers for errors)."""
    lines = list(lines)
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("missing BGF header", first_lineno)
    head = lines[0].split()
    if len(head) != 5 or head[:2] != ["p", "bgf"]:
        raise ParseError(f"bad BGF header {lines[0]!r}", first_lineno)
    n_x, n_y, m = _parse_ints(head[2:], first_lineno)
    if len(lines) - 1 != m:
        raise ParseError(f"header announces {m} edges, found {len(lines) - 1} edge lines",
                         first_lineno + len(lines) - 1 if len(lines) > 1 else first_lineno)
    rows = [0] * n_x
    for offset, line in enumerate(lines[1:], start=1):
        lineno = first_lineno + offset
        tok = line.split()
        if len(tok) != 3 or tok[0] != "e":
            raise ParseError(f"bad edge line {line!r}", lineno)
        u, v = _parse_ints(tok[1:], lineno)
        if not (u < n_x <= v < n_x + n_y):
            raise ParseError(f"edge ({u},{v}) violates u < {n_x} <= v < {n_x + n_y}", lineno)
        bit = 1 << (v - n_x)
        if rows[u] & bit:
            raise ParseError(f"duplicate edge ({u},{v})", lineno)
        rows[u] |= bit
    return BipartiteGraph(n_x, n_y, tuple(rows))


def decode_graph(text: str) -> BipartiteGraph:
    return decode_graph_lines(text.split("\n"))
