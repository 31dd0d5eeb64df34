"""Graph families and exact rainbow Hamilton path/cycle search.

A rainbow structure uses each family member for exactly one of its edges.
Graph indices are 0-based positions in the family and are treated as a
resource set, so edge ``j`` of a witness need not come from graph ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .bigraph import BipartiteGraph, decode_graph_lines, encode_graph
from .errors import FamilySizeMismatch, InvalidParameter, ParseError
from .shifting import _sweep_until_clean


@dataclass(frozen=True)
class GraphFamily:
    graphs: tuple[BipartiteGraph, ...]

    def __init__(self, graphs: Iterable[BipartiteGraph]):
        graphs = tuple(graphs)
        if not graphs:
            raise InvalidParameter("a graph family needs at least one member")
        parts = {(g.n_x, g.n_y) for g in graphs}
        if len(parts) != 1:
            raise InvalidParameter(f"family members disagree on parts: {sorted(parts)}")
        object.__setattr__(self, "graphs", graphs)

    @property
    def n_x(self) -> int:
        return self.graphs[0].n_x

    @property
    def n_y(self) -> int:
        return self.graphs[0].n_y

    @property
    def n(self) -> int:
        return self.n_x + self.n_y

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self) -> Iterator[BipartiteGraph]:
        return iter(self.graphs)

    def __getitem__(self, i: int) -> BipartiteGraph:
        return self.graphs[i]

    def is_constant(self) -> bool:
        return all(g == self.graphs[0] for g in self.graphs)

    def key(self) -> tuple[int, ...]:
        return tuple(g.mask for g in self.graphs)


@dataclass(frozen=True)
class RainbowSubgraph:
    vertices: tuple[int, ...]
    assignment: tuple[int, ...]
    closed: bool = False

    @property
    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        out = list(zip(vs, vs[1:]))
        if self.closed:
            out.append((vs[-1], vs[0]))
        return out

    def to_line(self) -> str:
        kind = "cycle" if self.closed else "path"
        return f"{kind} {' '.join(map(str, self.vertices))} ; g {' '.join(map(str, self.assignment))}"

    @classmethod
    def from_line(cls, line: str) -> "RainbowSubgraph":
        try:
            left, right = line.split(";")
            ltok, rtok = left.split(), right.split()
            if ltok[0] not in ("path", "cycle") or rtok[0] != "g":
                raise ValueError
            return cls(tuple(map(int, ltok[1:])), tuple(map(int, rtok[1:])), ltok[0] == "cycle")
        except (ValueError, IndexError):
            raise ParseError(f"bad witness line {line!r}", 1) from None


def rainbow_violation(
    family: GraphFamily, w: RainbowSubgraph, closed: bool | None = None, spanning: bool = True
) -> str | None:
    """First violated witness clause, or None if ``w`` is valid.

    ``spanning`` demands every vertex be covered and every member used once;
    switch it off to validate partial rainbow paths.
    """
    closed = w.closed if closed is None else closed
    vs, asg = w.vertices, w.assignment
    n, k = family.n, len(family)
    if not vs:
        return "no vertices"
    if any(not 0 <= v < n for v in vs):
        return "vertex label out of range"
    if len(set(vs)) != len(vs):
        return "repeated vertex"
    if spanning and len(vs) != n:
        return f"covers {len(vs)} of {n} vertices"
    if closed and len(vs) < 4:
        return "a cycle needs at least 4 vertices"
    edges = list(zip(vs, vs[1:])) + ([(vs[-1], vs[0])] if closed else [])
    if len(asg) != len(edges):
        return f"{len(edges)} edges but {len(asg)} graph indices"
    if any(not 0 <= i < k for i in asg):
        return "graph index out of range"
    if len(set(asg)) != len(asg):
        return "graph index used twice"
    if spanning and len(asg) != k:
        return f"uses {len(asg)} of {k} family members"
    g0 = family[0]
    for j, ((a, b), i) in enumerate(zip(edges, asg)):
        if g0.in_x(a) == g0.in_x(b):
            return f"edge {j} ({a},{b}) stays inside one part"
        if not family[i].has_edge(a, b):
            return f"edge {j} ({a},{b}) is not in graph {i}"
    return None


def verify_rainbow(family: GraphFamily, w: RainbowSubgraph, closed: bool | None = None,
                   spanning: bool = True) -> bool:
    return rainbow_violation(family, w, closed, spanning) is None


# -- exact Hamilton search ---------------------------------------------------


class _Search:
    """Backtracking over (next vertex, graph index) with a dead-state memo."""

    def __init__(self, family: GraphFamily):
        self.k = len(family)
        self.n = family.n
        self.adj = [g.neighbor_masks() for g in family]
        first: dict[BipartiteGraph, int] = {}
        # identical members are interchangeable: only try the lowest unused one
        self.twin_before = []
        for i, g in enumerate(family):
            j = first.setdefault(g, i)
            self.twin_before.append(sum(1 << t for t in range(j, i) if family[t] == g))
        self._union: dict[int, list[int]] = {}

    def union_unused(self, used: int) -> list[int]:
        u = self._union.get(used)
        if u is None:
            u = [0] * self.n
            for i in range(self.k):
                if not used >> i & 1:
                    a = self.adj[i]
                    for v in range(self.n):
                        u[v] |= a[v]
            self._union[used] = u
        return u

    def choices(self, end: int, w: int, used: int) -> Iterator[int]:
        for i in range(self.k):
            if used >> i & 1 or not self.adj[i][end] >> w & 1:
                continue
            if self.twin_before[i] & ~used:
                continue
            yield i

    def stranded(self, visited: int, used: int, reach: int) -> bool:
        """Some unvisited vertex has no usable edge left into ``reach``."""
        un = self.union_unused(used)
        rest = ((1 << self.n) - 1) & ~visited
        v = 0
        while rest:
            if rest & 1 and not un[v] & reach:
                return True
            rest >>= 1
            v += 1
        return False


def _check_family_size(family: GraphFamily, expected: int, what: str) -> None:
    if len(family) != expected:
        raise FamilySizeMismatch(f"a rainbow Hamilton {what} on {family.n} vertices needs "
                                 f"{expected} graphs, family has {len(family)}")


def find_rainbow_hamilton_path(family: GraphFamily) -> RainbowSubgraph | None:
    n = family.n
    _check_family_size(family, n - 1, "path")
    n_x, n_y = family.n_x, family.n_y
    if abs(n_x - n_y) > 1:
        return None
    s = _Search(family)
    full = (1 << n) - 1
    dead: set[tuple[int, int, int]] = set()
    path: list[int] = []
    asg: list[int] = []

    def extend(end: int, visited: int, used: int) -> bool:
        if visited == full:
            return True
        key = (end, visited, used)
        if key in dead:
            return False
        unvisited = full & ~visited
        if s.stranded(visited, used, unvisited | (1 << end)):
            dead.add(key)
            return False
        cand = s.union_unused(used)[end] & unvisited
        w = 0
        while cand:
            if cand & 1:
                for i in s.choices(end, w, used):
                    path.append(w)
                    asg.append(i)
                    if extend(w, visited | (1 << w), used | (1 << i)):
                        return True
                    path.pop()
                    asg.pop()
            cand >>= 1
            w += 1
        dead.add(key)
        return False

    # a balanced Hamilton path can be read starting from its X end;
    # an unbalanced one must start in the larger part
    starts = range(n_x) if n_x >= n_y else range(n_x, n)
    for v in starts:
        path[:] = [v]
        asg.clear()
        if extend(v, 1 << v, 0):
            return RainbowSubgraph(tuple(path), tuple(asg), False)
    return None


def find_rainbow_hamilton_cycle(family: GraphFamily) -> RainbowSubgraph | None:
    n = family.n
    _check_family_size(family, n, "cycle")
    if family.n_x != family.n_y or family.n_x < 2:
        return None
    s = _Search(family)
    full = (1 << n) - 1
    dead: set[tuple[int, int, int, int]] = set()
    path = [0]
    asg: list[int] = []

    def extend(end: int, visited: int, used: int, second: int) -> bool:
        unvisited = full & ~visited
        if visited == full:
            # close back to vertex 0 with the last unused member;
            # second < last keeps one of the two traversal directions
            if end < second:
                return False
            for i in range(s.k):
                if not used >> i & 1 and s.adj[i][end] & 1:
                    asg.append(i)
                    return True
            return False
        key = (end, visited, used, second)
        if key in dead:
            return False
        if s.stranded(visited, used, unvisited | (1 << end) | 1):
            dead.add(key)
            return False
        cand = s.union_unused(used)[end] & unvisited
        w = 0
        while cand:
            if cand & 1:
                for i in s.choices(end, w, used):
                    path.append(w)
                    asg.append(i)
                    if extend(w, visited | (1 << w), used | (1 << i), second if second >= 0 else w):
                        return True
                    path.pop()
                    asg.pop()
            cand >>= 1
            w += 1
        dead.add(key)
        return False

    if extend(0, 1, 0, -1):
        return RainbowSubgraph(tuple(path), tuple(asg), True)
    return None


# -- longest rainbow path ----------------------------------------------------


def _augment(edge: int, ok: list[list[int]], match_graph: list[int], seen: list[bool]) -> bool:
    for i in ok[edge]:
        if seen[i]:
            continue
        seen[i] = True
        if match_graph[i] < 0 or _augment(match_graph[i], ok, match_graph, seen):
            match_graph[i] = edge
            return True
    return False


def longest_rainbow_path(family: GraphFamily) -> RainbowSubgraph:
    """A maximum rainbow path, lexicographically smallest vertex sequence on ties.

    Walks simple paths in lexicographic order and keeps an edge-to-graph
    matching up to date by augmenting paths, so a prefix is abandoned as
    soon as no injective assignment exists.
    """
    n, k = family.n, len(family)
    adj = [g.neighbor_masks() for g in family]
    union = [0] * n
    for a in adj:
        for v in range(n):
            union[v] |= a[v]
    cap = min(n - 1, k)
    best_vs: list[int] = [0]
    best_match: list[int] = [-1] * k
    path: list[int] = []
    ok: list[list[int]] = []

    def dfs(visited: int, match_graph: list[int]) -> bool:
        nonlocal best_vs, best_match
        if len(path) - 1 > len(best_vs) - 1:
            best_vs, best_match = path[:], match_graph[:]
            if len(path) - 1 == cap:
                return True
        remaining = min(n - len(path), k - (len(path) - 1))
        if len(path) - 1 + remaining <= len(best_vs) - 1:
            return False
        end = path[-1]
        cand = union[end] & ~visited
        w = 0
        while cand:
            if cand & 1:
                ok.append([i for i in range(k) if adj[i][end] >> w & 1])
                mg = match_graph[:]
                free = next((i for i in ok[-1] if mg[i] < 0), None)
                if free is not None:
                    mg[free] = len(ok) - 1
                if free is not None or _augment(len(ok) - 1, ok, mg, [False] * k):
                    path.append(w)
                    if dfs(visited | (1 << w), mg):
                        return True
                    path.pop()
                ok.pop()
            cand >>= 1
            w += 1
        return False

    for v in range(n):
        path[:] = [v]
        if dfs(1 << v, [-1] * k):
            break
    edge_graph = [-1] * (len(best_vs) - 1)
    for i, e in enumerate(best_match):
        if e >= 0:
            edge_graph[e] = i
    return RainbowSubgraph(tuple(best_vs), tuple(edge_graph), False)


def extension_witness(family: GraphFamily, w: RainbowSubgraph) -> tuple[int, int, int] | None:
    """(endpoint, unused graph, outside vertex) extending ``w`` by one edge, if any."""
    used = set(w.assignment)
    inside = set(w.vertices)
    ends = [w.vertices[0], w.vertices[-1]]
    for i, g in enumerate(family):
        if i in used:
            continue
        for end in ends:
            for v in g.neighbors(end):
                if v not in inside:
                    return end, i, v
    return None


# -- family shifting ---------------------------------------------------------


def bi_shift_family(family: GraphFamily) -> GraphFamily:
    """Apply each same-part shift to all members at once until nothing moves."""
    rows = [list(g.rows) for g in family]
    _sweep_until_clean(rows, family.n_x, family.n_y)
    return GraphFamily(BipartiteGraph(family.n_x, family.n_y, tuple(r)) for r in rows)


# -- BFAM text format --------------------------------------------------------


def encode_family(family: GraphFamily) -> str:
    head = f"p bfam {family.n_x} {family.n_y} {len(family)}\n"
    return head + "---\n".join(encode_graph(g) for g in family)


def _decode_family_lines(lines: Sequence[str], first_lineno: int) -> GraphFamily:
    head = lines[0].split()
    if len(head) != 5 or head[:2] != ["p", "bfam"]:
        raise ParseError(f"bad BFAM header {lines[0]!r}", first_lineno)
    try:
        n_x, n_y, k = map(int, head[2:])
    except ValueError:
        raise ParseError("BFAM header needs three integers", first_lineno) from None
    blocks: list[tuple[int, list[str]]] = [(first_lineno + 1, [])]
    for off, line in enumerate(lines[1:], start=1):
        if line.strip() == "---":
            blocks.append((first_lineno + off + 1, []))
        else:
            blocks[-1][1].append(line)
    if len(blocks) != k:
        raise ParseError(f"header announces {k} graphs, found {len(blocks)}", first_lineno)
    graphs = []
    for start, block in blocks:
        g = decode_graph_lines(block, start)
        if (g.n_x, g.n_y) != (n_x, n_y):
            raise ParseError(f"graph parts ({g.n_x},{g.n_y}) differ from family ({n_x},{n_y})", start)
        graphs.append(g)
    return GraphFamily(graphs)


def decode_families(text: str) -> list[GraphFamily]:
    """Decode a stream of concatenated BFAM families."""
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    starts = [i for i, line in enumerate(lines) if line.startswith("p bfam")]
    if not lines or not starts or starts[0] != 0:
        raise ParseError("missing BFAM header", 1)
    bounds = starts + [len(lines)]
    return [_decode_family_lines(lines[a:b], a + 1) for a, b in zip(bounds, bounds[1:])]


def decode_family(text: str) -> GraphFamily:
    fams = decode_families(text)
    if len(fams) != 1:
        raise ParseError(f"expected one family, found {len(fams)}", 1)
    return fams[0]
