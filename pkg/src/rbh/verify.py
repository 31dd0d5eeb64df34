"""Harnesses that check the theorems and lemmas on small cases.

Every harness returns a :class:`VerificationReport`.  Exhaustive runs are
cut into a fixed list of chunks (independent of the worker count) and the
partial reports are merged in chunk order, so a run with ``jobs=8`` is
byte-identical to one with ``jobs=1`` apart from ``elapsed``.  Sampled runs
draw chunk ``i`` from ``numpy.random.default_rng([seed, i])``.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import combinations, product
from typing import Callable, Iterator, Sequence

import numpy as np

from .bigraph import (
    MAX_ENUM_EDGES,
    BipartiteGraph,
    FamilyName,
    construct,
    decode_graph,
    encode_graph,
    enumerate_graphs,
    is_isomorphic,
)
from .errors import EnumerationTooLarge, InvalidParameter
from .rainbow import (
    GraphFamily,
    bi_shift_family,
    decode_family,
    encode_family,
    extension_witness,
    find_rainbow_hamilton_cycle,
    find_rainbow_hamilton_path,
    longest_rainbow_path,
    rainbow_violation,
)
from .report import VerificationReport
from .shifting import ShiftPair, bi_shift, is_bi_shifted, is_shift_fixpoint, shift_pairs, shift_xy
from .spectral import (
    DEFAULT_EPS,
    DEFAULT_TOL,
    Comparison,
    compare_to_threshold,
    lemma_2_8_suite,
    nosal_check,
    rho,
    threshold,
)

DEFAULT_SEED = 20250101
SAMPLE_CHUNK = 1000
MAX_FAMILY_SPACE = 1 << 24
GRAPH_CHUNKS = 64


def default_jobs() -> int:
    return os.cpu_count() or 1


# -- extremal settings -------------------------------------------------------


@dataclass(frozen=True)
class Setting:
    """Threshold tag, bipartition, extremal graph and structure for one theorem."""

    tag: str
    n: int
    orientation: str
    extremal: BipartiteGraph
    kind: str  # "path" or "cycle"

    @property
    def parts(self) -> tuple[int, int]:
        return self.extremal.n_x, self.extremal.n_y

    @property
    def family_size(self) -> int:
        n_v = self.extremal.n
        return n_v if self.kind == "cycle" else n_v - 1

    def search(self, family: GraphFamily):
        if self.kind == "cycle":
            return find_rainbow_hamilton_cycle(family)
        return find_rainbow_hamilton_path(family)


GROUP_OF = {
    "thm1.4": "Q0", "lem3.1": "Q0", "cor3.1": "Q0", "lem3.2": "Q0",
    "thm1.5": "T0", "lem4.1": "T0", "cor4.1": "T0", "lem4.2": "T0",
    "thm1.6": "B1", "lem5.1": "B1", "cor5.1": "B1", "lem5.2": "B1",
}

ORIENTED = {"T0"}


@lru_cache(maxsize=None)
def setting(tag: str, n: int, orientation: str = "X") -> Setting:
    """Build the setting for a threshold tag.

    For T0 the parts are unequal and the isolated vertex of K_{n-1,n-1} ∪ K_1
    sits in the larger part; ``orientation`` names that part ("X" gives parts
    (n, n-1), "Y" gives (n-1, n)).  Balanced settings ignore it.
    """
    if n < 2:
        raise InvalidParameter("n must be >= 2")
    if tag == "Q0":
        return Setting(tag, n, "-", construct(FamilyName("Q", 0, n)), "path")
    if tag == "T0":
        g = construct(FamilyName("T", 0, n))
        if orientation == "X":
            g = g.transpose()
        elif orientation != "Y":
            raise InvalidParameter(f"orientation must be X or Y, got {orientation!r}")
        return Setting(tag, n, orientation, g, "path")
    if tag == "B1":
        return Setting(tag, n, "-", construct(FamilyName("B", 1, n)), "cycle")
    raise InvalidParameter(f"unknown threshold tag {tag!r}")


def meets_threshold(g: BipartiteGraph, st: Setting, eps: float = DEFAULT_EPS, tol: float = DEFAULT_TOL) -> bool:
    """Decide rho(g) >= threshold, resolving float ties structurally.

    A graph within ``eps`` of the threshold counts as meeting it when it is
    isomorphic to the extremal graph, or when a second rho computation at
    tol 1e-14 still does not fall below threshold - eps.
    """
    c = compare_to_threshold(g, st.tag, st.n, eps, tol)
    if c is Comparison.ABOVE:
        return True
    if c is Comparison.BELOW:
        return False
    if is_isomorphic(g, st.extremal):
        return True
    return rho(g, 1e-14) >= threshold(st.tag, st.n) - eps


# -- labeled copies and graph pools -----------------------------------------


@dataclass(frozen=True)
class ExtremalCopySet:
    name: str
    copies: tuple[BipartiteGraph, ...]

    def __len__(self) -> int:
        return len(self.copies)


def graphs_with_edges(n_x: int, n_y: int, m: int) -> list[BipartiteGraph]:
    """All labeled graphs on (n_x, n_y) with exactly m edges, by increasing mask."""
    if n_x * n_y > MAX_ENUM_EDGES:
        raise EnumerationTooLarge(f"{n_x}x{n_y} has more than {MAX_ENUM_EDGES} potential edges")
    masks = sorted(sum(1 << b for b in bits) for bits in combinations(range(n_x * n_y), m))
    return [BipartiteGraph.from_mask(n_x, n_y, mk) for mk in masks]


@lru_cache(maxsize=None)
def _copies_of(target: BipartiteGraph) -> tuple[BipartiteGraph, ...]:
    if target.n_x + target.n_y > 16 or target.n_x * target.n_y > MAX_ENUM_EDGES:
        raise EnumerationTooLarge("labeled copies only enumerated for small graphs")
    return tuple(g for g in graphs_with_edges(target.n_x, target.n_y, target.num_edges)
                 if is_isomorphic(g, target))


def labeled_copies(name: FamilyName | BipartiteGraph) -> ExtremalCopySet:
    """Every labeled graph on the target's bipartition isomorphic to it."""
    if isinstance(name, BipartiteGraph):
        target, label = name, "graph"
    else:
        name = FamilyName(*name)
        if name.n > 4:
            raise EnumerationTooLarge("labeled copies are enumerated only for n <= 4")
        target, label = construct(name), str(name)
    return ExtremalCopySet(label, _copies_of(target))


@lru_cache(maxsize=None)
def _hypothesis_graphs(tag: str, n: int, orientation: str, eps: float, tol: float) -> tuple[BipartiteGraph, ...]:
    st = setting(tag, n, orientation)
    return tuple(g for g in enumerate_graphs(*st.parts) if meets_threshold(g, st, eps, tol))


def _pool(tag: str, n: int, orientation: str, pool: str, eps: float, tol: float) -> tuple[BipartiteGraph, ...] | None:
    """Explicit graph list for a pool name; None means the full uniform space."""
    if pool == "all":
        return None
    if pool == "copies":
        return _copies_of(setting(tag, n, orientation).extremal)
    if pool == "hypothesis":
        return _hypothesis_graphs(tag, n, orientation, eps, tol)
    raise InvalidParameter(f"unknown pool {pool!r}")


# -- sampling ----------------------------------------------------------------


def _sample_chunk(n_x: int, n_y: int, k: int, seed: int, chunk: int, size: int,
                  pool: Sequence[BipartiteGraph] | None, non_constant: bool = False) -> list[GraphFamily]:
    rng = np.random.default_rng([seed, chunk])
    out = []
    while len(out) < size:
        if pool is None:
            masks = rng.integers(0, 1 << (n_x * n_y), size=k, dtype=np.uint64)
            fam = GraphFamily(BipartiteGraph.from_mask(n_x, n_y, int(m)) for m in masks)
        else:
            idx = rng.integers(0, len(pool), size=k)
            fam = GraphFamily(pool[int(i)] for i in idx)
        if non_constant and fam.is_constant():
            continue
        out.append(fam)
    return out


def _chunk_sizes(count: int) -> list[int]:
    full, rest = divmod(count, SAMPLE_CHUNK)
    return [SAMPLE_CHUNK] * full + ([rest] if rest else [])


def sample_families(n_x: int, n_y: int, k: int, seed: int, count: int,
                    pool: str | FamilyName | BipartiteGraph | Sequence[BipartiteGraph] = "all",
                    non_constant: bool = False) -> Iterator[GraphFamily]:
    """Deterministic stream of ``count`` families of ``k`` graphs on (n_x, n_y).

    ``pool="all"`` draws uniform biadjacency bitmasks; a FamilyName or a
    graph draws uniformly from its labeled copies; a list of graphs draws
    uniformly from that list.
    """
    if count < 1:
        raise InvalidParameter("count must be >= 1")
    if isinstance(pool, str):
        if pool != "all":
            raise InvalidParameter(f"unknown pool {pool!r}")
        graphs = None
    elif isinstance(pool, (FamilyName, BipartiteGraph)):
        graphs = labeled_copies(pool).copies
    elif isinstance(pool, tuple) and len(pool) == 3 and isinstance(pool[0], str):
        graphs = labeled_copies(FamilyName(*pool)).copies
    else:
        graphs = tuple(pool)
    if graphs is not None and any((g.n_x, g.n_y) != (n_x, n_y) for g in graphs):
        raise InvalidParameter("pool graphs do not live on the requested parts")
    for i, size in enumerate(_chunk_sizes(count)):
        yield from _sample_chunk(n_x, n_y, k, seed, i, size, graphs, non_constant)


# -- chunk runner ------------------------------------------------------------


def _run_chunks(fn: Callable[..., VerificationReport], tasks: list[tuple], jobs: int) -> VerificationReport:
    if jobs <= 1 or len(tasks) <= 1:
        parts = [fn(*t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(fn, *zip(*tasks)))
    return reduce(VerificationReport.merge, parts)


# -- family checkers ---------------------------------------------------------
# Each returns (outcome, message) with outcome in
# {"outside", "ok", "exception", "violation"}.


def _check_theorem_family(fam: GraphFamily, st: Setting, eps: float, tol: float,
                          member_ok: dict[BipartiteGraph, bool] | None = None) -> tuple[str, str]:
    for g in fam:
        ok = member_ok.get(g) if member_ok is not None else None
        if ok is None:
            ok = meets_threshold(g, st, eps, tol)
        if not ok:
            return "outside", ""
    w = st.search(fam)
    if w is not None:
        bad = rainbow_violation(fam, w, closed=st.kind == "cycle")
        return ("ok", "") if bad is None else ("violation", f"unsound witness: {bad}")
    if fam.is_constant() and is_isomorphic(fam[0], st.extremal):
        return "exception", ""
    return "violation", f"no rainbow Hamilton {st.kind}"


def _check_copies_family(fam: GraphFamily, st: Setting) -> tuple[str, str]:
    w = st.search(fam)
    if fam.is_constant():
        return ("exception", "") if w is None else ("violation", "constant family has a witness")
    if w is None:
        return "violation", f"non-constant family without rainbow Hamilton {st.kind}"
    bad = rainbow_violation(fam, w, closed=st.kind == "cycle")
    return ("ok", "") if bad is None else ("violation", f"unsound witness: {bad}")


def _has_structure(fam: GraphFamily, kind: str) -> bool:
    if kind == "cycle":
        return find_rainbow_hamilton_cycle(fam) is not None
    return find_rainbow_hamilton_path(fam) is not None


def _check_shift_contrapositive(fam: GraphFamily, kind: str, cache: dict | None = None) -> tuple[str, str]:
    # existence is invariant under reordering the family, so cache by multiset
    def has(f: GraphFamily) -> bool:
        key = tuple(sorted(f.key()))
        if cache is not None and key in cache:
            return cache[key]
        val = _has_structure(f, kind)
        if cache is not None:
            cache[key] = val
        return val

    if has(fam):
        return "outside", ""
    if has(bi_shift_family(fam)):
        return "violation", f"bi-shifted family gains a rainbow Hamilton {kind}"
    return "ok", ""


def _tally(rep: VerificationReport, outcome: str, message: str, case: str) -> None:
    rep.cases_checked += 1
    if outcome == "outside":
        return
    rep.hypothesis_cases += 1
    if outcome == "exception":
        rep.exceptions.append(case)
    elif outcome == "violation":
        rep.violations.append(f"# {message}\n{case}")


def _case_text(violation: str) -> str:
    """Strip the leading ``# message`` line from a recorded violation."""
    return violation.split("\n", 1)[1] if violation.startswith("#") else violation


# -- family-space chunk workers ----------------------------------------------


def _families_for(source: tuple, st_parts: tuple[int, int], k: int,
                  pool: Sequence[BipartiteGraph] | None) -> Iterator[GraphFamily]:
    kind = source[0]
    if kind == "product":
        _, first = source
        graphs = pool if pool is not None else tuple(enumerate_graphs(*st_parts))
        for rest in product(graphs, repeat=k - 1):
            yield GraphFamily((graphs[first],) + rest)
    elif kind == "sample":
        _, seed, chunk, size, non_constant = source
        yield from _sample_chunk(*st_parts, k, seed, chunk, size, pool, non_constant)
    elif kind == "list":
        _, fams = source
        yield from (GraphFamily(BipartiteGraph.from_mask(*st_parts, m) for m in key) for key in fams)
    else:
        raise InvalidParameter(f"bad source {source!r}")


def _family_chunk(target: str, n: int, orientation: str, pool_name: str, source: tuple,
                  eps: float, tol: float, parts: tuple[int, int] | None = None,
                  k: int | None = None) -> VerificationReport:
    rep = VerificationReport(target=target, n=n, mode="")
    if target in ("lem2.3", "lem2.4"):
        kind = "path" if target == "lem2.3" else "cycle"
        cache: dict = {}
        for fam in _families_for(source, parts, k, None):
            outcome, msg = _check_shift_contrapositive(fam, kind, cache)
            _tally(rep, outcome, msg, encode_family(fam) if outcome != "outside" and outcome != "ok" else "")
        return rep
    st = setting(GROUP_OF[target], n, orientation)
    pool = _pool(st.tag, n, orientation, pool_name, eps, tol)
    if target.startswith("thm"):
        space = pool if pool is not None else tuple(enumerate_graphs(*st.parts)) if source[0] == "product" else None
        member_ok = ({g: meets_threshold(g, st, eps, tol) for g in space} if space is not None else {})
        for fam in _families_for(source, st.parts, st.family_size, pool):
            outcome, msg = _check_theorem_family(fam, st, eps, tol, member_ok)
            _tally(rep, outcome, msg, encode_family(fam) if outcome in ("exception", "violation") else "")
    else:
        for fam in _families_for(source, st.parts, st.family_size, pool):
            outcome, msg = _check_copies_family(fam, st)
            if outcome == "exception":
                rep.details["constant_families"] = rep.details.get("constant_families", 0) + 1
            else:
                rep.details["non_constant_families"] = rep.details.get("non_constant_families", 0) + 1
            _tally(rep, outcome, msg, encode_family(fam) if outcome in ("exception", "violation") else "")
    return rep


def _family_space_tasks(target: str, n: int, orientation: str, pool_name: str, pool_len: int,
                        k: int, mode: str, seed: int, count: int, eps: float, tol: float,
                        parts=None, non_constant: bool = False) -> list[tuple]:
    if mode in ("exhaustive", "extremal-only"):
        if pool_len ** k > MAX_FAMILY_SPACE:
            raise EnumerationTooLarge(f"{pool_len}^{k} families exceed the exhaustive bound 2^24")
        return [(target, n, orientation, pool_name, ("product", i), eps, tol, parts, k)
                for i in range(pool_len)]
    if mode == "sample":
        return [(target, n, orientation, pool_name, ("sample", seed, i, size, non_constant), eps, tol, parts, k)
                for i, size in enumerate(_chunk_sizes(count))]
    raise InvalidParameter(f"unknown mode {mode!r}")


def _mode_label(mode: str, seed: int, count: int) -> str:
    return f"sample({seed},{count})" if mode == "sample" else mode


def _finish(rep: VerificationReport, target: str, n: int, mode: str, seed: int, count: int,
            start: float) -> VerificationReport:
    rep.target, rep.n = target, n
    rep.mode = _mode_label(mode, seed, count)
    if mode == "sample":
        rep.seed, rep.count = seed, count
    rep.elapsed = time.perf_counter() - start
    return rep


def _target_name(target: str, tag: str, orientation: str) -> str:
    return f"{target}[{orientation}]" if tag in ORIENTED else target


# -- theorems ----------------------------------------------------------------

THEOREMS = {"1.4": "thm1.4", "1.5": "thm1.5", "1.6": "thm1.6"}


def verify_theorem(theorem: str, n: int, mode: str = "exhaustive", *, seed: int = DEFAULT_SEED,
                   count: int = 100_000, pool: str = "all", orientation: str = "X",
                   jobs: int = 1, eps: float = DEFAULT_EPS, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Check one of the three main theorems on parameter ``n``.

    A family is a hypothesis case when every member meets the threshold;
    it then must admit the rainbow structure, or be constant with member
    isomorphic to the extremal graph (recorded under ``exceptions``).

    mode: ``exhaustive`` over every ordered family of graphs on the parts,
    ``extremal-only`` over families of labeled extremal copies, or ``sample``
    with ``pool`` in {"all", "hypothesis"}.
    """
    target = THEOREMS.get(theorem.removeprefix("thm"), None)
    if target is None:
        raise InvalidParameter(f"unknown theorem {theorem!r}")
    start = time.perf_counter()
    st = setting(GROUP_OF[target], n, orientation)
    if mode == "exhaustive":
        pool_name, pool_len = "all", 1 << (st.parts[0] * st.parts[1])
        if pool_len ** st.family_size > MAX_FAMILY_SPACE:
            raise EnumerationTooLarge(f"{pool_len}^{st.family_size} families exceed 2^24")
    elif mode == "extremal-only":
        pool_name = "copies"
        pool_len = len(_pool(st.tag, n, orientation, "copies", eps, tol))
    elif mode == "sample":
        pool_name = pool
        if pool == "all":
            if st.parts[0] * st.parts[1] > 62:
                raise InvalidParameter("uniform sampling needs n_x*n_y <= 62")
            pool_len = 0
        else:
            pool_len = len(_pool(st.tag, n, orientation, pool, eps, tol))
    else:
        raise InvalidParameter(f"unknown mode {mode!r}")
    tasks = _family_space_tasks(target, n, orientation, pool_name, pool_len, st.family_size,
                                mode, seed, count, eps, tol)
    rep = _run_chunks(_family_chunk, tasks, jobs)
    rep.details["threshold"] = threshold(st.tag, n)
    rep.details["parts"] = list(st.parts)
    if mode == "sample":
        rep.details["pool"] = pool
    if mode == "exhaustive":
        rep.details["hypothesis_graphs"] = len(_hypothesis_graphs(st.tag, n, orientation, eps, tol))
    return _finish(rep, _target_name(target, st.tag, orientation), n, mode, seed, count, start)


# -- graph-space harnesses ---------------------------------------------------


def _graph_chunk(target: str, n: int, orientation: str, lo: int, hi: int,
                 eps: float, tol: float) -> VerificationReport:
    rep = VerificationReport(target=target, n=n, mode="")
    if target == "obs1":
        # parts (n, n); order-dependence of the fixpoint is informational
        rep.details["order_dependent"] = 0
        for g in enumerate_graphs(n, n, lo, hi):
            rep.cases_checked += 1
            rep.hypothesis_cases += 1
            msgs = _obs1_problems(g)
            if msgs:
                rep.violations.append(f"# {'; '.join(msgs)}\n{encode_graph(g)}")
            rev = list(shift_pairs(n, n))[::-1]
            if bi_shift(g, rev) != bi_shift(g):
                rep.details["order_dependent"] += 1
        return rep
    st = setting(GROUP_OF[target], n, orientation)
    t = threshold(st.tag, n)
    single = target.startswith("lem")
    pairs = list(shift_pairs(*st.parts))
    for g in enumerate_graphs(*st.parts, lo, hi):
        images = [(p, shift_xy(g, p)) for p in pairs] if single else [(None, bi_shift(g))]
        for p, s in images:
            rep.cases_checked += 1
            if not is_isomorphic(s, st.extremal):
                continue
            if rho(g, tol) < t - eps:
                continue
            rep.hypothesis_cases += 1
            if not is_isomorphic(g, st.extremal):
                pair = f"pair {p.x} {p.y}\n" if p is not None else ""
                rep.violations.append(f"# rho(G) >= threshold, shifted graph extremal, G not extremal\n"
                                      f"{pair}{encode_graph(g)}")
    return rep


def _obs1_problems(g: BipartiteGraph) -> list[str]:
    msgs = []
    if is_bi_shifted(g) != is_shift_fixpoint(g):
        msgs.append("staircase test disagrees with shift-fixpoint test")
    s = bi_shift(g)
    if not is_bi_shifted(s):
        msgs.append("bi_shift output is not bi-shifted")
    if s.num_edges != g.num_edges:
        msgs.append("bi_shift changed the edge count")
    if bi_shift(s) != s:
        msgs.append("bi_shift is not idempotent")
    return msgs


def _graph_space(target: str, n: int, orientation: str, jobs: int, eps: float, tol: float) -> VerificationReport:
    if target == "obs1":
        parts = (n, n)
    else:
        parts = setting(GROUP_OF[target], n, orientation).parts
    if parts[0] * parts[1] > MAX_ENUM_EDGES:
        raise EnumerationTooLarge("graph space too large")
    total = 1 << (parts[0] * parts[1])
    step = max(1, math.ceil(total / GRAPH_CHUNKS))
    tasks = [(target, n, orientation, lo, min(lo + step, total), eps, tol) for lo in range(0, total, step)]
    return _run_chunks(_graph_chunk, tasks, jobs)


# -- random-property harnesses -----------------------------------------------


def _random_graph(rng: np.random.Generator, n_x: int, n_y: int) -> BipartiteGraph:
    p = rng.uniform(0.15, 0.95)
    return BipartiteGraph.from_biadjacency(rng.random((n_x, n_y)) < p)


def _shift_case(rng: np.random.Generator, max_part: int) -> tuple[BipartiteGraph, ShiftPair]:
    while True:
        n_x, n_y = (int(v) for v in rng.integers(1, max_part + 1, size=2))
        if max(n_x, n_y) >= 2:
            break
    g = _random_graph(rng, n_x, n_y)
    side = [s for s, size in (("X", n_x), ("Y", n_y)) if size >= 2]
    which = side[int(rng.integers(0, len(side)))]
    base, size = (0, n_x) if which == "X" else (n_x, n_y)
    x, y = sorted(int(v) for v in rng.choice(size, size=2, replace=False))
    return g, ShiftPair(base + x, base + y)


def check_shift_case(g: BipartiteGraph, p: ShiftPair, eps: float = DEFAULT_EPS,
                     tol: float = DEFAULT_TOL) -> list[str]:
    """Edge-count, rho-monotonicity and equality-implies-isomorphic checks."""
    s = shift_xy(g, p)
    out = []
    if s.num_edges != g.num_edges:
        out.append("edge count changed")
    r0, r1 = rho(g, tol), rho(s, tol)
    if r1 < r0 - eps:
        out.append(f"rho decreased {r0!r} -> {r1!r}")
    if g.is_connected() and abs(r1 - r0) <= eps and not is_isomorphic(g, s):
        out.append("connected, equal rho, but not isomorphic")
    return out


def _random_chunk(target: str, seed: int, chunk: int, size: int, max_part: int,
                  eps: float, tol: float) -> VerificationReport:
    rng = np.random.default_rng([seed, chunk])
    rep = VerificationReport(target=target, n=max_part, mode="")
    for _ in range(size):
        rep.cases_checked += 1
        if target in ("lem2.1", "lem2.2"):
            g, p = _shift_case(rng, max_part)
            if g.is_connected():
                rep.details["connected"] = rep.details.get("connected", 0) + 1
                s = shift_xy(g, p)
                if s != g and abs(rho(s, tol) - rho(g, tol)) <= eps:
                    # a shift that moves edges yet keeps rho
                    rep.details["rho_ties"] = rep.details.get("rho_ties", 0) + 1
            rep.hypothesis_cases += 1
            msgs = check_shift_case(g, p, eps, tol)
            if msgs:
                rep.violations.append(f"# {'; '.join(msgs)}\npair {p.x} {p.y}\n{encode_graph(g)}")
        elif target == "lem2.5":
            n_x, n_y = (int(v) for v in rng.integers(1, max_part + 1, size=2))
            g = _random_graph(rng, n_x, n_y)
            rep.hypothesis_cases += 1
            r, bound, holds = nosal_check(g, eps)
            if not holds:
                rep.violations.append(f"# rho {r!r} > sqrt|E| {bound!r}\n{encode_graph(g)}")
        elif target == "lem2.9":
            n_x, n_y = (int(v) for v in rng.integers(1, max_part + 1, size=2))
            k = int(rng.integers(1, n_x + n_y + 1))
            fam = GraphFamily(_random_graph(rng, n_x, n_y) for _ in range(k))
            rep.hypothesis_cases += 1
            msgs = check_longest_path(fam)
            if msgs:
                rep.violations.append(f"# {'; '.join(msgs)}\n{encode_family(fam)}")
        else:
            raise InvalidParameter(f"no random harness for {target!r}")
    return rep


def check_longest_path(fam: GraphFamily) -> list[str]:
    w = longest_rainbow_path(fam)
    out = []
    bad = rainbow_violation(fam, w, closed=False, spanning=False)
    if bad:
        out.append(f"invalid longest path: {bad}")
    ext = extension_witness(fam, w)
    if ext is not None:
        out.append(f"path extends at endpoint {ext[0]} via graph {ext[1]} to {ext[2]}")
    return out


# -- lemma dispatcher --------------------------------------------------------

LEMMAS = ("2.1", "2.2", "2.3", "2.4", "2.5", "2.8", "2.9", "3.1", "3.2", "4.1", "4.2",
          "5.1", "5.2", "obs1", "cor3.1", "cor4.1", "cor5.1")

RANDOM_DEFAULTS = {"lem2.1": (10_000, 6), "lem2.2": (10_000, 6), "lem2.5": (10_000, 7), "lem2.9": (1_000, 4)}


def _lemma_target(lemma: str) -> str:
    lemma = lemma.removeprefix("lem")
    if lemma not in LEMMAS:
        raise InvalidParameter(f"unknown lemma id {lemma!r}")
    return lemma if lemma.startswith(("obs", "cor")) else f"lem{lemma}"


def verify_lemma(lemma: str, n: int, mode: str = "exhaustive", *, seed: int = DEFAULT_SEED,
                 count: int | None = None, orientation: str = "X", max_part: int | None = None,
                 jobs: int = 1, eps: float = DEFAULT_EPS, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Run the harness for one lemma, observation or corollary.

    ``n`` is the size parameter of the statement.  For the random property
    suites (2.1, 2.2, 2.5, 2.9) it bounds the part sizes instead; ``n <= 0``
    selects the suite's default bound.
    """
    target = _lemma_target(lemma)
    start = time.perf_counter()
    if target == "lem2.8":
        rep = lemma_2_8_suite(n)
        return _finish(rep, target, n, "exhaustive", seed, 0, start)
    if target in RANDOM_DEFAULTS:
        default_count, default_part = RANDOM_DEFAULTS[target]
        count = default_count if count is None else count
        if max_part is None:
            max_part = n if n > 0 else default_part
        n = max_part
        tasks = [(target, seed, i, size, max_part, eps, tol) for i, size in enumerate(_chunk_sizes(count))]
        rep = _run_chunks(_random_chunk, tasks, jobs)
        rep.details["max_part"] = max_part
        return _finish(rep, target, n, "sample", seed, count, start)
    count = 100_000 if count is None else count
    if target in ("lem2.3", "lem2.4"):
        kind_size = n + n - 1 if target == "lem2.3" else n + n
        parts = (n, n)
        pool_len = 1 << (n * n)
        if mode not in ("exhaustive", "sample"):
            raise InvalidParameter(f"{target} supports exhaustive or sample mode")
        tasks = _family_space_tasks(target, n, "-", "all", pool_len, kind_size, mode, seed, count,
                                    eps, tol, parts)
        rep = _run_chunks(_family_chunk, tasks, jobs)
        return _finish(rep, target, n, mode, seed, count, start)
    if target == "obs1" or target.startswith("cor") or target in ("lem3.1", "lem4.1", "lem5.1"):
        if mode != "exhaustive":
            raise InvalidParameter(f"{target} runs exhaustively over the graph space")
        rep = _graph_space(target, n, orientation, jobs, eps, tol)
        name = target if target == "obs1" else _target_name(target, GROUP_OF[target], orientation)
        return _finish(rep, name, n, mode, seed, count, start)
    # lem3.2 / lem4.2 / lem5.2: families of labeled extremal copies
    st = setting(GROUP_OF[target], n, orientation)
    copies = _pool(st.tag, n, orientation, "copies", eps, tol)
    if mode == "extremal-only":
        mode = "exhaustive"
    if mode == "exhaustive":
        tasks = _family_space_tasks(target, n, orientation, "copies", len(copies), st.family_size,
                                    mode, seed, count, eps, tol)
        rep = _run_chunks(_family_chunk, tasks, jobs)
    elif mode == "sample":
        tasks = _family_space_tasks(target, n, orientation, "copies", len(copies), st.family_size,
                                    mode, seed, count, eps, tol, non_constant=True)
        consts = [tuple(g.mask for _ in range(st.family_size)) for g in copies]
        tasks.append((target, n, orientation, "copies", ("list", consts), eps, tol, None, None))
        rep = _run_chunks(_family_chunk, tasks, jobs)
    else:
        raise InvalidParameter(f"unknown mode {mode!r}")
    rep.details["copies"] = len(copies)
    return _finish(rep, _target_name(target, st.tag, orientation), n, mode, seed, count, start)


def verify_target(target: str, n: int, mode: str = "exhaustive", **kw) -> VerificationReport:
    """Dispatch ``thm1.4``/``lem3.2``/``cor3.1``/``obs1``... to the right harness."""
    if target.startswith("thm"):
        kw.pop("max_part", None)
        return verify_theorem(target, n, mode, **kw)
    kw.pop("pool", None)
    return verify_lemma(target, n, mode, **kw)


# -- replay ------------------------------------------------------------------


def replay_violation(target: str, n: int, violation: str, *, orientation: str = "X",
                     eps: float = DEFAULT_EPS, tol: float = DEFAULT_TOL) -> bool:
    """Re-run one recorded violation on its own; True if it fails again."""
    base = target.split("[")[0]
    if "[" in target:
        orientation = target.split("[")[1].rstrip("]")
    text = _case_text(violation)
    pair = None
    if text.startswith("pair "):
        first, text = text.split("\n", 1)
        _, x, y = first.split()
        pair = ShiftPair(int(x), int(y))
    if base.startswith("thm"):
        st = setting(GROUP_OF[base], n, orientation)
        return _check_theorem_family(decode_family(text), st, eps, tol)[0] == "violation"
    if base in ("lem3.2", "lem4.2", "lem5.2"):
        st = setting(GROUP_OF[base], n, orientation)
        return _check_copies_family(decode_family(text), st)[0] == "violation"
    if base in ("lem2.3", "lem2.4"):
        kind = "path" if base == "lem2.3" else "cycle"
        return _check_shift_contrapositive(decode_family(text), kind)[0] == "violation"
    if base in ("lem2.1", "lem2.2"):
        return bool(check_shift_case(decode_graph(text), pair, eps, tol))
    if base == "lem2.5":
        return not nosal_check(decode_graph(text), eps)[2]
    if base == "lem2.9":
        return bool(check_longest_path(decode_family(text)))
    if base == "obs1":
        return bool(_obs1_problems(decode_graph(text)))
    if base in GROUP_OF:
        st = setting(GROUP_OF[base], n, orientation)
        g = decode_graph(text)
        s = shift_xy(g, pair) if pair is not None else bi_shift(g)
        return (is_isomorphic(s, st.extremal) and rho(g, tol) >= threshold(st.tag, n) - eps
                and not is_isomorphic(g, st.extremal))
    raise InvalidParameter(f"cannot replay target {target!r}")
