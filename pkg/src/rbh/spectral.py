"""Spectral radius of bipartite graphs, thresholds and quotient matrices.

The engine never iterates on the adjacency matrix itself: a bipartite
spectrum is symmetric about zero, so plain power iteration on A would
oscillate between the +rho and -rho eigenvectors.  Instead each connected
component runs power iteration on the Gram matrix N N^T of its
biadjacency block, whose dominant eigenvalue is rho^2.
"""
from __future__ import annotations

import enum
import math
import threading
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .bigraph import BipartiteGraph, FamilyName, construct
from .errors import ConvergenceFailure, InvalidParameter, InvalidPartition
from .report import VerificationReport

DEFAULT_TOL = 1e-12
DEFAULT_EPS = 1e-9
MAX_ITER = 1_000_000


@dataclass(frozen=True)
class SpectralEstimate:
    value: float
    tolerance: float
    iterations: int
    residual: float = 0.0

    def __float__(self) -> float:
        return self.value


def _component_radius(block: np.ndarray, tol: float) -> tuple[float, int, float]:
    """Largest singular value of a connected biadjacency block.

    Returns (sigma, iterations, residual), where residual is the inf-norm of
    A v - sigma v for the unit adjacency eigenvector v assembled from the
    iterate.  With x a unit vector on the smaller side, v = (x, N^T x/sigma)/sqrt(2)
    and the residual collapses to |N N^T x - sigma^2 x|_inf / (sigma sqrt 2).
    """
    if block.shape[0] > block.shape[1]:
        block = block.T
    p = block.shape[0]
    if p == 1 or block.shape[1] == 1:
        return math.sqrt(block.sum()), 0, 0.0
    gram = block @ block.T
    x = np.full(p, 1.0 / math.sqrt(p))
    residual = math.inf
    for it in range(1, MAX_ITER + 1):
        y = gram @ x
        lam = float(x @ y)
        sigma = math.sqrt(lam)
        residual = float(np.max(np.abs(y - lam * x))) / (sigma * math.sqrt(2.0))
        if residual <= tol:
            return sigma, it, residual
        x = y / np.linalg.norm(y)
    raise ConvergenceFailure(f"power iteration did not converge in {MAX_ITER} steps", residual)


def spectral_radius(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> SpectralEstimate:
    if tol <= 0:
        raise InvalidParameter("tol must be positive")
    return _spectral_radius_cached(g, tol)


@lru_cache(maxsize=1 << 16)
def _spectral_radius_cached(g: BipartiteGraph, tol: float) -> SpectralEstimate:
    if g.num_edges == 0:
        return SpectralEstimate(0.0, tol, 0, 0.0)
    bi = g.biadjacency.astype(float)
    best, iters, res = 0.0, 0, 0.0
    for xs, ys in g.components():
        if not xs or not ys:
            continue
        sigma, it, r = _component_radius(bi[np.ix_(xs, ys)], tol)
        iters += it
        if sigma > best:
            best, res = sigma, r
    return SpectralEstimate(best, tol, iters, res)


def rho(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> float:
    return spectral_radius(g, tol).value


def nosal_check(g: BipartiteGraph, tol: float = DEFAULT_EPS) -> tuple[float, float, bool]:
    """(rho, sqrt(|E|), rho <= sqrt(|E|) + tol)."""
    r = rho(g)
    bound = math.sqrt(g.num_edges)
    return r, bound, r <= bound + tol


# -- thresholds --------------------------------------------------------------

THRESHOLD_GRAPHS = {
    "Q0": lambda n: FamilyName("Q", 0, n),
    "T0": lambda n: FamilyName("T", 0, n),
    "B1": lambda n: FamilyName("B", 1, n),
}

_b1_cache: dict[int, float] = {}
_b1_lock = threading.Lock()


def threshold(tag: str, n: int) -> float:
    """rho of the extremal graph: sqrt(n(n-1)) for Q0, n-1 for T0, numeric for B1."""
    if tag not in THRESHOLD_GRAPHS:
        raise InvalidParameter(f"unknown threshold tag {tag!r}")
    if n < 2:
        raise InvalidParameter("threshold needs n >= 2")
    if tag == "Q0":
        return math.sqrt(n * (n - 1))
    if tag == "T0":
        return float(n - 1)
    with _b1_lock:
        if n not in _b1_cache:
            _b1_cache[n] = spectral_radius(construct(FamilyName("B", 1, n)), 1e-12).value
        return _b1_cache[n]


class Comparison(enum.Enum):
    BELOW = "Below"
    AT_TIE = "AtTie"
    ABOVE = "Above"


def compare_to_threshold(
    g: BipartiteGraph, tag: str, n: int, eps: float = DEFAULT_EPS, tol: float = DEFAULT_TOL
) -> Comparison:
    if eps <= 0:
        raise InvalidParameter("eps must be positive")
    r = rho(g, tol)
    t = threshold(tag, n)
    if r > t + eps:
        return Comparison.ABOVE
    if r < t - eps:
        return Comparison.BELOW
    return Comparison.AT_TIE


# -- quotient matrices -------------------------------------------------------


@dataclass(frozen=True)
class QuotientMatrix:
    order: int
    entries: np.ndarray
    equitable: bool
    partition: tuple[tuple[int, ...], ...]

    @property
    def spectral_radius(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvals(self.entries))))


def quotient_matrix(g: BipartiteGraph, partition: Sequence[Sequence[int]]) -> QuotientMatrix:
    """Average neighbor counts between classes, with an exact equitability check."""
    classes = tuple(tuple(sorted(c)) for c in partition)
    seen = [c for cls in classes for c in cls]
    if any(len(c) == 0 for c in classes):
        raise InvalidPartition("empty class")
    if sorted(seen) != list(range(g.n)):
        raise InvalidPartition("classes must be disjoint and cover every vertex label")
    nbrs = g.neighbor_masks()
    class_masks = [sum(1 << v for v in cls) for cls in classes]
    m = len(classes)
    entries = np.zeros((m, m))
    equitable = True
    for i, cls in enumerate(classes):
        for j, cm in enumerate(class_masks):
            counts = [(nbrs[v] & cm).bit_count() for v in cls]
            entries[i, j] = sum(counts) / len(counts)
            if len(set(counts)) > 1:
                equitable = False
    return QuotientMatrix(m, entries, equitable, classes)


def charpoly_T(n: int, x):
    """x^4 - (n-1)^2 x^2 + (n-1)(n-2); exact for integer x."""
    return x**4 - (n - 1) ** 2 * x**2 + (n - 1) * (n - 2)


def charpoly_T_largest_root(n: int) -> float:
    """Largest real root of charpoly_T, via the quadratic in x^2."""
    a = (n - 1) ** 2
    c = (n - 1) * (n - 2)
    return math.sqrt((a + math.sqrt(a * a - 4 * c)) / 2)


def t_tail_partition(n: int) -> list[list[int]]:
    """The 4-class equitable partition of T^{n-2}_n = K_{n-2,1} ⊔ empty(1, n-1)."""
    n_x = n - 1
    return [list(range(n - 2)), [n - 2], [n_x], list(range(n_x + 1, 2 * n - 1))]


def lemma_2_8_suite(n_max: int, n_min: int = 4, margin: float = DEFAULT_EPS, tol: float = DEFAULT_TOL):
    """Check the strict threshold inequalities for Q^k_n, T^k_n and B^k_n.

    For every n in [n_min, n_max]:
      rho(Q^k_n) < sqrt(n(n-1)) and rho(T^k_n) < n-1 for 1 <= k <= n-2,
      rho(B^k_n) < rho(B^1_n) for 2 <= k <= n-2,
    each by more than ``margin``.  Along the way it checks the closed forms
    for Q^0_n and T^0_n, the edge-count bounds sqrt(|E|) the inequalities
    are routed through, and that rho(T^{n-2}_n) is the largest root of
    charpoly_T (with P(n-1) = (n-1)(n-2) in exact integer arithmetic).
    """
    if n_max < 4 or n_min < 4:
        raise InvalidParameter("the threshold inequality suite needs n >= 4")
    start = time.perf_counter()
    rep = VerificationReport(target="lem2.8", n=n_max, mode="exhaustive")
    worst = math.inf

    def check(ok: bool, what: str, gap: float | None = None):
        nonlocal worst
        rep.cases_checked += 1
        rep.hypothesis_cases += 1
        if gap is not None:
            worst = min(worst, gap)
        if not ok:
            rep.violations.append(what)

    for n in range(n_min, n_max + 1):
        q0 = math.sqrt(n * (n - 1))
        r_q0 = rho(construct(FamilyName("Q", 0, n)), tol)
        r_t0 = rho(construct(FamilyName("T", 0, n)), tol)
        b1_graph = construct(FamilyName("B", 1, n))
        r_b1 = rho(b1_graph, tol)
        check(abs(r_q0 - q0) <= margin, f"n={n}: rho(Q^0_n)={r_q0!r} != sqrt(n(n-1))")
        check(abs(r_t0 - (n - 1)) <= margin, f"n={n}: rho(T^0_n)={r_t0!r} != n-1")
        check(r_b1 >= q0 - margin, f"n={n}: rho(B^1_n)={r_b1!r} < rho(Q^0_n)")
        for k in range(1, n - 1):
            g = construct(FamilyName("Q", k, n))
            r = rho(g, tol)
            bound = math.sqrt(n * k + (n - k) * (n - k - 1))
            check(g.num_edges == n * k + (n - k) * (n - k - 1), f"Q^{k}_{n}: edge count")
            check(r <= bound + margin, f"Q^{k}_{n}: rho={r!r} exceeds sqrt|E|={bound!r}")
            check(q0 - r > margin, f"Q^{k}_{n}: rho={r!r} not < {q0!r}", q0 - r)
        for k in range(1, n - 1):
            g = construct(FamilyName("T", k, n))
            r = rho(g, tol)
            check(g.num_edges == n * k + (n - k - 1) ** 2, f"T^{k}_{n}: edge count")
            if k <= n - 3:
                bound = math.sqrt(n * k + (n - k - 1) ** 2)
                check(r <= bound + margin, f"T^{k}_{n}: rho={r!r} exceeds sqrt|E|={bound!r}")
            check((n - 1) - r > margin, f"T^{k}_{n}: rho={r!r} not < {n - 1}", (n - 1) - r)
        for k in range(2, n - 1):
            g = construct(FamilyName("B", k, n))
            r = rho(g, tol)
            bound = math.sqrt(n * k + (n - k) ** 2)
            check(g.num_edges == n * k + (n - k) ** 2, f"B^{k}_{n}: edge count")
            check(r <= bound + margin, f"B^{k}_{n}: rho={r!r} exceeds sqrt|E|={bound!r}")
            check(r_b1 - r > margin, f"B^{k}_{n}: rho={r!r} not < rho(B^1_n)={r_b1!r}", r_b1 - r)
        # tail case k = n-2 of T through its equitable quotient
        tail = construct(FamilyName("T", n - 2, n))
        r_tail = rho(tail, tol)
        root = charpoly_T_largest_root(n)
        check(abs(r_tail - root) <= margin, f"T^{n - 2}_{n}: rho={r_tail!r} vs quartic root {root!r}")
        check(charpoly_T(n, n - 1) == (n - 1) * (n - 2), f"n={n}: P(n-1) != (n-1)(n-2)")
        qm = quotient_matrix(tail, t_tail_partition(n))
        expected = np.array([[0, 0, 1, n - 1], [0, 0, 1, 0], [n - 2, 1, 0, 0], [n - 2, 0, 0, 0]], dtype=float)
        check(qm.equitable and np.array_equal(qm.entries, expected), f"T^{n - 2}_{n}: quotient matrix mismatch")
        check(abs(qm.spectral_radius - r_tail) <= margin, f"T^{n - 2}_{n}: quotient rho {qm.spectral_radius!r} != {r_tail!r}")

    rep.details["min_margin"] = worst
    rep.details["n_min"] = n_min
    rep.elapsed = time.perf_counter() - start
    return rep
