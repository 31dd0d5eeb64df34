"""Acceptance gate: one test per criterion, each printing a pass/fail line."""
import math
import time

import numpy as np
import pytest

from rbh.bigraph import FamilyName, construct, enumerate_graphs, is_isomorphic
from rbh.rainbow import decode_family
from rbh.spectral import charpoly_T, rho
from rbh.verify import verify_lemma, verify_target, verify_theorem


@pytest.fixture
def gate(capsys):
    def record(number, title, ok, elapsed, limit, detail=""):
        ok = bool(ok) and elapsed < limit
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {title} ({elapsed:.2f}s < {limit:g}s) {detail}"
        with capsys.disabled():
            print("\n" + line.rstrip())
        assert ok, line
    return record


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_criterion_01_path_theorem_n2(gate):
    rep, t = timed(lambda: verify_theorem("1.4", 2, jobs=1))
    q = construct(FamilyName("Q", 0, 2))
    fams = [decode_family(e) for e in rep.exceptions]
    ok = (rep.cases_checked == 4096 and not rep.violations and len(fams) == 4
          and all(f.is_constant() and is_isomorphic(f[0], q) for f in fams)
          and len({f[0] for f in fams}) == 4
          and rep.details["threshold"] == pytest.approx(math.sqrt(2)))
    gate(1, "path theorem, balanced, n=2 exhaustive", ok, t, 30,
         f"cases={rep.cases_checked} hyp={rep.hypothesis_cases} exceptions={len(fams)}")


def test_criterion_02_nearly_balanced_theorem_n2(gate):
    reps, t = timed(lambda: [verify_theorem("1.5", 2, orientation=o, jobs=1) for o in ("X", "Y")])
    ok = all(r.cases_checked == 16 and r.passed and r.details["threshold"] == 1.0 for r in reps)
    ok = ok and reps[0].details["parts"] == [2, 1]
    gate(2, "path theorem, nearly balanced, n=2 exhaustive", ok, t, 1,
         " ".join(f"{r.target}:cases={r.cases_checked}" for r in reps))


def test_criterion_03_cycle_theorem_n2(gate):
    rep, t = timed(lambda: verify_theorem("1.6", 2, jobs=1))
    b = construct(FamilyName("B", 1, 2))
    fams = [decode_family(e) for e in rep.exceptions]
    ok = (rep.cases_checked == 65536 and not rep.violations and len(fams) == 4
          and all(f.is_constant() and is_isomorphic(f[0], b) for f in fams)
          and abs(rep.details["threshold"] - 1.6180339887) < 1e-9)
    gate(3, "cycle theorem, n=2 exhaustive", ok, t, 300,
         f"cases={rep.cases_checked} hyp={rep.hypothesis_cases} exceptions={len(fams)}")


def test_criterion_04_q_copies_n3(gate):
    rep, t = timed(lambda: verify_lemma("3.2", 3, jobs=1))
    ok = (rep.cases_checked == 7776 and rep.passed and rep.details["non_constant_families"] == 7770
          and rep.details["constant_families"] == 6 and len(rep.exceptions) == 6)
    gate(4, "Q^0_3 labeled-copy families", ok, t, 120, f"cases={rep.cases_checked}")


def test_criterion_05_t_copies_n3_both_orientations(gate):
    reps, t = timed(lambda: [verify_lemma("4.2", 3, orientation=o, jobs=1) for o in ("X", "Y")])
    ok = all(r.passed and r.cases_checked == 81 and r.details["constant_families"] == 3 for r in reps)
    ok = ok and [r.target for r in reps] == ["lem4.2[X]", "lem4.2[Y]"]
    gate(5, "T^0_3 labeled-copy families, both orientations", ok, t, 60,
         " ".join(f"{r.target}:{r.verdict}" for r in reps))


def test_criterion_06_b_copies_n3_sampled(gate):
    rep, t = timed(lambda: verify_lemma("5.2", 3, mode="sample", seed=20250101, count=100_000))
    ok = (rep.passed and rep.details["non_constant_families"] == 100_000
          and rep.details["constant_families"] == 18 and len(rep.exceptions) == 18)
    gate(6, "B^1_3 labeled-copy families, 1e5 seeded sample + 18 constant", ok, t, 600,
         f"cases={rep.cases_checked}")


def test_criterion_07_threshold_inequalities(gate):
    rep, t = timed(lambda: verify_lemma("2.8", 50))
    ok = rep.passed and rep.details["min_margin"] > 1e-9
    ok = ok and all(charpoly_T(n, n - 1) == (n - 1) * (n - 2) for n in range(4, 51))
    gate(7, "strict inequalities for Q/T/B^k_n, 4<=n<=50", ok, t, 60,
         f"checks={rep.cases_checked} min_margin={rep.details['min_margin']:.3e}")


def test_criterion_08_corollaries(gate):
    def run():
        return [verify_target("cor3.1", 3, jobs=1), verify_target("cor4.1", 3, orientation="X", jobs=1),
                verify_target("cor4.1", 3, orientation="Y", jobs=1)]
    small, t_small = timed(run)
    big, t_big = timed(lambda: verify_target("cor5.1", 4, jobs=1))
    ok = all(r.passed for r in small) and small[0].cases_checked == 512
    gate(8, "shift-to-extremal corollaries, n=3", ok, t_small, 120,
         " ".join(f"{r.target}:hyp={r.hypothesis_cases}" for r in small))
    gate(8, "shift-to-extremal corollary for B^1_4 on (4,4)", big.passed and big.cases_checked == 65536,
         t_big, 600, f"hyp={big.hypothesis_cases}")


def test_criterion_09_shift_properties(gate):
    reps, t = timed(lambda: [verify_lemma(l, 6, seed=20250101, count=10_000) for l in ("2.1", "2.2")])
    ok = all(r.passed and r.cases_checked == 10_000 for r in reps)
    gate(9, "shift preserves |E|, never lowers rho, ties imply isomorphic", ok, t, 120,
         f"connected={reps[0].details['connected']} ties={reps[0].details['rho_ties']}")


def test_criterion_10_shift_contrapositive(gate):
    reps, t = timed(lambda: [verify_lemma("2.3", 2, jobs=1), verify_lemma("2.4", 2, jobs=1)])
    ok = (reps[0].passed and reps[0].cases_checked == 16 ** 3
          and reps[1].passed and reps[1].cases_checked == 16 ** 4)
    gate(10, "bi-shifting never creates rainbow Hamilton structure, (2,2)", ok, t, 600,
         " ".join(f"{r.target}:no-structure={r.hypothesis_cases}" for r in reps))


def test_criterion_11_spectral_oracle(gate):
    def run():
        worst = 0.0
        for g in enumerate_graphs(3, 3):
            dense = float(np.max(np.abs(np.linalg.eigvalsh(g.adjacency_matrix().astype(float)))))
            worst = max(worst, abs(rho(g) - dense))
        nosal = verify_lemma("2.5", 7, seed=20250101, count=10_000)
        return worst, nosal
    (worst, nosal), t = timed(run)
    gate(11, "power iteration vs dense eigensolve on all (3,3) graphs; sqrt|E| bound", worst <= 1e-8 and nosal.passed,
         t, 60, f"max_err={worst:.1e} nosal_cases={nosal.cases_checked}")


EXHAUSTIVE = [
    ("thm1.4", 2, {}), ("thm1.5", 2, {"orientation": "X"}), ("thm1.5", 2, {"orientation": "Y"}), ("thm1.6", 2, {}),
    ("lem3.2", 3, {}), ("lem4.2", 3, {"orientation": "X"}), ("lem4.2", 3, {"orientation": "Y"}), ("lem5.2", 2, {}),
    ("lem3.1", 3, {}), ("lem4.1", 3, {}), ("lem5.1", 3, {}),
    ("cor3.1", 3, {}), ("cor4.1", 3, {}), ("cor5.1", 3, {}), ("cor5.1", 4, {}),
    ("obs1", 3, {}), ("lem2.3", 2, {}), ("lem2.4", 2, {}), ("lem2.8", 20, {}),
]

SAMPLED = [
    ("thm1.4", 3, {"mode": "sample", "count": 2000, "pool": "hypothesis"}),
    ("thm1.6", 3, {"mode": "sample", "count": 2000}),
    ("lem5.2", 3, {"mode": "sample", "count": 3000}),
    ("lem2.1", 5, {"count": 2000}), ("lem2.5", 6, {"count": 2000}), ("lem2.9", 4, {"count": 500}),
]


def test_criterion_12_determinism(gate):
    def run():
        bad = []
        for target, n, kw in EXHAUSTIVE:
            texts = {verify_target(target, n, jobs=j, **kw).to_json(include_elapsed=False) for j in (1, 2, 8)}
            if len(texts) != 1:
                bad.append(target)
        for target, n, kw in SAMPLED:
            runs = [verify_target(target, n, seed=99, jobs=j, **kw).to_json(include_elapsed=False) for j in (1, 1, 2)]
            other = verify_target(target, n, seed=100, jobs=1, **kw).to_json(include_elapsed=False)
            if len(set(runs)) != 1 or other == runs[0]:
                bad.append(target + "/sample")
        return bad
    bad, t = timed(run)
    gate(12, "reports identical across 1/2/8 workers and reproducible from seed", not bad, t, 900,
         f"harnesses={len(EXHAUSTIVE) + len(SAMPLED)} mismatched={bad}")
