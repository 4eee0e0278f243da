"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are collected and printed in pytest's terminal summary under
"acceptance criteria"; ``python3 tests/test_acceptance.py`` runs this file alone.
"""
import random
import sys
import time
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

if __name__ == "__main__":
    # hand over to pytest before anything else imports its plugins
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, K4_EDGES, brute_bases, common_bases, cost  # noqa: E402
from matroid_pricing import (ExplicitMatroid, FreeMatroid, GraphicMatroid,  # noqa: E402
                             LaminarMatroid, PartitionMatroid, TransversalMatroid,
                             UniformMatroid, add_parallel, bipartite_edge_weights,
                             build_exchange_digraph, check_split, contract, delete,
                             direct_sum, dm_merge_two, dual, matching_selections,
                             max_weight_common_basis_split, partition_into_bases,
                             price_conjecture2_partition, price_conjecture2_sbo,
                             price_rank_valuations, price_weighted, sbo_bijection,
                             shortest_dicycle, union, verify_conjecture0, verify_conjecture2,
                             verify_conjecture3)
from matroid_pricing.errors import PricingError  # noqa: E402
from matroid_pricing.generate import (gen_bipartite, gen_instance,  # noqa: E402
                                      gen_merge_instance, load_matroids)
from matroid_pricing.gross_substitutes import (ValuationTable, argmax_set,  # noqa: E402
                                               check_mnat_exc, intersection_split, price_gs,
                                               reflect, verify_gs_prices)
from matroid_pricing.matroid import MaximizerMatroid  # noqa: E402
from matroid_pricing.verify import remark_counterexample_check  # noqa: E402


def _report(number, title, ok, detail=""):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
    if detail:
        line += f"  ({detail})"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok


def _partition_runs():
    for seed in range(200):
        n = 1 + seed % 12
        m1, m2 = load_matroids(gen_instance("partition-vs-any", n, seed))
        start = time.perf_counter()
        try:
            r = price_conjecture2_partition(m1, m2)
            err = None
        except PricingError as exc:
            r, err = None, exc
        yield seed, m1, m2, r, err, time.perf_counter() - start


def test_criterion_01_partition_pipeline():
    bad, slowest, kinds = [], 0.0, set()
    for seed, m1, m2, r, err, dt in _partition_runs():
        kinds.add(m2.descriptor()["type"])
        slowest = max(slowest, dt)
        if err is not None:
            bad.append((seed, repr(err)))
            continue
        rep = verify_conjecture2(m1, m2, r.prices)
        if not (rep.passed and rep.flags["argmin_singleton"] and rep.flags["argmax_singleton"]) or dt >= 1:
            bad.append(seed)
    ok = not bad and kinds <= {"uniform", "graphic", "laminar", "transversal"}
    _report(1, "partition pipeline, 200 instances, singleton extremes, < 1 s each", ok,
            f"failures={bad[:5]} slowest={slowest * 1000:.1f} ms second matroids={sorted(kinds)}")
    assert ok


def test_criterion_02_digraph_acyclic():
    cyclic = []
    for seed, m1, m2, r, err, _ in _partition_runs():
        if err is not None:
            cyclic.append((seed, repr(err)))
            continue
        D = build_exchange_digraph(m1, m2, r.B1, r.B2)
        if shortest_dicycle(D) is not None:
            cyclic.append(seed)
    ok = not cyclic
    _report(2, "exchange digraph acyclic on every partition run", ok, f"exceptions={len(cyclic)}")
    assert ok


def test_criterion_03_sbo_pipeline():
    bad, max_iter = [], 0
    for seed in range(200):
        n = 1 + seed % 12
        m1, m2 = load_matroids(gen_instance("sbo-pair", n, seed))
        try:
            r = price_conjecture2_sbo(m1, m2)
        except PricingError as exc:
            bad.append((seed, repr(exc)))
            continue
        ov = r.overlaps
        max_iter = max(max_iter, r.iterations)
        if not (verify_conjecture2(m1, m2, r.prices).passed and r.iterations <= n
                and all(a > b for a, b in zip(ov, ov[1:]))):
            bad.append(seed)
    ok = not bad
    _report(3, "SBO pipeline, 200 instances, iterations <= n, overlap strictly decreasing", ok,
            f"failures={bad[:5]} max iterations={max_iter}")
    assert ok


def test_criterion_04_merge():
    bad = []
    for seed in range(100):
        n = 2 + seed % 11
        m1, m2, X = gen_merge_instance(n, seed)
        I = partition_into_bases(m1, X, 2)
        J = partition_into_bases(m2, X, 2)
        Z1, Z2 = dm_merge_two(m1, m2, X, I, J, sbo_bijection(m1, *I), sbo_bijection(m2, *J))
        common = common_bases(m1, m2)
        if not (Z1 in common and Z2 in common and not Z1 & Z2 and Z1 | Z2 == X):
            bad.append(seed)
    ok = not bad
    _report(4, "merge of two partitions, 100 instances, disjoint common bases", ok, f"failures={bad[:5]}")
    assert ok


def test_criterion_05_weight_split():
    bad = []
    for seed in range(100):
        n = 1 + seed % 10
        kind = ("partition-vs-any", "sbo-pair")[seed % 2]
        m1, m2 = load_matroids(gen_instance(kind, n, seed))
        rng = random.Random(f"split:{seed}")
        w = [rng.randint(-10, 10) for _ in range(n)]
        s = max_weight_common_basis_split(m1, m2, w)
        F1, F2, cb = brute_bases(m1), brute_bases(m2), common_bases(m1, m2)
        best = max(cost(w, B) for B in cb)
        lhs = {B for B in cb if cost(w, B) == best}
        top1 = max(cost(s.w1, B) for B in F1)
        top2 = max(cost(s.w2, B) for B in F2)
        rhs = {B for B in F1 if cost(s.w1, B) == top1} & {B for B in F2 if cost(s.w2, B) == top2}
        integral = all(isinstance(x, int) for x in s.w1 + s.w2)
        if not (integral and [a + b for a, b in zip(s.w1, s.w2)] == w
                and check_split(m1, m2, s) and lhs == rhs):
            bad.append(seed)
    ok = not bad
    _report(5, "weight split, 100 instances, integral, exact sum, argmax law", ok, f"failures={bad[:5]}")
    assert ok


def test_criterion_06_weighted_pipeline():
    bad = []
    for seed in range(100):
        n = 1 + seed % 10
        inst = gen_instance("weighted", n, seed)
        m1, m2 = load_matroids(inst)
        w1 = [Fraction(x) for x in inst["weights1"]]
        w2 = [Fraction(x) for x in inst["weights2"]]
        r = price_weighted(m1, w1, m2, w2)
        rep = verify_conjecture3(m1, w1, m2, w2, r.prices)
        if not (rep.passed and r.epsilon * sum(abs(x) for x in r.p_hat) < Fraction(1, 2)):
            bad.append(seed)
    ok = not bad
    _report(6, "weighted pipeline, 100 instances, welfare check and epsilon bound", ok, f"failures={bad[:5]}")
    assert ok


def test_criterion_07_rank_valuations():
    bad, picks = [], 0
    for seed in range(100):
        n = 1 + seed % 10
        m1, m2 = load_matroids(gen_instance("rank-valuation", n, seed))
        r = price_rank_valuations(m1, m2)
        rep = verify_conjecture0(m1, m2, r.prices)
        picks += rep.flags["first_picks"]
        if not rep.passed:
            bad.append(seed)
    ok = not bad
    _report(7, "rank valuations, 100 instances, both orders, all maximizers", ok,
            f"failures={bad[:5]} first picks scanned={picks}")
    assert ok


def test_criterion_08_remark():
    ok = remark_counterexample_check() is True
    _report(8, "four-element non-matroid family admits no prices", ok, "24 orderings")
    assert ok


def test_criterion_09_gross_substitutes():
    bad, methods = [], set()
    for seed in range(50):
        n = 1 + seed % 6
        inst = gen_instance("gs-table", n, seed)
        v1, v2 = [ValuationTable.from_json(d) for d in inst["valuations"]]
        if check_mnat_exc(v1) is not True or check_mnat_exc(v2) is not True:
            bad.append((seed, "exchange"))
            continue
        v2s = reflect(v2)
        cert = intersection_split(v1, v2s)
        sums = [a + b for a, b in zip(v1.values, v2s.values)]
        full = max(sums)
        top = frozenset(x for x, s in enumerate(sums) if s == full)
        if cert.optimum != full or cert.maximizers != top or \
                cert.maximizers != argmax_set(v1, cert.q, -1) & argmax_set(v2s, cert.q, +1):
            bad.append((seed, "certificate"))
            continue
        res = price_gs(v1, v2)
        methods.add(res.method.split("/")[0])
        rep = verify_gs_prices(v1, v2, res.prices)
        if not rep.passed:
            bad.append((seed, "prices"))
    ok = not bad
    _report(9, "gross substitutes, 50 pairs with n <= 6, exact split and verified prices", ok,
            f"failures={bad[:5]} routes={sorted(methods)}")
    assert ok


def _perfect(size, edges, chosen):
    return chosen is not None and len(chosen) == size \
        and len({edges[i][0] for i in chosen}) == size == len({edges[i][1] for i in chosen})


def test_criterion_10_bipartite():
    graphs = [("C4", 2, [[0, 0], [0, 1], [1, 1], [1, 0]]),
              ("K33", 3, [[u, v] for u in range(3) for v in range(3)])]
    for seed in range(50):
        g = gen_bipartite(2 + seed % 7, seed % 13, seed)
        graphs.append((f"random-{seed}", g["U"], g["edges"]))
    bad = []
    for name, size, edges in graphs:
        w = bipartite_edge_weights(size, size, edges)
        light, heavy = matching_selections(size, size, edges, w)
        if not (_perfect(size, edges, light) and _perfect(size, edges, heavy)):
            bad.append(name)
    ok = not bad
    _report(10, "bipartite edge weights, C4, K33 and 50 random graphs", ok, f"failures={bad[:5]}")
    assert ok


def _independence_table(m):
    return [m.is_independent([e for e in range(m.n) if mask >> e & 1]) for mask in range(1 << m.n)]


def _axioms_exhaustive(m) -> bool:
    ind = _independence_table(m)
    if not ind[0]:
        return False
    # hereditary: checking single-element removals suffices by induction
    for mask, good in enumerate(ind):
        if good and any(not ind[mask & ~(1 << e)] for e in range(m.n) if mask >> e & 1):
            return False
    # augmentation: pairs of sizes k and k + 1 suffice once heredity holds
    by_size = {}
    for mask, good in enumerate(ind):
        if good:
            by_size.setdefault(bin(mask).count("1"), []).append(mask)
    for k, small in by_size.items():
        for Y in by_size.get(k + 1, ()):
            for X in small:
                extra = Y & ~X
                if not any(ind[X | (1 << e)] for e in range(m.n) if extra >> e & 1):
                    return False
    return True


def _dual_involution(m) -> bool:
    full = (1 << m.n) - 1
    ind, back = _independence_table(m), _independence_table(dual(dual(m)))
    r = max(bin(x).count("1") for x, good in enumerate(ind) if good)
    bases = {x for x, good in enumerate(ind) if good and bin(x).count("1") == r}
    d = dual(m)
    dual_bases = {x for x in range(1 << m.n) if d.is_basis([e for e in range(m.n) if x >> e & 1])}
    return ind == back and dual_bases == {full ^ B for B in bases}


K5_EDGES = [list(e) for e in combinations(range(5), 2)]
AXIOM_SUITE = {
    "free": lambda: FreeMatroid(6),
    "uniform": lambda: UniformMatroid(10, 4),
    "partition": lambda: PartitionMatroid([[0, 3, 7], [1, 2], [4, 5, 6, 8, 9]], [2, 1, 3]),
    "laminar": lambda: LaminarMatroid(10, [(range(10), 5), (range(6), 3), ([0, 1, 2], 1), ([6, 7], 1)]),
    "transversal": lambda: TransversalMatroid(9, [[0, 1, 2], [2, 3, 4], [4, 5, 6], [6, 7, 8], [8, 0]]),
    "graphic": lambda: GraphicMatroid(5, K5_EDGES),
    "bases": lambda: ExplicitMatroid(4, [[0, 1], [0, 2], [1, 2], [0, 3], [1, 3]]),
    "dual": lambda: dual(GraphicMatroid(5, K5_EDGES)),
    "delete": lambda: delete(GraphicMatroid(5, K5_EDGES), [0, 7]),
    "contract": lambda: contract(GraphicMatroid(5, K5_EDGES), [0, 9]),
    "parallel": lambda: add_parallel(GraphicMatroid(4, K4_EDGES), [0, 2, 5]),
    "direct_sum": lambda: direct_sum(UniformMatroid(5, 2), GraphicMatroid(4, K4_EDGES[:5])),
    "union": lambda: union(PartitionMatroid([[0, 1, 2], [3, 4], [5, 6, 7]], [1, 1, 1]),
                           UniformMatroid(8, 2)),
    "maximizer": lambda: MaximizerMatroid(GraphicMatroid(5, K5_EDGES), [3, 1, 1, 2, 0, 2, 3, 1, 0, 2]),
}


def test_criterion_11_axiom_suite():
    bad = []
    for name, make in AXIOM_SUITE.items():
        m = make()
        assert m.n <= 10
        if not (_axioms_exhaustive(m) and _dual_involution(m)):
            bad.append(name)
    ok = not bad
    _report(11, "independence axioms and dual involution for every construction, n <= 10", ok,
            f"constructions={len(AXIOM_SUITE)} failures={bad}")
    assert ok
