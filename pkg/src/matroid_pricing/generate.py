"""Seeded random instances, each built backwards from a planted basis.

Every generator returns a plain dict in the instance-file layout, so the
output can be dumped straight to JSON.
"""
from __future__ import annotations

import random
from typing import Sequence

from .matroid import (GraphicMatroid, LaminarMatroid, Matroid, PartitionMatroid,
                      TransversalMatroid, UniformMatroid, build_matroid)

__all__ = ["KINDS", "gen_instance", "random_matroid_with_bases", "random_laminar",
           "random_special_partition", "gen_merge_instance", "gen_bipartite", "load_matroids"]

KINDS = ("partition-vs-any", "sbo-pair", "weighted", "rank-valuation", "gs-table")
MATROID_KINDS = ("uniform", "graphic", "laminar", "transversal", "partition")


def random_special_partition(rng: random.Random, n: int) -> tuple[PartitionMatroid, frozenset]:
    """Classes of size 1 or 2 with bound 1, plus one planted basis."""
    elems = list(range(n))
    rng.shuffle(elems)
    classes, i = [], 0
    while i < n:
        size = 2 if i + 1 < n and rng.random() < 0.7 else 1
        classes.append(sorted(elems[i:i + size]))
        i += size
    classes.sort()
    basis = frozenset(rng.choice(c) for c in classes)
    return PartitionMatroid(classes, [1] * len(classes)), basis


def random_laminar(rng: random.Random, elements: Sequence[int], depth: int = 3) -> list[frozenset]:
    """Random nested blocks of a shuffled element list (the top block excluded)."""
    out = []

    def split(block, level):
        if level == 0 or len(block) < 2:
            return
        cuts = sorted(rng.sample(range(1, len(block)), min(len(block) - 1, rng.randint(1, 2))))
        for a, b in zip([0] + cuts, cuts + [len(block)]):
            part = block[a:b]
            if rng.random() < 0.6:
                out.append(frozenset(part))
            split(part, level - 1)

    items = list(elements)
    rng.shuffle(items)
    split(items, depth)
    return sorted(set(out), key=lambda s: (len(s), sorted(s)))


def _partition_for(rng, n, bases):
    # classes must meet every planted basis in the same number of elements
    r = len(bases[0])
    cols = [sorted(B) for B in bases]
    for c in cols:
        rng.shuffle(c)
    tuples = [frozenset(c[i] for c in cols) for i in range(r)]
    rng.shuffle(tuples)
    groups, i = [], 0
    while i < r:
        size = rng.randint(1, 2)
        groups.append(set().union(*tuples[i:i + size]))
        i += size
    bounds = [len(g & bases[0]) for g in groups]
    covered = set().union(*groups) if groups else set()
    rest = [e for e in range(n) if e not in covered]
    for e in rest:
        if groups and rng.random() < 0.7:
            groups[rng.randrange(len(groups))].add(e)
        else:
            groups.append({e})
            bounds.append(0)
    order = sorted(range(len(groups)), key=lambda j: min(groups[j]))
    return PartitionMatroid([sorted(groups[j]) for j in order], [bounds[j] for j in order])


def random_matroid_with_bases(rng: random.Random, n: int, bases: Sequence[frozenset],
                              kind: str) -> Matroid:
    """A random matroid of the given kind in which every planted set is a basis.

    Graphic, transversal, and partition matroids accept one planted basis
    (partition also several with equal class intersections); uniform and
    laminar accept any number of equal-size sets.
    """
    bases = [frozenset(B) for B in bases]
    r = len(bases[0])
    if kind == "uniform":
        return UniformMatroid(n, r)
    if kind == "laminar":
        family = random_laminar(rng, range(n))
        sets = []
        for A in family:
            need = max(len(A & B) for B in bases)
            sets.append((sorted(A), min(len(A), need + rng.randint(0, 1))))
        sets.append((list(range(n)), r))
        return LaminarMatroid(n, sets)
    if kind == "partition":
        return _partition_for(rng, n, bases)
    (B,) = bases[:1]
    if kind == "transversal":
        sets = []
        for b in sorted(B):
            extra = rng.sample(range(n), rng.randint(0, min(3, n)))
            sets.append(sorted({b, *extra}))
        rng.shuffle(sets)
        return TransversalMatroid(n, sets)
    if kind == "graphic":
        # spanning tree on r + 1 vertices from B, other edges anywhere
        verts = r + 1
        tree_edges = []
        for v in range(1, verts):
            tree_edges.append((rng.randrange(v), v))
        edges = [None] * n
        for e, t in zip(sorted(B), tree_edges):
            edges[e] = list(t)
        for e in range(n):
            if edges[e] is None:
                u, v = rng.randrange(verts), rng.randrange(verts)
                edges[e] = [u, v]
        return GraphicMatroid(verts, edges)
    raise ValueError(f"unknown matroid kind {kind!r}")


SBO_KINDS = ("uniform", "laminar", "partition", "transversal")


def _supported_pair(rng, n, disjoint):
    """Either a special partition matroid against any kind, or two matroids
    from families with serial bijections. With ``disjoint`` the planted
    bases are complementary; otherwise they are unrelated."""
    if rng.random() < 0.5:
        m1, B1 = random_special_partition(rng, n)
        kinds = MATROID_KINDS
    else:
        B1 = frozenset(rng.sample(range(n), rng.randint(0, n)))
        m1 = random_matroid_with_bases(rng, n, [B1], rng.choice(SBO_KINDS))
        kinds = SBO_KINDS
    if disjoint:
        B2 = frozenset(range(n)) - B1
    else:
        B2 = frozenset(rng.sample(range(n), rng.randint(0, n)))
    return m1, random_matroid_with_bases(rng, n, [B2], rng.choice(kinds))


def _weights(rng, n, bound=10):
    return [str(rng.randint(-bound, bound)) for _ in range(n)]


def _base(kind, n, seed, m1, m2):
    return {"kind": kind, "seed": seed, "ground_set": n,
            "matroid1": m1.descriptor(), "matroid2": m2.descriptor()}


def gen_instance(kind: str, n: int, seed: int) -> dict:
    """Reproducible instance satisfying the hypothesis of ``kind``."""
    if kind not in KINDS:
        raise ValueError(f"unknown instance kind {kind!r}; expected one of {', '.join(KINDS)}")
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(f"{kind}:{n}:{seed}")
    if kind == "partition-vs-any":
        m1, B = random_special_partition(rng, n)
        m2 = random_matroid_with_bases(rng, n, [B], rng.choice(MATROID_KINDS[:4]))
        return _base(kind, n, seed, m1, m2)
    if kind == "sbo-pair":
        r = rng.randint(1, n)
        B = frozenset(rng.sample(range(n), r))
        m1 = random_matroid_with_bases(rng, n, [B], rng.choice(("partition", "laminar")))
        m2 = random_matroid_with_bases(rng, n, [B], rng.choice(("partition", "laminar")))
        return _base(kind, n, seed, m1, m2)
    if kind == "weighted":
        m1, m2 = _supported_pair(rng, n, disjoint=True)
        out = _base(kind, n, seed, m1, m2)
        out["weights1"] = _weights(rng, n)
        out["weights2"] = _weights(rng, n)
        return out
    if kind == "rank-valuation":
        return _base(kind, n, seed, *_supported_pair(rng, n, disjoint=False))
    # gs-table: weighted matroid rank valuations with non-negative weights
    from .gross_substitutes import weighted_rank_valuation
    ms, vals = [], []
    for _ in range(2):
        B = frozenset(rng.sample(range(n), rng.randint(0, n)))
        m = random_matroid_with_bases(rng, n, [B], rng.choice(MATROID_KINDS))
        w = [rng.randint(0, 10) for _ in range(n)]
        ms.append(m)
        vals.append(weighted_rank_valuation(m, w).to_json())
    out = _base(kind, n, seed, *ms)
    out["valuations"] = vals
    return out


def gen_merge_instance(n: int, seed: int):
    """Two matroids sharing two disjoint planted common bases.

    Returns ``(m1, m2, X)`` with X the union of the planted pair.
    """
    rng = random.Random(f"merge:{n}:{seed}")
    r = rng.randint(1, n // 2)
    elems = rng.sample(range(n), 2 * r)
    C1, C2 = frozenset(elems[:r]), frozenset(elems[r:])
    m1 = random_matroid_with_bases(rng, n, [C1, C2], rng.choice(("partition", "laminar", "uniform")))
    m2 = random_matroid_with_bases(rng, n, [C1, C2], rng.choice(("partition", "laminar", "uniform")))
    return m1, m2, C1 | C2


def gen_bipartite(size: int, extra: int, seed: int) -> dict:
    """Bipartite graph on size + size vertices with a planted perfect matching."""
    rng = random.Random(f"bipartite:{size}:{extra}:{seed}")
    perm = list(range(size))
    rng.shuffle(perm)
    edges = {(u, perm[u]) for u in range(size)}
    for _ in range(extra):
        edges.add((rng.randrange(size), rng.randrange(size)))
    edges = sorted(edges)
    rng.shuffle(edges)
    return {"U": size, "V": size, "edges": [list(e) for e in edges]}


def load_matroids(instance: dict) -> tuple[Matroid, Matroid]:
    return build_matroid(instance["matroid1"]), build_matroid(instance["matroid2"])
