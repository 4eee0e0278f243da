"""Matroid intersection, weight splitting, and matroid partition."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GroundMismatch, Infeasible, InternalInvariantBroken, NoCommonBasis
from .matroid import Matroid, MaximizerMatroid

__all__ = [
    "WeightSplit", "max_common_independent", "common_basis", "max_weight_basis",
    "max_weight_common_basis_split", "min_overlap_common_basis",
    "partition_into_independent", "partition_into_bases", "union_is_basis",
    "restrict_to_max_weight_bases", "check_split",
]


def _same_ground(m1: Matroid, m2: Matroid) -> int:
    if m1.n != m2.n:
        raise GroundMismatch(f"ground sizes differ: {m1.n} vs {m2.n}")
    return m1.n


def _augmenting_path(m1, m2, I: set) -> list[int] | None:
    """Shortest source-to-sink path in the exchange graph of ``I``.

    BFS from all sources in ascending order, neighbours in ascending order.
    """
    n = m1.n
    inside = sorted(I)
    outside = [y for y in range(n) if y not in I]
    sources = [y for y in outside if m1.is_independent(I | {y})]
    sinks = {y for y in outside if m2.is_independent(I | {y})}
    parent: dict[int, int | None] = {}
    queue = deque()
    for y in sources:
        parent[y] = None
        queue.append(y)
    while queue:
        v = queue.popleft()
        if v in sinks:
            path = [v]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        if v in I:
            # x -> y when I - x + y is independent in m1
            nxt = (y for y in outside if y not in parent and m1.is_independent((I - {v}) | {y}))
        else:
            # y -> x when I - x + y is independent in m2
            nxt = (x for x in inside if x not in parent and m2.is_independent((I - {x}) | {v}))
        for w in nxt:
            parent[w] = v
            queue.append(w)
    return None


def max_common_independent(m1: Matroid, m2: Matroid) -> frozenset:
    """Maximum-cardinality common independent set via augmenting paths."""
    _same_ground(m1, m2)
    I: set[int] = set()
    while (path := _augmenting_path(m1, m2, I)) is not None:
        I.symmetric_difference_update(path)
    return frozenset(I)


def common_basis(m1: Matroid, m2: Matroid) -> frozenset:
    """A common basis, or :class:`NoCommonBasis` with the max common independent set."""
    I = max_common_independent(m1, m2)
    if len(I) != m1.full_rank or len(I) != m2.full_rank:
        raise NoCommonBasis(I)
    return I


def max_weight_basis(m: Matroid, w: Sequence) -> frozenset:
    """Greedy maximum-weight basis; ties broken by ascending index."""
    order = sorted(range(m.n), key=lambda e: (-w[e], e))
    return m._greedy(order, frozenset())


@dataclass(frozen=True)
class WeightSplit:
    w1: tuple
    w2: tuple
    optimum: frozenset

    def value(self, w=None) -> Fraction:
        w = w if w is not None else [a + b for a, b in zip(self.w1, self.w2)]
        return sum((w[e] for e in self.optimum), Fraction(0))


def _exchange_arcs(m1, m2, B):
    inside = sorted(B)
    outside = [y for y in range(m1.n) if y not in B]
    arcs1 = [(x, y) for x in inside for y in outside if m1.is_independent((B - {x}) | {y})]
    arcs2 = [(y, x) for x in inside for y in outside if m2.is_independent((B - {x}) | {y})]
    return arcs1, arcs2


def _weighted_augment(m1, m2, I: frozenset, w) -> list[int] | None:
    """Minimum-length (then fewest arcs) source-sink path; vertex lengths
    are w on I and -w off I. Bellman-Ford, since lengths can be negative."""
    n = m1.n
    outside = [y for y in range(n) if y not in I]
    sources = [y for y in outside if m1.is_independent(I | {y})]
    sinks = [y for y in outside if m2.is_independent(I | {y})]
    if not sources or not sinks:
        return None
    arcs1, arcs2 = _exchange_arcs(m1, m2, I)
    arcs = sorted(arcs1 + arcs2)
    length = {v: (w[v] if v in I else -w[v]) for v in range(n)}
    dist: dict[int, tuple] = {y: (length[y], 0) for y in sources}
    pred: dict[int, int | None] = {y: None for y in sources}
    for _ in range(n + 1):
        changed = False
        for u, v in arcs:
            if u not in dist:
                continue
            cand = (dist[u][0] + length[v], dist[u][1] + 1)
            if v not in dist or cand < dist[v]:
                dist[v] = cand
                pred[v] = u
                changed = True
        if not changed:
            break
    else:
        raise InternalInvariantBroken("negative cycle in weighted exchange graph")
    reached = [t for t in sinks if t in dist]
    if not reached:
        return None
    t = min(reached, key=lambda s: (dist[s], s))
    path = [t]
    while pred[path[-1]] is not None:
        path.append(pred[path[-1]])
        if len(path) > n:
            raise InternalInvariantBroken("predecessor loop in weighted exchange graph")
    return path[::-1]


def _max_weight_common_basis(m1, m2, w) -> frozenset:
    I = frozenset()
    while (path := _weighted_augment(m1, m2, I, w)) is not None:
        I = I.symmetric_difference(path)
    if len(I) != m1.full_rank or len(I) != m2.full_rank:
        raise NoCommonBasis(I)
    return I


def _split_potentials(m1, m2, B, w) -> list:
    """Potentials pi with pi(y) <= pi(x) on m1-arcs x->y and
    pi(x) <= pi(y) + w(x) - w(y) on m2-arcs y->x."""
    arcs1, arcs2 = _exchange_arcs(m1, m2, B)
    edges = [(x, y, 0) for x, y in arcs1] + [(y, x, w[x] - w[y]) for y, x in arcs2]
    pi = [0] * m1.n
    for _ in range(m1.n + 1):
        changed = False
        for u, v, c in edges:
            if pi[u] + c < pi[v]:
                pi[v] = pi[u] + c
                changed = True
        if not changed:
            return pi
    raise InternalInvariantBroken("common basis is not weight-optimal (negative cycle)")


def max_weight_common_basis_split(m1: Matroid, m2: Matroid, w: Sequence) -> WeightSplit:
    """Maximum ``w``-weight common basis together with a weight split.

    Returns ``w = w1 + w2`` such that the optimum is a ``w1``-maximum basis
    of ``m1`` and a ``w2``-maximum basis of ``m2``; integral ``w`` gives an
    integral split.
    """
    _same_ground(m1, m2)
    w = list(w)
    if len(w) != m1.n:
        raise ValueError("weight vector length differs from ground size")
    B = _max_weight_common_basis(m1, m2, w)
    pi = _split_potentials(m1, m2, B, w)
    w1 = tuple(pi)
    w2 = tuple(a - b for a, b in zip(w, pi))
    return WeightSplit(w1, w2, B)


def check_split(m1: Matroid, m2: Matroid, split: WeightSplit) -> bool:
    """Greedy certificate: the optimum attains both separate maxima."""
    b1 = max_weight_basis(m1, split.w1)
    b2 = max_weight_basis(m2, split.w2)
    opt = split.optimum
    return (m1.is_basis(opt) and m2.is_basis(opt)
            and sum(split.w1[e] for e in b1) == sum(split.w1[e] for e in opt)
            and sum(split.w2[e] for e in b2) == sum(split.w2[e] for e in opt))


def min_overlap_common_basis(m1: Matroid, m2: Matroid, anchor: Iterable[int]) -> frozenset:
    """Common basis minimizing the overlap with ``anchor``."""
    anchor = frozenset(anchor)
    w = [-1 if e in anchor else 0 for e in range(m1.n)]
    return _max_weight_common_basis(m1, m2, w)


def partition_into_independent(matroids: Sequence[Matroid], X: Iterable[int]) -> list[frozenset]:
    """Split ``X`` into parts with part ``i`` independent in ``matroids[i]``.

    Edmonds' matroid partition: each new element is inserted along a
    shortest exchange path. On failure raises :class:`Infeasible` whose
    witness T has more elements than the sum of the parts' ranks of T.
    """
    k = len(matroids)
    X = sorted(frozenset(X))
    parts: list[set] = [set() for _ in range(k)]
    owner: dict[int, int] = {}
    for s in X:
        parent: dict[int, tuple | None] = {s: None}
        queue = deque([s])
        found = None
        while queue and found is None:
            e = queue.popleft()
            for i in range(k):
                if owner.get(e) == i:
                    continue
                if matroids[i].is_independent(parts[i] | {e}):
                    found = (e, i)
                    break
                for y in sorted(parts[i]):
                    if y not in parent and matroids[i].is_independent((parts[i] - {y}) | {e}):
                        parent[y] = (e, i)
                        queue.append(y)
        if found is None:
            raise Infeasible(parent.keys())
        moves = [found]
        e = found[0]
        while parent[e] is not None:
            moves.append(parent[e])
            e = parent[e][0]
        for el, i in moves:
            if el in owner:
                parts[owner[el]].discard(el)
        for el, i in moves:
            parts[i].add(el)
            owner[el] = i
    return [frozenset(p) for p in parts]


def partition_into_bases(m: Matroid, X: Iterable[int], k: int) -> list[frozenset]:
    """Partition ``X`` into ``k`` disjoint bases of ``m`` restricted to ``X``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    X = m.check_set(X)
    r = m.rank(X)
    if len(X) != k * r:
        raise Infeasible(X, f"|X| = {len(X)} but k * r(X) = {k * r}")
    parts = partition_into_independent([m] * k, X)
    return sorted(parts, key=sorted)


def union_is_basis(m: Matroid, X0: Iterable[int]) -> bool:
    """Whether ``X0`` is the disjoint union of two bases of ``m``."""
    X0 = m.check_set(X0)
    if len(X0) != 2 * m.full_rank:
        return False
    try:
        partition_into_bases(m, X0, 2)
    except Infeasible:
        return False
    return True


def restrict_to_max_weight_bases(m: Matroid, q: Sequence) -> MaximizerMatroid:
    return MaximizerMatroid(m, q)
