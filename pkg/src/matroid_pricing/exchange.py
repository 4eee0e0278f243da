"""Exchange digraphs between two common bases and topological pricing."""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .algorithms import union_is_basis
from .errors import CyclicInput, NotCommonBases, NotUnionBasis
from .matroid import Matroid, ParallelExtension

__all__ = ["ExchangeDigraph", "build_exchange_digraph", "build_union_exchange_digraph",
           "shortest_dicycle", "assign_prices"]


@dataclass
class ExchangeDigraph:
    """Bipartite digraph on (B1 & B2) | (S - (B1 | B2)).

    Arcs left->right record exchanges in the first matroid, arcs
    right->left exchanges in the second.
    """
    left: tuple
    right: tuple
    edges: frozenset
    kind: str
    B1: frozenset
    B2: frozenset
    X0: frozenset | None = None
    _succ: dict = field(default=None, repr=False, compare=False)

    @property
    def vertices(self) -> tuple:
        return tuple(sorted(self.left + self.right))

    def successors(self, v: int) -> list[int]:
        if self._succ is None:
            succ = {u: [] for u in self.vertices}
            for u, w in sorted(self.edges):
                succ[u].append(w)
            self._succ = succ
        return self._succ[v]

    def issubgraph(self, other: "ExchangeDigraph") -> bool:
        return set(self.vertices) == set(other.vertices) and self.edges <= other.edges


def _sides(n, B1, B2):
    left = tuple(sorted(B1 & B2))
    right = tuple(sorted(set(range(n)) - B1 - B2))
    return left, right


def build_exchange_digraph(m1: Matroid, m2: Matroid, B1: Iterable[int],
                           B2: Iterable[int]) -> ExchangeDigraph:
    """Arc (x, y) iff B1 - x + y is a basis of m1; arc (y, x) iff
    B2 - x + y is a basis of m2; x in B1 & B2, y outside B1 | B2."""
    B1, B2 = m1.check_set(B1), m1.check_set(B2)
    for B in (B1, B2):
        if not (m1.is_basis(B) and m2.is_basis(B)):
            raise NotCommonBases(f"{sorted(B)} is not a common basis")
    left, right = _sides(m1.n, B1, B2)
    edges = set()
    for x in left:
        for y in right:
            if m1.is_independent((B1 - {x}) | {y}):
                edges.add((x, y))
            if m2.is_independent((B2 - {x}) | {y}):
                edges.add((y, x))
    return ExchangeDigraph(left, right, frozenset(edges), "D", B1, B2)


def build_union_exchange_digraph(m1plus: ParallelExtension, m2plus: ParallelExtension,
                                 X0: Iterable[int], B1: Iterable[int],
                                 B2: Iterable[int]) -> ExchangeDigraph:
    """Same vertices as D; arcs decided by membership of X0 - x + y in the
    two-fold unions of the parallel extensions."""
    X0 = frozenset(X0)
    B1, B2 = frozenset(B1), frozenset(B2)
    for mp in (m1plus, m2plus):
        if not union_is_basis(mp, X0):
            raise NotUnionBasis(f"{sorted(X0)} is not a basis of the two-fold union")
    left, right = _sides(m1plus.inner.n, B1, B2)
    edges = set()
    for x in left:
        for y in right:
            Y = (X0 - {x}) | {y}
            if union_is_basis(m1plus, Y):
                edges.add((x, y))
            if union_is_basis(m2plus, Y):
                edges.add((y, x))
    return ExchangeDigraph(left, right, frozenset(edges), "Dplus", B1, B2, X0)


def shortest_dicycle(G: ExchangeDigraph) -> list[int] | None:
    """A directed cycle with the fewest vertices, or ``None`` if acyclic.

    BFS from each start vertex in ascending order; a strictly shorter
    cycle replaces the incumbent, so ties go to the smallest start.
    """
    best = None
    for s in G.vertices:
        parent = {s: None}
        queue = deque([s])
        found = None
        while queue and found is None:
            u = queue.popleft()
            for w in G.successors(u):
                if w == s:
                    found = u
                    break
                if w not in parent:
                    parent[w] = u
                    queue.append(w)
        if found is None:
            continue
        cycle = [found]
        while parent[cycle[-1]] is not None:
            cycle.append(parent[cycle[-1]])
        cycle.reverse()
        if best is None or len(cycle) < len(best):
            best = cycle
    return best


def assign_prices(G: ExchangeDigraph, B1: Iterable[int], B2: Iterable[int], n: int) -> list[Fraction]:
    """0 on B1 - B2, n + 1 on B2 - B1, and 1, 2, ... along a topological
    order of G (smallest index first among available vertices)."""
    B1, B2 = frozenset(B1), frozenset(B2)
    indeg = {v: 0 for v in G.vertices}
    for _, w in G.edges:
        indeg[w] += 1
    heap = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in G.successors(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != len(indeg):
        raise CyclicInput(shortest_dicycle(G))
    p = [Fraction(0)] * n
    for e in B2 - B1:
        p[e] = Fraction(n + 1)
    for value, v in enumerate(order, start=1):
        p[v] = Fraction(value)
    return p
