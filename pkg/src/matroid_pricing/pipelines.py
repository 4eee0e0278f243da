"""End-to-end pricing for two buyers with matroid valuations.

The core problem: given matroids M1, M2 with a common basis, find prices
p such that every p-cheapest basis of M1 is a basis of M2 and every
p-dearest basis of M2 is a basis of M1 (the "common-basis form").
Everything else reduces to it:

* disjoint spanning bases (buyer 2 takes the complement): run the core
  problem on (M1, dual M2);
* matroid rank valuations: delete/contract down to a disjoint spanning
  pair, solve, rescale into (0, 1);
* weighted bases: split w1 - w2 across (M1, dual M2), restrict both to
  their maximum-weight bases, solve, add a small multiple of the result.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algorithms import (common_basis, max_common_independent,
                         max_weight_common_basis_split, min_overlap_common_basis,
                         partition_into_bases)
from .errors import (InternalInvariantBroken, NoCommonBasis, NoDisjointSpanningPair,
                     NoPerfectMatching, NotSupported, PreconditionViolated, Unresolved)
from .exchange import (assign_prices, build_exchange_digraph,
                       build_union_exchange_digraph, shortest_dicycle)
from .matroid import Matroid, MaximizerMatroid, ParallelExtension, PartitionMatroid, as_special_partition
from .sbo import dm_merge_two, is_sbo_family, sbo_bijection

__all__ = [
    "PricingResult", "price_conjecture2", "price_conjecture2_partition",
    "price_conjecture2_sbo", "price_conjecture1", "max_union_bases",
    "price_rank_valuations", "price_weighted", "bipartite_edge_weights",
    "matching_selections", "METHODS",
]

METHODS = ("auto", "partition", "sbo")


@dataclass
class PricingResult:
    """Prices plus the bases the algorithm certifies.

    ``B1``/``B2`` are the unique cheapest basis of buyer 1 and the unique
    best basis of buyer 2 under the returned prices (in the matroids the
    pipeline was called with).
    """
    prices: list
    mode: str
    B1: frozenset
    B2: frozenset
    iterations: int = 1
    overlaps: list = field(default_factory=list)
    q1: tuple | None = None
    q2: tuple | None = None
    delta: Fraction | None = None
    epsilon: Fraction | None = None
    p_hat: list | None = None
    scale: int | None = None

    def to_json(self) -> dict:
        out = {
            "prices": [str(x) for x in self.prices],
            "mode": self.mode,
            "bases": {"B1": sorted(self.B1), "B2": sorted(self.B2)},
            "iterations": self.iterations,
        }
        if self.overlaps:
            out["overlaps"] = list(self.overlaps)
        if self.q1 is not None:
            out.update({
                "q1": [str(x) for x in self.q1],
                "q2": [str(x) for x in self.q2],
                "delta": str(self.delta),
                "epsilon": str(self.epsilon),
                "p_hat": [str(x) for x in self.p_hat],
                "scale": self.scale,
            })
        return out


# -- core problem: common-basis form ----------------------------------------

def price_conjecture2_partition(m1: Matroid, m2: Matroid) -> PricingResult:
    """Prices for M1 a partition matroid with classes of size <= 2 and bound 1.

    B1 is the first common basis found, B2 a common basis with minimum
    overlap; the exchange digraph between them is then acyclic.
    """
    if m1.n != m2.n:
        raise PreconditionViolated("matroids live on different ground sets")
    if as_special_partition(m1) is None:
        raise PreconditionViolated("M1 is not a partition matroid with classes of size <= 2 and bound 1")
    B1 = common_basis(m1, m2)
    B2 = min_overlap_common_basis(m1, m2, B1)
    D = build_exchange_digraph(m1, m2, B1, B2)
    cycle = shortest_dicycle(D)
    if cycle is not None:
        raise InternalInvariantBroken(f"exchange digraph has cycle {cycle} for a minimum-overlap pair")
    p = assign_prices(D, B1, B2, m1.n)
    return PricingResult(p, "partition", B1, B2, 1, [len(B1 & B2)])


def _swap_roles(result: PricingResult, n: int) -> PricingResult:
    # (M2, M1, p') solved  =>  (M1, M2, n + 1 - p') solved with bases swapped
    result.prices = [Fraction(n + 1) - x for x in result.prices]
    result.B1, result.B2 = result.B2, result.B1
    return result


def price_conjecture2_sbo(m1: Matroid, m2: Matroid) -> PricingResult:
    """Prices for two strongly base orderable matroids.

    Start from B1 = B2 = a common basis. While the exchange digraph of the
    two-fold unions of the parallel extensions has a cycle, flip a
    shortest one, split the result into two common bases of the
    extensions, and project back: the overlap of B1 and B2 drops each time.
    """
    if m1.n != m2.n:
        raise PreconditionViolated("matroids live on different ground sets")
    n = m1.n
    B1 = common_basis(m1, m2)
    B2 = B1
    m1p = ParallelExtension(m1, range(n))
    m2p = ParallelExtension(m2, range(n))
    overlaps = [len(B1 & B2)]
    iterations = 0
    while True:
        iterations += 1
        if iterations > max(n, 1):
            raise InternalInvariantBroken("improvement loop exceeded |S| iterations")
        X0 = B1 | B2 | {m1p.copy_of(x) for x in B1 & B2}
        Dplus = build_union_exchange_digraph(m1p, m2p, X0, B1, B2)
        cycle = shortest_dicycle(Dplus)
        if cycle is None:
            D = build_exchange_digraph(m1, m2, B1, B2)
            if not D.issubgraph(Dplus):
                raise InternalInvariantBroken("D is not a subgraph of D+")
            p = assign_prices(D, B1, B2, n)
            return PricingResult(p, "sbo", B1, B2, iterations, overlaps)
        Xnew = X0.symmetric_difference(cycle)
        I = partition_into_bases(m1p, Xnew, 2)
        J = partition_into_bases(m2p, Xnew, 2)
        f1 = sbo_bijection(m1p, I[0], I[1])
        f2 = sbo_bijection(m2p, J[0], J[1])
        Z1, Z2 = dm_merge_two(m1p, m2p, Xnew, I, J, f1, f2)
        new1, new2 = m1p.project(Z1), m1p.project(Z2)
        if len(new1 & new2) >= len(B1 & B2):
            raise InternalInvariantBroken("overlap failed to decrease")
        B1, B2 = new1, new2
        overlaps.append(len(B1 & B2))


def _price_general(m1, m2) -> PricingResult:
    B1 = common_basis(m1, m2)
    B2 = min_overlap_common_basis(m1, m2, B1)
    D = build_exchange_digraph(m1, m2, B1, B2)
    cycle = shortest_dicycle(D)
    if cycle is not None:
        raise Unresolved({"cycle": cycle, "B1": sorted(B1), "B2": sorted(B2),
                          "edges": sorted(D.edges)})
    p = assign_prices(D, B1, B2, m1.n)
    return PricingResult(p, "general", B1, B2, 1, [len(B1 & B2)])


def price_conjecture2(m1: Matroid, m2: Matroid, method: str = "auto") -> PricingResult:
    """Dispatch the common-basis-form problem.

    ``auto`` tries the partition algorithm (either matroid, swapping roles
    if needed), then the SBO loop, then the minimum-overlap digraph; the
    last raises :class:`Unresolved` when its digraph is cyclic.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if m1.n != m2.n:
        raise PreconditionViolated("matroids live on different ground sets")
    if method == "sbo":
        return price_conjecture2_sbo(m1, m2)
    if as_special_partition(m1) is not None:
        return price_conjecture2_partition(m1, m2)
    if as_special_partition(m2) is not None:
        return _swap_roles(price_conjecture2_partition(m2, m1), m1.n)
    if method == "partition":
        raise PreconditionViolated("neither matroid is a partition matroid with classes of size <= 2 and bound 1")
    if is_sbo_family(m1) and is_sbo_family(m2):
        try:
            return price_conjecture2_sbo(m1, m2)
        except NotSupported:
            pass
    return _price_general(m1, m2)


# -- disjoint spanning pairs --------------------------------------------------

def price_conjecture1(m1: Matroid, m2: Matroid, method: str = "auto") -> PricingResult:
    """Prices under which each buyer's cheapest basis leaves the other a basis.

    Requires disjoint bases of M1 and M2 covering S. The returned ``B2`` is
    buyer 2's unique cheapest basis of M2.
    """
    if m1.n != m2.n:
        raise PreconditionViolated("matroids live on different ground sets")
    m2d = m2.dual()
    try:
        common_basis(m1, m2d)
    except NoCommonBasis as exc:
        raise NoDisjointSpanningPair(
            f"no basis of M1 has a complement that is a basis of M2 (best overlap witness {sorted(exc.witness)})"
        ) from exc
    res = price_conjecture2(m1, m2d, method)
    res.B2 = m1.ground - res.B2
    return res


def max_union_bases(m1: Matroid, m2: Matroid) -> tuple[frozenset, frozenset]:
    """Bases of M1 and M2 whose union is as large as possible."""
    m2d = m2.dual()
    I = max_common_independent(m1, m2d)
    b1 = m1.find_basis(None, I)
    c = m2d.find_basis(None, I)
    return b1, m1.ground - c


def price_rank_valuations(m1: Matroid, m2: Matroid, method: str = "auto") -> PricingResult:
    """Prices for buyers with rank valuations picking arbitrary best bundles.

    Elements outside the best basis union cost 1, shared elements cost 0,
    and the rest gets rescaled disjoint-spanning prices inside [1/4, 3/4).
    """
    if m1.n != m2.n:
        raise PreconditionViolated("matroids live on different ground sets")
    n = m1.n
    hb1, hb2 = max_union_bases(m1, m2)
    removed = m1.ground - (hb1 | hb2)
    shared = hb1 & hb2

    def minor(m):
        d = m.delete(removed)
        pos = {e: i for i, e in enumerate(d.labels)}
        c = d.contract(pos[e] for e in shared)
        return c, [d.labels[i] for i in c.labels]

    mm1, labels = minor(m1)
    mm2, _ = minor(m2)
    sub = price_conjecture1(mm1, mm2, method)
    p = [Fraction(1)] * n
    for e in shared:
        p[e] = Fraction(0)
    if labels:
        lo, hi = min(sub.prices), max(sub.prices)
        alpha = Fraction(1, 2) / (1 + hi - lo)
        beta = Fraction(1, 4) - alpha * lo
        for i, e in enumerate(labels):
            p[e] = alpha * sub.prices[i] + beta
    B1 = frozenset(labels[i] for i in sub.B1) | shared
    B2 = frozenset(labels[i] for i in sub.B2) | shared
    return PricingResult(p, sub.mode, B1, B2, sub.iterations, sub.overlaps)


# -- weighted bases -----------------------------------------------------------

def price_weighted(m1: Matroid, w1: Sequence, m2: Matroid, w2: Sequence,
                   method: str = "auto") -> PricingResult:
    """Prices for weighted basis valuations with disjoint spanning bases.

    Returns p = w1 - q1 + eps * p_hat (in the original units), where
    q1 + q2 = w1 - w2 is an integral split for (M1, dual M2) and p_hat
    solves the common-basis form on the maximum-weight restrictions.
    """
    n = m1.n
    if m2.n != n or len(w1) != n or len(w2) != n:
        raise PreconditionViolated("ground sizes or weight lengths disagree")
    w1 = [Fraction(x) for x in w1]
    w2 = [Fraction(x) for x in w2]
    scale = math.lcm(1, *(x.denominator for x in w1 + w2))
    W1 = [int(x * scale) for x in w1]
    W2 = [int(x * scale) for x in w2]
    m2d = m2.dual()
    try:
        split = max_weight_common_basis_split(m1, m2d, [a - b for a, b in zip(W1, W2)])
    except NoCommonBasis as exc:
        raise NoDisjointSpanningPair("no basis of M1 has a complement that is a basis of M2") from exc
    q1, q2 = split.w1, split.w2
    sub = price_conjecture2(MaximizerMatroid(m1, q1), MaximizerMatroid(m2d, q2), method)
    p_hat = sub.prices
    total = sum((abs(x) for x in p_hat), Fraction(0))
    eps = Fraction(1) / (1 + 2 * total)
    # integral q1, q2 make every nonzero gap of q_i(X) at least 1
    delta = Fraction(1)
    if not eps * total < delta / 2:
        raise InternalInvariantBroken("perturbation bound violated")
    p = [(W1[e] - q1[e] + eps * p_hat[e]) / scale for e in range(n)]
    return PricingResult(p, f"weighted/{sub.mode}", sub.B1, m1.ground - sub.B2,
                         sub.iterations, sub.overlaps, q1=tuple(Fraction(x) for x in q1),
                         q2=tuple(Fraction(x) for x in q2), delta=delta, epsilon=eps,
                         p_hat=list(p_hat), scale=scale)


# -- bipartite edge weights --------------------------------------------------

def _star_classes(count, edges, side):
    classes = [[] for _ in range(count)]
    for i, e in enumerate(edges):
        if not 0 <= e[side] < count:
            raise PreconditionViolated(f"edge {i} has endpoint {e[side]} out of range")
        classes[e[side]].append(i)
    return classes


def bipartite_edge_weights(U: int, V: int, edges: Sequence[Sequence[int]]) -> list[Fraction]:
    """Edge weights whose per-u lightest edges and per-v heaviest edges
    are both perfect matchings (all selections are unique)."""
    cu = _star_classes(U, edges, 0)
    cv = _star_classes(V, edges, 1)
    if U != V or any(not c for c in cu + cv):
        raise NoPerfectMatching("sides differ in size or a vertex is isolated")
    m1 = PartitionMatroid(cu, [1] * U)
    m2 = PartitionMatroid(cv, [1] * V)
    try:
        common_basis(m1, m2)
    except NoCommonBasis as exc:
        raise NoPerfectMatching(f"maximum matching has only {len(exc.witness)} edges") from exc
    return price_conjecture2_sbo(m1, m2).prices


def matching_selections(U: int, V: int, edges, w) -> tuple[list | None, list | None]:
    """Per-u lightest and per-v heaviest edge selections.

    A selection is ``None`` when some vertex has a tied choice.
    """
    def pick(count, side, best):
        chosen = []
        for c in _star_classes(count, edges, side):
            top = best(w[i] for i in c)
            winners = [i for i in c if w[i] == top]
            if len(winners) != 1:
                return None
            chosen.append(winners[0])
        return sorted(chosen)

    return pick(U, 0, min), pick(V, 1, max)
