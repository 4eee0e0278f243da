"""Brute-force verifiers for the pricing guarantees.

All sums are exact; there are no tolerances. Verifiers accept either
:class:`Matroid` oracles or raw base families (iterables of sets), so
non-matroid set systems can be checked too.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .errors import NoFeasiblePair, TooLarge
from .matroid import Matroid

__all__ = ["VerificationReport", "enumerate_bases", "verify_conjecture0",
           "verify_conjecture1", "verify_conjecture2", "verify_conjecture3",
           "remark_counterexample_check", "remark_constraints",
           "NO_PRICE_FAMILY1", "NO_PRICE_FAMILY2", "MAX_BASIS_SCAN", "MAX_SUBSET_SCAN"]

MAX_BASIS_SCAN = 20
MAX_SUBSET_SCAN = 12


@dataclass
class VerificationReport:
    conjecture: str
    violations: list = field(default_factory=list)
    sizes: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        out = {"conjecture": self.conjecture, "pass": self.passed, "violations": self.violations}
        out.update(self.flags)
        out["sizes"] = dict(self.sizes)
        return out

    def __bool__(self):
        return self.passed


def enumerate_bases(m: Matroid) -> list[frozenset]:
    """All bases in ascending lexicographic order."""
    if m.n > MAX_BASIS_SCAN:
        raise TooLarge(f"basis enumeration guard: n = {m.n} > {MAX_BASIS_SCAN}")
    bases = getattr(m, "bases", None)
    if bases is not None and all(isinstance(b, frozenset) for b in bases):
        return list(bases)
    r = m.full_rank
    return [frozenset(c) for c in combinations(range(m.n), r) if m.is_independent(c)]


def _family(m) -> list[frozenset]:
    if isinstance(m, Matroid):
        return enumerate_bases(m)
    return sorted({frozenset(B) for B in m}, key=sorted)


def _cost(p, X) -> Fraction:
    return sum((Fraction(p[e]) for e in X), Fraction(0))


def _extremes(family, value, best):
    vals = [value(B) for B in family]
    target = best(vals)
    return [B for B, v in zip(family, vals) if v == target], target


def _entry(condition, X, value, reason):
    return {"condition": condition, "set": sorted(X), "value": str(value), "reason": reason}


def verify_conjecture2(m1, m2, p: Sequence) -> VerificationReport:
    """Every p-cheapest basis of M1 is a basis of M2 and every p-dearest
    basis of M2 is a basis of M1."""
    F1, F2 = _family(m1), _family(m2)
    S1, S2 = set(F1), set(F2)
    rep = VerificationReport("C2", sizes={"bases1": len(F1), "bases2": len(F2)})
    lo, v1 = _extremes(F1, lambda B: _cost(p, B), min)
    hi, v2 = _extremes(F2, lambda B: _cost(p, B), max)
    for B in lo:
        if B not in S2:
            rep.violations.append(_entry(1, B, v1, "cheapest basis of M1 is not a basis of M2"))
    for B in hi:
        if B not in S1:
            rep.violations.append(_entry(2, B, v2, "dearest basis of M2 is not a basis of M1"))
    rep.flags = {"argmin_singleton": len(lo) == 1, "argmax_singleton": len(hi) == 1}
    return rep


def verify_conjecture1(m1, m2, p: Sequence) -> VerificationReport:
    """Each buyer's p-cheapest basis leaves a basis for the other."""
    n = len(p)
    S = frozenset(range(n))
    F1, F2 = _family(m1), _family(m2)
    S1, S2 = set(F1), set(F2)
    if not any(S - B in S2 for B in F1):
        raise NoFeasiblePair("no basis of M1 has a complement that is a basis of M2")
    rep = VerificationReport("C1", sizes={"bases1": len(F1), "bases2": len(F2)})
    lo1, v1 = _extremes(F1, lambda B: _cost(p, B), min)
    lo2, v2 = _extremes(F2, lambda B: _cost(p, B), min)
    for B in lo1:
        if S - B not in S2:
            rep.violations.append(_entry(1, B, v1, "complement of buyer 1's cheapest basis is not a basis of M2"))
    for B in lo2:
        if S - B not in S1:
            rep.violations.append(_entry(2, B, v2, "complement of buyer 2's cheapest basis is not a basis of M1"))
    rep.flags = {"argmin1_singleton": len(lo1) == 1, "argmin2_singleton": len(lo2) == 1}
    return rep


def verify_conjecture3(m1, w1: Sequence, m2, w2: Sequence, p: Sequence) -> VerificationReport:
    """Each buyer's utility-maximizing basis is part of a welfare-maximizing
    complementary pair."""
    n = len(p)
    S = frozenset(range(n))
    F1, F2 = _family(m1), _family(m2)
    S1, S2 = set(F1), set(F2)
    feasible = [B for B in F1 if S - B in S2]
    if not feasible:
        raise NoFeasiblePair("no basis of M1 has a complement that is a basis of M2")

    def welfare(X):  # X is buyer 1's bundle
        return _cost(w1, X) + _cost(w2, S - X)

    opt = max(welfare(B) for B in feasible)
    rep = VerificationReport("C3", sizes={"bases1": len(F1), "bases2": len(F2), "feasible": len(feasible)})
    best1, u1 = _extremes(F1, lambda B: _cost(w1, B) - _cost(p, B), max)
    best2, u2 = _extremes(F2, lambda B: _cost(w2, B) - _cost(p, B), max)
    for B in best1:
        if S - B not in S2 or welfare(B) != opt:
            rep.violations.append(_entry(1, B, u1, "buyer 1's best basis is not welfare-optimal"))
    for B in best2:
        if S - B not in S1 or welfare(S - B) != opt:
            rep.violations.append(_entry(2, B, u2, "buyer 2's best basis is not welfare-optimal"))
    rep.flags = {"optimum": str(opt), "argmax1_singleton": len(best1) == 1,
                 "argmax2_singleton": len(best2) == 1}
    return rep


def _rank_table(m: Matroid) -> list[int]:
    # greedy over ascending elements: the top bit is scanned last
    n = m.n
    basis = [frozenset()] * (1 << n)
    rank = [0] * (1 << n)
    for mask in range(1, 1 << n):
        top = mask.bit_length() - 1
        prev = basis[mask ^ (1 << top)]
        cand = prev | {top}
        if m.is_independent(cand):
            basis[mask], rank[mask] = cand, rank[mask ^ (1 << top)] + 1
        else:
            basis[mask], rank[mask] = prev, rank[mask ^ (1 << top)]
    return rank


def _mask_sums(values: Sequence[int]) -> list[int]:
    out = [0] * (1 << len(values))
    for mask in range(1, len(out)):
        low = mask & -mask
        out[mask] = out[mask ^ low] + values[low.bit_length() - 1]
    return out


def _submasks(mask):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _members(mask):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def verify_conjecture0(m1: Matroid, m2: Matroid, p: Sequence) -> VerificationReport:
    """Both arrival orders, every utility-maximizing first pick, every best
    response: the resulting welfare must equal the optimum."""
    n = m1.n
    if n > MAX_SUBSET_SCAN:
        raise TooLarge(f"subset scan guard: n = {n} > {MAX_SUBSET_SCAN}")
    p = [Fraction(x) for x in p]
    scale = math.lcm(1, *(x.denominator for x in p))
    price = _mask_sums([int(x * scale) for x in p])
    r = (_rank_table(m1), _rank_table(m2))
    full = (1 << n) - 1
    opt = max(r[0][X] + r[1][full ^ X] for X in range(1 << n))
    rep = VerificationReport("C0", sizes={"subsets": 1 << n})
    firsts = 0
    for first in (0, 1):
        second = 1 - first
        util = [scale * r[first][X] - price[X] for X in range(1 << n)]
        top = max(util)
        picks = [X for X in range(1 << n) if util[X] == top]
        firsts += len(picks)
        for X in picks:
            rest = full ^ X
            resp = [(scale * r[second][Y] - price[Y], Y) for Y in _submasks(rest)]
            top2 = max(u for u, _ in resp)
            for u, Y in resp:
                if u == top2 and r[first][X] + r[second][Y] != opt:
                    rep.violations.append({
                        "order": f"buyer {first + 1} first",
                        "first_pick": _members(X), "response": _members(Y),
                        "welfare": r[first][X] + r[second][Y], "optimum": opt,
                    })
    rep.flags = {"optimum": opt, "first_picks": firsts}
    return rep


# four items, two families; the second is not a matroid base family and
# no price vector satisfies the disjoint-spanning conditions for the pair
NO_PRICE_FAMILY1 = [frozenset(s) for s in ({0, 2}, {0, 3}, {1, 2}, {1, 3})]
NO_PRICE_FAMILY2 = [frozenset(s) for s in ({1, 3}, {0, 1}, {2, 3})]


def remark_constraints(B1fam=NO_PRICE_FAMILY1, B2fam=NO_PRICE_FAMILY2, n: int = 4) -> list[tuple[int, int]]:
    """Strict inequalities p(a) < p(b) forced on any valid price vector.

    For each buyer, a basis whose complement works must be the unique
    cheapest; against every failing basis differing in one swap this
    yields one element-wise inequality.
    """
    S = frozenset(range(n))
    F1, F2 = set(B1fam), set(B2fam)
    out = []
    for mine, theirs in ((F1, F2), (F2, F1)):
        good = [B for B in mine if S - B in theirs]
        bad = [B for B in mine if S - B not in theirs]
        if len(good) != 1:
            continue
        (g,) = good
        for b in sorted(bad, key=sorted):
            if len(g - b) == 1:
                (a,), (c,) = g - b, b - g
                out.append((a, c))
    return out


def _has_cycle(pairs, n):
    succ = {v: [b for a, b in pairs if a == v] for v in range(n)}
    state = {}

    def visit(v):
        state[v] = 1
        for w in succ[v]:
            if state.get(w) == 1 or (w not in state and visit(w)):
                return True
        state[v] = 2
        return False

    return any(v not in state and visit(v) for v in range(n))


def remark_counterexample_check(B1fam=NO_PRICE_FAMILY1, B2fam=NO_PRICE_FAMILY2, n: int = 4) -> bool:
    """True iff no strict ordering of prices satisfies the disjoint-spanning
    conditions on the raw families, and the forced inequalities are cyclic."""
    for order in permutations(range(1, n + 1)):
        if verify_conjecture1(B1fam, B2fam, list(order)).passed:
            return False
    return _has_cycle(remark_constraints(B1fam, B2fam, n), n)
