"""Desk-scale valuations on {0,1}^S: exchange checks, the intersection
split, and prices surviving arbitrary tie-breaking.

Subsets are bitmasks (bit i set iff element i is in the bundle). Tables
are dense: entry ``mask`` holds a rational or the symbol :data:`NEG_INF`.
Numeric work runs on integers after clearing denominators.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (MalformedDescriptor, NotMnatConcave, PreconditionViolated,
                     SearchExhausted, TooLarge)
from .matroid import ExplicitMatroid, Matroid

__all__ = ["NEG_INF", "ValuationTable", "weighted_rank_valuation", "indicator_valuation",
           "check_mnat_exc", "reflect", "argmax_set", "intersection_split", "SplitCertificate",
           "price_gs", "GsResult", "verify_gs_prices", "find_set_prices", "MAX_GS_N"]

MAX_GS_N = 16
# keeps every intermediate sum comfortably inside int64
_INT_BOUND = 1 << 40


class _NegInf:
    """Max-plus bottom element; absorbs addition, loses every comparison."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __reduce__(self):
        return (_NegInf, ())


NEG_INF = _NegInf()


def _parse_value(s):
    if s is NEG_INF or s == "-inf":
        return NEG_INF
    if isinstance(s, float):
        raise MalformedDescriptor("valuation values must be exact rationals, not binary fractions")
    try:
        return Fraction(s)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise MalformedDescriptor(f"bad valuation entry {s!r}") from exc


@dataclass(frozen=True)
class ValuationTable:
    n: int
    values: tuple

    def __post_init__(self):
        if not 0 <= self.n <= MAX_GS_N:
            raise TooLarge(f"valuation tables are capped at n = {MAX_GS_N}, got {self.n}")
        if len(self.values) != 1 << self.n:
            raise MalformedDescriptor(f"expected {1 << self.n} entries, got {len(self.values)}")
        object.__setattr__(self, "values", tuple(_parse_value(v) for v in self.values))
        if not self.domain:
            raise MalformedDescriptor("valuation has empty domain")

    @classmethod
    def from_function(cls, n: int, f) -> "ValuationTable":
        return cls(n, tuple(f(x) for x in range(1 << n)))

    @classmethod
    def from_json(cls, d: dict) -> "ValuationTable":
        try:
            n = int(d["n"])
            vals = [NEG_INF] * (1 << n)
            for mask, v in d["values"]:
                if len(mask) != n or set(mask) - {"0", "1"}:
                    raise MalformedDescriptor(f"bitmask {mask!r} is not a {n}-digit binary string")
                vals[int(mask, 2)] = _parse_value(v)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedDescriptor(f"bad valuation file: {exc}") from exc
        return cls(n, tuple(vals))

    def to_json(self) -> dict:
        return {"n": self.n, "values": [[format(x, f"0{self.n}b") if self.n else "", str(v)]
                                        for x, v in enumerate(self.values) if v is not NEG_INF]}

    def __getitem__(self, x: int):
        return self.values[x]

    @property
    def domain(self) -> list[int]:
        return [x for x, v in enumerate(self.values) if v is not NEG_INF]

    def scaled(self, scale: int | None = None) -> tuple[int, np.ndarray, np.ndarray]:
        """(scale, integer values, finite mask); -inf entries hold 0."""
        finite = [v for v in self.values if v is not NEG_INF]
        if scale is None:
            scale = math.lcm(1, *(v.denominator for v in finite))
        ints = [0 if v is NEG_INF else int(v * scale) for v in self.values]
        if any(abs(v) > _INT_BOUND for v in ints):
            raise TooLarge("valuation magnitudes exceed the integer working range")
        return scale, np.array(ints, dtype=np.int64), np.array([v is not NEG_INF for v in self.values])


def weighted_rank_valuation(m: Matroid, w: Sequence) -> ValuationTable:
    """v(X) = maximum weight of an independent subset of X (weights >= 0)."""
    w = [Fraction(x) for x in w]
    if any(x < 0 for x in w):
        raise PreconditionViolated("weighted rank valuations need non-negative weights")
    order = sorted(range(m.n), key=lambda e: (-w[e], e))

    def value(mask):
        chosen = set()
        for e in order:
            if mask >> e & 1 and m.is_independent(chosen | {e}):
                chosen.add(e)
        return sum((w[e] for e in chosen), Fraction(0))

    return ValuationTable.from_function(m.n, value)


def indicator_valuation(n: int, sets: Iterable[Iterable[int]]) -> ValuationTable:
    """0 on the given sets, -inf elsewhere."""
    masks = {sum(1 << e for e in s) for s in sets}
    return ValuationTable.from_function(n, lambda x: Fraction(0) if x in masks else NEG_INF)


def _popcounts(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.int64)


def check_mnat_exc(v: ValuationTable):
    """``True`` or the first violating triple ``(x, y, i)`` in index order.

    For x, y in the domain and i in x - y there must be j in (y - x) or
    no j at all with v(x) + v(y) <= v(x - i + j) + v(y + i - j).
    """
    n = v.n
    _, vals, fin = v.scaled()
    dom = np.flatnonzero(fin)
    chunk = max(1, (1 << 18) // max(1, len(dom)))
    for start in range(0, len(dom), chunk):
        xs = dom[start:start + chunk][:, None]
        ys = dom[None, :]
        lhs = vals[xs] + vals[ys]
        viol = np.zeros((n,) + lhs.shape, dtype=bool)
        for i in range(n):
            bi = 1 << i
            need = ((xs & bi) != 0) & ((ys & bi) == 0)
            if not need.any():
                continue
            x2, y2 = xs ^ bi, ys | bi
            ok = fin[x2] & fin[y2] & (lhs <= vals[x2] + vals[y2])
            for j in range(n):
                bj = 1 << j
                cj = ((ys & bj) != 0) & ((xs & bj) == 0)
                x3, y3 = (xs ^ bi) | bj, (ys | bi) ^ bj
                ok |= cj & fin[x3] & fin[y3] & (lhs <= vals[x3] + vals[y3])
            viol[i] = need & ~ok
        hit = viol.any(axis=0)
        if hit.any():
            r, c = np.argwhere(hit)[0]
            i = int(np.flatnonzero(viol[:, r, c])[0])
            return int(dom[start + r]), int(dom[c]), i
    return True


def reflect(v: ValuationTable) -> ValuationTable:
    """x -> v(1 - x)."""
    full = (1 << v.n) - 1
    return ValuationTable(v.n, tuple(v.values[full ^ x] for x in range(1 << v.n)))


def argmax_set(v: ValuationTable, q: Sequence = None, sign: int = -1) -> frozenset:
    """Masks maximizing v(x) + sign * q.x (default v(x) - q.x), exactly."""
    q = [Fraction(0)] * v.n if q is None else [Fraction(x) for x in q]
    best, out = None, []
    for x in v.domain:
        val = v.values[x] + sign * sum((q[i] for i in range(v.n) if x >> i & 1), Fraction(0))
        if best is None or val > best:
            best, out = val, [x]
        elif val == best:
            out.append(x)
    return frozenset(out)


@dataclass(frozen=True)
class SplitCertificate:
    q: tuple            # in the caller's units
    q_scaled: tuple     # integral, in units of 1/scale
    scale: int
    optimum: Fraction
    maximizers: frozenset
    steps: int


def _common_scale(*tables):
    return math.lcm(1, *(val.denominator for t in tables for val in t.values if val is not NEG_INF))


def _split_g(a_vals, a_fin, b_vals, b_fin, C, q):
    # g(q) = max(a - q.x) + max(b + q.x)
    qx = C @ q
    return np.max(np.where(a_fin, a_vals - qx, np.iinfo(np.int64).min // 4)) + \
        np.max(np.where(b_fin, b_vals + qx, np.iinfo(np.int64).min // 4))


def _best_direction(a, af, b, bf, C, q, dirs):
    # evaluates g(q + d) for every direction, in chunks bounded by memory
    lo = np.iinfo(np.int64).min // 4
    chunk = max(1, (1 << 22) // len(C))
    best_k, best_g = -1, None
    for s in range(0, len(dirs), chunk):
        qx = C @ (q[None, :] + dirs[s:s + chunk]).T
        ga = np.max(np.where(af[:, None], a[:, None] - qx, lo), axis=0)
        gb = np.max(np.where(bf[:, None], b[:, None] + qx, lo), axis=0)
        gs = ga + gb
        k = int(np.argmin(gs))
        if best_g is None or gs[k] < best_g:
            best_k, best_g = s + k, int(gs[k])
    return best_k, best_g


def intersection_split(v1: ValuationTable, v2star: ValuationTable) -> SplitCertificate:
    """Integral q with argmax(v1 + v2*) = argmax(v1 - q.x) & argmax(v2* + q.x).

    Steepest descent on g(q) = max(v1 - q.x) + max(v2* + q.x) over the
    directions +-chi_A; stops at a local minimum, which for exchange-valid
    inputs is global and equals max(v1 + v2*).
    """
    n = v1.n
    if v2star.n != n:
        raise PreconditionViolated("valuations on different ground sets")
    scale = _common_scale(v1, v2star)
    _, a, af = v1.scaled(scale)
    _, b, bf = v2star.scaled(scale)
    both = af & bf
    if not both.any():
        raise PreconditionViolated("v1 + v2* has no finite maximizer")
    target = int(np.max(np.where(both, a + b, np.iinfo(np.int64).min // 4)))
    C = _popcounts(n)
    dirs = np.vstack([C[1:], -C[1:]])
    q = np.zeros(n, dtype=np.int64)
    g = int(_split_g(a, af, b, bf, C, q))
    steps = 0
    while g > target:
        k, gk = _best_direction(a, af, b, bf, C, q, dirs)
        if gk >= g:
            raise NotMnatConcave(f"descent stalled at g = {Fraction(g, scale)} above the optimum "
                                 f"{Fraction(target, scale)}")
        q, g = q + dirs[k], gk
        steps += 1
    qs = tuple(int(x) for x in q)
    qf = tuple(Fraction(x, scale) for x in qs)
    M = argmax_set(_sum_tables(v1, v2star))
    Q1 = argmax_set(v1, qf, -1)
    Q2s = argmax_set(v2star, qf, +1)
    if M != Q1 & Q2s:
        raise NotMnatConcave("argmax equality fails at an optimal split")
    return SplitCertificate(qf, qs, scale, Fraction(target, scale), M, steps)


def _sum_tables(v1, v2):
    return ValuationTable(v1.n, tuple(x + y for x, y in zip(v1.values, v2.values)))


# -- tie-robust prices for admissible families --------------------------------

def _dot(p, x):
    return sum((p[i] for i in range(len(p)) if x >> i & 1), Fraction(0))


def _set_conditions_hold(Q1: frozenset, Q2: frozenset, p, n) -> bool:
    full = (1 << n) - 1
    for mine, theirs in ((Q1, Q2), (Q2, Q1)):
        vals = {x: _dot(p, x) for x in mine}
        lo = min(vals.values())
        if any(v == lo and full ^ x not in theirs for x, v in vals.items()):
            return False
    return True


def _as_bases(Q, n):
    sizes = {bin(x).count("1") for x in Q}
    if len(sizes) != 1:
        return None
    try:
        return ExplicitMatroid(n, [[i for i in range(n) if x >> i & 1] for x in sorted(Q)])
    except MalformedDescriptor:
        return None


def find_set_prices(Q1: frozenset, Q2: frozenset, n: int, trials: int = 10_000,
                    seed: int = 0) -> tuple[list, str]:
    """Prices whose cheapest members of Q1 and Q2 leave complements in the other.

    Equal-cardinality families are matroid base families and go through
    the matroid pipeline; otherwise random integer vectors with distinct
    entries are tried from a range that widens with the trial count.
    """
    m1, m2 = _as_bases(Q1, n), _as_bases(Q2, n)
    if m1 is not None and m2 is not None:
        from .pipelines import price_conjecture1
        res = price_conjecture1(m1, m2)
        return list(res.prices), f"matroid/{res.mode}"
    rng = random.Random(seed)
    for t in range(trials):
        span = max(n, 1) * (2 + t // 100)
        p = [Fraction(x) for x in rng.sample(range(-span, span + 1), n)]
        if _set_conditions_hold(Q1, Q2, p, n):
            return p, "search"
    raise SearchExhausted(trials, {"n": n, "Q1": sorted(Q1), "Q2": sorted(Q2)})


@dataclass
class GsResult:
    prices: list
    q: tuple
    p_hat: list
    epsilon: Fraction
    delta: Fraction
    Q1: frozenset
    Q2: frozenset
    method: str
    certificate: SplitCertificate

    def to_json(self) -> dict:
        bits = lambda xs: [format(x, f"0{len(self.q)}b") for x in sorted(xs)]
        return {"prices": [str(x) for x in self.prices], "mode": f"gs/{self.method}",
                "q": [str(x) for x in self.q], "p_hat": [str(x) for x in self.p_hat],
                "epsilon": str(self.epsilon), "delta": str(self.delta),
                "Q1": bits(self.Q1), "Q2": bits(self.Q2), "descent_steps": self.certificate.steps}


def _min_gap(v: ValuationTable, q, sign):
    vals = sorted({v.values[x] + sign * _dot(q, x) for x in v.domain}, reverse=True)
    return vals[0] - vals[1] if len(vals) > 1 else None


def price_gs(v1: ValuationTable, v2: ValuationTable, trials: int = 10_000,
             seed: int = 0, check: bool = True) -> GsResult:
    """p = q + eps * p_hat for two exchange-valid valuations."""
    n = v1.n
    if v2.n != n:
        raise PreconditionViolated("valuations on different ground sets")
    if check:
        for name, v in (("v1", v1), ("v2", v2)):
            w = check_mnat_exc(v)
            if w is not True:
                raise NotMnatConcave(f"{name} violates the exchange property at (x, y, i) = {w}")
    v2s = reflect(v2)
    cert = intersection_split(v1, v2s)
    q = list(cert.q)
    full = (1 << n) - 1
    Q1 = argmax_set(v1, q, -1)
    Q2 = frozenset(full ^ x for x in argmax_set(v2s, q, +1))
    p_hat, method = find_set_prices(Q1, Q2, n, trials, seed)
    gaps = [g for g in (_min_gap(v1, q, -1), _min_gap(v2, q, -1)) if g is not None]
    delta = min(gaps) if gaps else Fraction(1)
    total = sum((abs(x) for x in p_hat), Fraction(0))
    eps = delta / (1 + 2 * total)
    prices = [q[i] + eps * p_hat[i] for i in range(n)]
    return GsResult(prices, tuple(q), p_hat, eps, delta, Q1, Q2, method, cert)


def verify_gs_prices(v1: ValuationTable, v2: ValuationTable, p: Sequence):
    """Every utility-maximizing first pick leaves a welfare-optimal split."""
    from .verify import VerificationReport
    n = v1.n
    full = (1 << n) - 1
    welfare = {x: v1.values[x] + v2.values[full ^ x] for x in range(1 << n)}
    best = max(welfare.values())
    if best is NEG_INF:
        raise PreconditionViolated("no bundle split has finite welfare")
    rep = VerificationReport("C7", sizes={"points": 1 << n})
    for buyer, v in ((1, v1), (2, v2)):
        for x in sorted(argmax_set(v, p, -1)):
            mine = x if buyer == 1 else full ^ x
            if welfare[mine] != best:
                rep.violations.append({"condition": buyer, "set": format(x, f"0{n}b") if n else "",
                                       "welfare": str(welfare[mine]), "optimum": str(best)})
    rep.flags = {"optimum": str(best)}
    return rep
