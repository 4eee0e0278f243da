"""Strongly base orderable bijections and the two-basis merge.

A bijection f: B1 -> B2 between bases is *serial* (the property certified
here) when (B1 - X) | f(X) is a basis for every X within B1. All
constructions fix B1 & B2 pointwise before matching the rest.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import NotBases, NotSupported, PreconditionViolated
from .matroid import (ContractionMatroid, DeletionMatroid, DirectSum, DualMatroid,
                      FreeMatroid, LaminarMatroid, Matroid, MaximizerMatroid,
                      ParallelExtension, PartitionMatroid, TransversalMatroid,
                      UniformMatroid)

__all__ = ["SboBijection", "SboCheck", "sbo_bijection", "validate_sbo_bijection",
           "dm_merge_two", "is_sbo_family", "BRUTE_FORCE_LIMIT"]

# largest |B1 - B2| handled by exhaustive bijection search
BRUTE_FORCE_LIMIT = 8


@dataclass(frozen=True)
class SboBijection:
    source: frozenset
    target: frozenset
    mapping: dict

    def __post_init__(self):
        if set(self.mapping) != set(self.source) or set(self.mapping.values()) != set(self.target) \
                or len(self.source) != len(self.target):
            raise PreconditionViolated("mapping is not a bijection between the given bases")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def swap(self, X: Iterable[int]) -> frozenset:
        """(source - X) | f(X)."""
        X = frozenset(X)
        return (self.source - X) | frozenset(self.mapping[x] for x in X)

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.mapping.items()))))


class SboCheck(NamedTuple):
    valid: bool
    counterexample: frozenset | None


def validate_sbo_bijection(m: Matroid, f: SboBijection, mode: str = "exhaustive",
                           count: int = 1000, seed: int = 0) -> SboCheck:
    """Check the exchange property; returns the first violating X if any.

    ``mode="exhaustive"`` covers all subsets of ``f.source``; fixed points
    never change the swapped set, so only subsets of the moved elements
    are materialized. ``mode="sample"`` draws ``count`` uniform subsets.
    """
    if mode == "exhaustive":
        moved = sorted(x for x in f.source if f(x) != x)
        for size in range(len(moved) + 1):
            for X in combinations(moved, size):
                if not m.is_basis(f.swap(X)):
                    return SboCheck(False, frozenset(X))
        return SboCheck(True, None)
    if mode == "sample":
        rng = random.Random(seed)
        src = sorted(f.source)
        for _ in range(count):
            X = frozenset(x for x in src if rng.random() < 0.5)
            if not m.is_basis(f.swap(X)):
                return SboCheck(False, X)
        return SboCheck(True, None)
    raise ValueError(f"unknown validation mode {mode!r}")


def _match_ascending(pairs: dict, left: list, right: list):
    for x, y in zip(sorted(left), sorted(right)):
        pairs[x] = y


def _partition_bijection(m: PartitionMatroid, B1, B2) -> dict:
    f = {x: x for x in B1 & B2}
    for cls in m.classes:
        cls = set(cls)
        _match_ascending(f, list((B1 - B2) & cls), list((B2 - B1) & cls))
    return f


def _laminar_bijection(m: LaminarMatroid, B1, B2) -> dict:
    f = {x: x for x in B1 & B2}
    left, right = set(B1 - B2), set(B2 - B1)
    for A, _ in list(m.sets) + [(m.ground, None)]:
        ls, rs = sorted(left & A), sorted(right & A)
        k = min(len(ls), len(rs))
        _match_ascending(f, ls[:k], rs[:k])
        left.difference_update(ls[:k])
        right.difference_update(rs[:k])
    return f


def _brute_force(m: Matroid, B1, B2) -> dict | None:
    """Backtracking search with identity on B1 & B2; each partial map is
    checked on every subset that contains the newest assignment."""
    common = B1 & B2
    left, right = sorted(B1 - B2), sorted(B2 - B1)
    if len(left) > BRUTE_FORCE_LIMIT:
        raise NotSupported(f"no bijection construction for {type(m).__name__} "
                           f"with {len(left)} moved elements")
    f = {}
    used = set()

    def ok(x):
        assigned = [a for a in f if a != x]
        for size in range(len(assigned) + 1):
            for X in combinations(assigned, size):
                swapped = (B1 - set(X) - {x}) | {f[a] for a in X} | {f[x]}
                if not m.is_basis(swapped):
                    return False
        return True

    def extend(i):
        if i == len(left):
            return True
        x = left[i]
        for y in right:
            if y in used:
                continue
            f[x] = y
            used.add(y)
            if ok(x) and extend(i + 1):
                return True
            used.discard(y)
            del f[x]
        return False

    if not extend(0):
        return None
    f.update({x: x for x in common})
    return f


def _lift_parallel(m: ParallelExtension, B1, B2) -> dict:
    p1, p2 = m.project(B1), m.project(B2)
    g = sbo_bijection(m.inner, p1, p2)
    in_b2 = {m.original(e): e for e in B2}
    f = {}
    for x in B1:
        f[x] = x if x in B2 else in_b2[g(m.original(x))]
    return f


def _via_extension(m, inner_B1, inner_B2, extra, labels_back) -> dict:
    g = sbo_bijection(m.inner, inner_B1 | extra, inner_B2 | extra)
    return {labels_back[x]: labels_back[g(x)] for x in inner_B1}


def _raw_bijection(m: Matroid, B1: frozenset, B2: frozenset) -> dict:
    if B1 == B2:
        return {x: x for x in B1}
    if isinstance(m, PartitionMatroid):
        return _partition_bijection(m, B1, B2)
    if isinstance(m, (UniformMatroid, FreeMatroid)):
        f = {x: x for x in B1 & B2}
        _match_ascending(f, list(B1 - B2), list(B2 - B1))
        return f
    if isinstance(m, LaminarMatroid):
        return _laminar_bijection(m, B1, B2)
    if isinstance(m, ParallelExtension):
        return _lift_parallel(m, B1, B2)
    if isinstance(m, MaximizerMatroid):
        # any serial bijection of the inner matroid stays valid
        return sbo_bijection(m.inner, B1, B2).mapping
    if isinstance(m, DualMatroid):
        # complements C_i = S - B_i; g: C2 -> C1 restricted to the moved part
        S = m.ground
        g = sbo_bijection(m.inner, S - B2, S - B1)
        f = {x: x for x in B1 & B2}
        f.update({x: g(x) for x in B1 - B2})
        return f
    if isinstance(m, DeletionMatroid):
        up1, up2 = m.lift(B1), m.lift(B2)
        extra = m.inner.find_basis(m.inner.ground, up1) - up1
        back = {v: i for i, v in enumerate(m.labels)}
        return _via_extension(m, up1, up2, extra, back)
    if isinstance(m, ContractionMatroid):
        up1, up2 = m.lift(B1), m.lift(B2)
        extra = m.contracted_basis
        back = {v: i for i, v in enumerate(m.labels)}
        return _via_extension(m, up1, up2, extra, back)
    if isinstance(m, DirectSum):
        f = {}
        for part, off, X1, X2 in zip(m.parts, m.offsets, m.split(B1), m.split(B2)):
            g = sbo_bijection(part, X1, X2)
            f.update({x + off: g(x) + off for x in X1})
        return f
    found = _brute_force(m, B1, B2)
    if found is None:
        raise NotSupported(f"{sorted(B1)} -> {sorted(B2)}: no serial bijection exists")
    return found


def sbo_bijection(m: Matroid, B1: Iterable[int], B2: Iterable[int]) -> SboBijection:
    """Serial bijection between two bases, dispatched on the matroid family."""
    B1, B2 = m.check_set(B1), m.check_set(B2)
    if not (m.is_basis(B1) and m.is_basis(B2)):
        raise NotBases(f"{sorted(B1)} or {sorted(B2)} is not a basis")
    f = SboBijection(B1, B2, _raw_bijection(m, B1, B2))
    if isinstance(m, (ParallelExtension, DeletionMatroid, ContractionMatroid)) \
            and not validate_sbo_bijection(m, f).valid:
        found = _brute_force(m, B1, B2)
        if found is None:
            raise NotSupported("lifted bijection failed and no serial bijection exists")
        f = SboBijection(B1, B2, found)
    return f


def is_sbo_family(m: Matroid) -> bool:
    """Families for which :func:`sbo_bijection` is guaranteed to succeed
    (transversal matroids only up to the brute-force limit)."""
    if isinstance(m, (PartitionMatroid, UniformMatroid, FreeMatroid, LaminarMatroid)):
        return True
    if isinstance(m, TransversalMatroid):
        return m.full_rank <= BRUTE_FORCE_LIMIT
    if isinstance(m, (ParallelExtension, MaximizerMatroid, DualMatroid, DeletionMatroid,
                      ContractionMatroid)):
        return is_sbo_family(m.inner)
    if isinstance(m, DirectSum):
        return all(is_sbo_family(p) for p in m.parts)
    return False


def dm_merge_two(m1: Matroid, m2: Matroid, X: Iterable[int],
                 bases_m1: tuple, bases_m2: tuple,
                 f1: SboBijection, f2: SboBijection) -> tuple[frozenset, frozenset]:
    """Split ``X`` into two common bases given a two-basis split in each matroid.

    The pairs {x, f1(x)} and {x, f2(x)} form two perfect matchings on X;
    their union is a set of even cycles, and 2-colouring each cycle picks
    one endpoint of every pair, so each colour class is a serial swap of
    the given bases in both matroids.
    """
    X = frozenset(X)
    I1, I2 = map(frozenset, bases_m1)
    J1, J2 = map(frozenset, bases_m2)
    if I1 | I2 != X or I1 & I2 or J1 | J2 != X or J1 & J2:
        raise PreconditionViolated("given bases do not partition X")
    for name, m, A, B in (("I1", m1, I1, I2), ("J1", m2, J1, J2)):
        if not (m.is_basis(A) and m.is_basis(B)):
            raise PreconditionViolated(f"{name} pair is not a pair of bases")
    if f1.source != I1 or f1.target != I2:
        raise PreconditionViolated("f1 does not map I1 onto I2")
    if f2.source != J1 or f2.target != J2:
        raise PreconditionViolated("f2 does not map J1 onto J2")

    mate1 = dict(f1.mapping)
    mate1.update({y: x for x, y in f1.mapping.items()})
    mate2 = dict(f2.mapping)
    mate2.update({y: x for x, y in f2.mapping.items()})

    colour: dict[int, int] = {}
    for start in sorted(X):
        if start in colour:
            continue
        v, c, use_first = start, 1, True
        while v not in colour:
            colour[v] = c
            v = mate1[v] if use_first else mate2[v]
            c = 3 - c
            use_first = not use_first
        if colour[v] != c or v != start:
            raise PreconditionViolated("pair graph is not a union of alternating even cycles")
    Z1 = frozenset(v for v, c in colour.items() if c == 1)
    Z2 = X - Z1
    for Z in (Z1, Z2):
        if not (m1.is_basis(Z) and m2.is_basis(Z)):
            raise PreconditionViolated("merge output is not a common basis; a bijection is not serial")
    return Z1, Z2
