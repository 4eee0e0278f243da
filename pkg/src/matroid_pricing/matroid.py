"""Matroid oracles over dense integer ground sets.

Every matroid lives on ``range(n)`` and answers independence queries.
Concrete families (free, uniform, partition, laminar, transversal,
graphic, explicit base lists) and derived constructions (dual, deletion,
contraction, parallel extension, direct sum, union, restriction to
maximum-weight bases) share the :class:`Matroid` interface. Matroids are
immutable after construction; answers are memoized per instance.

Descriptors are plain JSON-compatible dicts, e.g.
``{"type": "uniform", "n": 4, "k": 2}``; see :func:`build_matroid`.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import MalformedDescriptor, OutOfRange, SeedDependent

__all__ = [
    "Matroid", "FreeMatroid", "UniformMatroid", "PartitionMatroid",
    "LaminarMatroid", "TransversalMatroid", "GraphicMatroid", "ExplicitMatroid",
    "DualMatroid", "DeletionMatroid", "ContractionMatroid", "ParallelExtension",
    "DirectSum", "UnionMatroid", "MaximizerMatroid",
    "build_matroid", "dual", "delete", "contract", "add_parallel", "direct_sum",
    "union", "as_special_partition",
]


class Matroid:
    """Independence oracle on the ground set ``range(n)``.

    Subclasses implement :meth:`_independent` on a validated frozenset.
    """

    def __init__(self, n: int):
        if n < 0:
            raise MalformedDescriptor("ground set size must be non-negative")
        self.n = n
        self._memo: dict[frozenset, bool] = {}
        self._full_rank: int | None = None

    # -- subclass hooks -------------------------------------------------
    def _independent(self, X: frozenset) -> bool:
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    # -- queries ----------------------------------------------------------
    @property
    def ground(self) -> frozenset:
        return frozenset(range(self.n))

    def check_set(self, X: Iterable[int]) -> frozenset:
        X = frozenset(X)
        for e in X:
            if not (isinstance(e, int) and 0 <= e < self.n):
                raise OutOfRange(f"element {e!r} outside ground set of size {self.n}")
        return X

    def is_independent(self, X: Iterable[int]) -> bool:
        X = self.check_set(X)
        # a racing duplicate computation stores the same answer
        ans = self._memo.get(X)
        if ans is None:
            ans = self._memo[X] = bool(self._independent(X))
        return ans

    def rank(self, X: Iterable[int] | None = None) -> int:
        if X is None:
            if self._full_rank is None:
                self._full_rank = len(self._greedy(range(self.n), frozenset()))
            return self._full_rank
        X = self.check_set(X)
        return len(self._greedy(sorted(X), frozenset()))

    def _greedy(self, order, seed: frozenset) -> frozenset:
        current = set(seed)
        for e in order:
            if e in current:
                continue
            current.add(e)
            if not self.is_independent(current):
                current.discard(e)
        return frozenset(current)

    @property
    def full_rank(self) -> int:
        return self.rank()

    def find_basis(self, within: Iterable[int] | None = None,
                   containing: Iterable[int] = ()) -> frozenset:
        """Maximal independent subset of ``within`` extending ``containing``.

        Elements are scanned in ascending order.
        """
        within = self.ground if within is None else self.check_set(within)
        containing = self.check_set(containing)
        if not containing <= within:
            raise OutOfRange("seed is not contained in the search set")
        if not self.is_independent(containing):
            raise SeedDependent(f"seed {sorted(containing)} is dependent")
        return self._greedy(sorted(within), containing)

    def is_basis(self, X: Iterable[int]) -> bool:
        X = self.check_set(X)
        return len(X) == self.full_rank and self.is_independent(X)

    def is_loop(self, e: int) -> bool:
        return not self.is_independent((e,))

    # -- derived constructions -------------------------------------------
    def dual(self) -> "DualMatroid":
        return DualMatroid(self)

    def delete(self, T: Iterable[int]) -> "DeletionMatroid":
        return DeletionMatroid(self, T)

    def contract(self, T: Iterable[int]) -> "ContractionMatroid":
        return ContractionMatroid(self, T)

    def add_parallel(self, elements: Iterable[int]) -> "ParallelExtension":
        return ParallelExtension(self, elements)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n})"


class FreeMatroid(Matroid):
    def _independent(self, X):
        return True

    def rank(self, X=None):
        return self.n if X is None else len(self.check_set(X))

    def descriptor(self):
        return {"type": "free", "n": self.n}


class UniformMatroid(Matroid):
    def __init__(self, n: int, k: int):
        if not 0 <= k <= n:
            raise MalformedDescriptor(f"uniform matroid needs 0 <= k <= n, got k={k}, n={n}")
        super().__init__(n)
        self.k = k

    def _independent(self, X):
        return len(X) <= self.k

    def rank(self, X=None):
        return self.k if X is None else min(self.k, len(self.check_set(X)))

    def descriptor(self):
        return {"type": "uniform", "n": self.n, "k": self.k}


class PartitionMatroid(Matroid):
    """At most ``bounds[i]`` elements from ``classes[i]``."""

    def __init__(self, classes: Sequence[Sequence[int]], bounds: Sequence[int]):
        classes = [sorted(c) for c in classes]
        if len(classes) != len(bounds):
            raise MalformedDescriptor("classes and bounds differ in length")
        n = sum(len(c) for c in classes)
        seen = sorted(e for c in classes for e in c)
        if seen != list(range(n)):
            raise MalformedDescriptor("partition classes do not partition range(n)")
        for c, b in zip(classes, bounds):
            if not 0 <= b <= len(c):
                raise MalformedDescriptor(f"bound {b} invalid for class {c}")
        super().__init__(n)
        self.classes = classes
        self.bounds = list(bounds)
        self.class_of = {e: i for i, c in enumerate(classes) for e in c}

    def _independent(self, X):
        counts = [0] * len(self.classes)
        for e in X:
            i = self.class_of[e]
            counts[i] += 1
            if counts[i] > self.bounds[i]:
                return False
        return True

    def rank(self, X=None):
        if X is None:
            return sum(self.bounds)
        X = self.check_set(X)
        return sum(min(b, len(X.intersection(c))) for c, b in zip(self.classes, self.bounds))

    def descriptor(self):
        return {"type": "partition", "classes": [list(c) for c in self.classes], "bounds": list(self.bounds)}


class LaminarMatroid(Matroid):
    """Capacity ``cap`` on each member of a laminar family."""

    def __init__(self, n: int, sets: Sequence[tuple[Iterable[int], int]]):
        super().__init__(n)
        family = []
        for members, cap in sets:
            members = self.check_set(members)
            if cap < 0:
                raise MalformedDescriptor("laminar capacity must be non-negative")
            family.append((members, int(cap)))
        for (a, _), (b, _) in combinations(family, 2):
            if a & b and not (a <= b or b <= a):
                raise MalformedDescriptor(f"family not laminar: {sorted(a)} vs {sorted(b)}")
        # innermost first; used by the bijection construction
        self.sets = sorted(family, key=lambda s: (len(s[0]), sorted(s[0])))

    def _independent(self, X):
        return all(len(X & A) <= cap for A, cap in self.sets)

    def descriptor(self):
        return {"type": "laminar", "n": self.n,
                "sets": [{"members": sorted(A), "cap": cap} for A, cap in self.sets]}


class TransversalMatroid(Matroid):
    """Partial transversals of the set system ``sets``."""

    def __init__(self, n: int, sets: Sequence[Iterable[int]]):
        super().__init__(n)
        self.sets = [sorted(self.check_set(s)) for s in sets]
        self.adj = [[j for j, s in enumerate(self.sets) if e in s] for e in range(n)]

    def _independent(self, X):
        match_of_set: dict[int, int] = {}

        def augment(e, seen):
            for j in self.adj[e]:
                if j in seen:
                    continue
                seen.add(j)
                if j not in match_of_set or augment(match_of_set[j], seen):
                    match_of_set[j] = e
                    return True
            return False

        return all(augment(e, set()) for e in sorted(X))

    def descriptor(self):
        return {"type": "transversal", "n": self.n, "sets": [list(s) for s in self.sets]}


class GraphicMatroid(Matroid):
    """Cycle matroid: element ``i`` is edge ``edges[i]``."""

    def __init__(self, vertices: int, edges: Sequence[Sequence[int]]):
        for u, v in edges:
            if not (0 <= u < vertices and 0 <= v < vertices):
                raise MalformedDescriptor(f"edge ({u}, {v}) has endpoint >= {vertices}")
        super().__init__(len(edges))
        self.vertices = vertices
        self.edges = [(int(u), int(v)) for u, v in edges]

    def _independent(self, X):
        parent = list(range(self.vertices))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in X:
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def descriptor(self):
        return {"type": "graphic", "vertices": self.vertices, "edges": [list(e) for e in self.edges]}


class ExplicitMatroid(Matroid):
    """Matroid given by its list of bases (validated against the basis axioms)."""

    def __init__(self, n: int, bases: Iterable[Iterable[int]]):
        super().__init__(n)
        family = {self.check_set(B) for B in bases}
        if not family:
            raise MalformedDescriptor("base family is empty")
        for B1 in family:
            for B2 in family:
                for x in B1 - B2:
                    if not any((B1 - {x}) | {y} in family for y in B2 - B1):
                        raise MalformedDescriptor(
                            f"not a matroid: exchange fails for {sorted(B1)}, {sorted(B2)}, x={x}")
        self.bases = sorted(family, key=sorted)
        self._family = family

    def _independent(self, X):
        return any(X <= B for B in self.bases)

    def is_basis(self, X):
        return self.check_set(X) in self._family

    def descriptor(self):
        return {"type": "bases", "n": self.n, "bases": [sorted(B) for B in self.bases]}


class DualMatroid(Matroid):
    """Bases are complements of bases of ``inner``."""

    def __init__(self, inner: Matroid):
        super().__init__(inner.n)
        self.inner = inner

    def _independent(self, X):
        return self.inner.rank(self.inner.ground - X) == self.inner.full_rank

    def rank(self, X=None):
        if X is None:
            return self.n - self.inner.full_rank
        X = self.check_set(X)
        return len(X) + self.inner.rank(self.ground - X) - self.inner.full_rank

    def dual(self):
        return self.inner

    def descriptor(self):
        return {"type": "dual", "inner": self.inner.descriptor()}


class _Minor(Matroid):
    """Matroid on ``inner``'s ground minus ``T``, relabeled densely.

    ``labels[i]`` is the inner element behind new element ``i``.
    """

    kind = ""

    def __init__(self, inner: Matroid, T: Iterable[int]):
        T = inner.check_set(T)
        self.inner = inner
        self.removed = T
        self.labels = [e for e in range(inner.n) if e not in T]
        super().__init__(len(self.labels))

    def lift(self, X: Iterable[int]) -> frozenset:
        return frozenset(self.labels[e] for e in X)

    def descriptor(self):
        return {"type": self.kind, "inner": self.inner.descriptor(), "elements": sorted(self.removed)}


class DeletionMatroid(_Minor):
    kind = "delete"

    def _independent(self, X):
        return self.inner.is_independent(self.lift(X))


class ContractionMatroid(_Minor):
    """Rank obeys r'(X) = r(X + T) - r(T)."""

    kind = "contract"

    def __init__(self, inner, T):
        super().__init__(inner, T)
        self.contracted_basis = inner.find_basis(self.removed)

    def _independent(self, X):
        return self.inner.is_independent(self.lift(X) | self.contracted_basis)


class ParallelExtension(Matroid):
    """Adds a parallel copy ``inner.n + j`` of each ``copies[j]``."""

    def __init__(self, inner: Matroid, copies: Iterable[int]):
        copies = list(copies)
        if len(set(copies)) != len(copies):
            raise MalformedDescriptor("each element may receive at most one parallel copy")
        inner.check_set(copies)
        super().__init__(inner.n + len(copies))
        self.inner = inner
        self.copies = copies
        self.copy_index = {s: inner.n + j for j, s in enumerate(copies)}

    def original(self, e: int) -> int:
        return e if e < self.inner.n else self.copies[e - self.inner.n]

    def copy_of(self, s: int) -> int:
        return self.copy_index[s]

    def project(self, X: Iterable[int]) -> frozenset:
        return frozenset(self.original(e) for e in X)

    def _independent(self, X):
        image = self.project(X)
        return len(image) == len(X) and self.inner.is_independent(image)

    def rank(self, X=None):
        if X is None:
            return self.inner.full_rank
        return self.inner.rank(self.project(self.check_set(X)))

    def descriptor(self):
        return {"type": "parallel", "inner": self.inner.descriptor(), "copies": list(self.copies)}


class DirectSum(Matroid):
    """Parts placed on consecutive blocks of the ground set."""

    def __init__(self, parts: Sequence[Matroid]):
        self.parts = list(parts)
        self.offsets = []
        n = 0
        for m in self.parts:
            self.offsets.append(n)
            n += m.n
        super().__init__(n)

    def split(self, X) -> list[frozenset]:
        out = []
        for m, off in zip(self.parts, self.offsets):
            out.append(frozenset(e - off for e in X if off <= e < off + m.n))
        return out

    def _independent(self, X):
        return all(m.is_independent(Y) for m, Y in zip(self.parts, self.split(X)))

    def descriptor(self):
        return {"type": "direct_sum", "parts": [m.descriptor() for m in self.parts]}


class UnionMatroid(Matroid):
    """Independent sets are disjoint unions of independent sets of the parts."""

    def __init__(self, parts: Sequence[Matroid]):
        parts = list(parts)
        if not parts or len({m.n for m in parts}) != 1:
            raise MalformedDescriptor("union parts must share one ground set")
        super().__init__(parts[0].n)
        self.parts = parts

    def _independent(self, X):
        from .algorithms import partition_into_independent
        from .errors import Infeasible
        try:
            partition_into_independent(self.parts, X)
        except Infeasible:
            return False
        return True

    def descriptor(self):
        return {"type": "union", "parts": [m.descriptor() for m in self.parts]}


class MaximizerMatroid(Matroid):
    """Matroid whose bases are the ``q``-maximum bases of ``inner``.

    With weight levels l_1 > ... > l_m and level sets S_1..S_m, I is
    independent iff I & S_j is independent in the contraction of the
    higher levels, for every j.
    """

    def __init__(self, inner: Matroid, q: Sequence):
        if len(q) != inner.n:
            raise MalformedDescriptor("weight vector length differs from ground size")
        super().__init__(inner.n)
        self.inner = inner
        self.q = [Fraction(x) for x in q]
        levels = sorted(set(self.q), reverse=True)
        self.levels = [frozenset(e for e in range(self.n) if self.q[e] == lam) for lam in levels]
        self._prefix = []
        above = frozenset()
        for S_j in self.levels:
            self._prefix.append((above, inner.rank(above)))
            above = above | S_j

    def _independent(self, X):
        for S_j, (above, r_above) in zip(self.levels, self._prefix):
            part = X & S_j
            if part and self.inner.rank(above | part) - r_above != len(part):
                return False
        return True

    def rank(self, X=None):
        if X is None:
            return self.inner.full_rank
        return super().rank(X)

    def descriptor(self):
        return {"type": "maximizer", "inner": self.inner.descriptor(), "weights": [str(x) for x in self.q]}


# -- functional constructors -------------------------------------------

def dual(m: Matroid) -> Matroid:
    return m.dual()


def delete(m: Matroid, T: Iterable[int]) -> DeletionMatroid:
    return DeletionMatroid(m, T)


def contract(m: Matroid, T: Iterable[int]) -> ContractionMatroid:
    return ContractionMatroid(m, T)


def add_parallel(m: Matroid, elements: Iterable[int]) -> ParallelExtension:
    return ParallelExtension(m, elements)


def direct_sum(*parts: Matroid) -> DirectSum:
    return DirectSum(parts)


def union(*parts: Matroid) -> UnionMatroid:
    return UnionMatroid(parts)


def _require(d: dict, *keys):
    for k in keys:
        if k not in d:
            raise MalformedDescriptor(f"descriptor of type {d.get('type')!r} lacks field {k!r}")


def build_matroid(d: dict) -> Matroid:
    """Construct a matroid from a JSON-style descriptor."""
    if not isinstance(d, dict) or "type" not in d:
        raise MalformedDescriptor("descriptor must be an object with a 'type' field")
    t = d["type"]
    try:
        if t == "free":
            _require(d, "n")
            return FreeMatroid(int(d["n"]))
        if t == "uniform":
            _require(d, "n", "k")
            return UniformMatroid(int(d["n"]), int(d["k"]))
        if t == "partition":
            _require(d, "classes", "bounds")
            return PartitionMatroid(d["classes"], [int(b) for b in d["bounds"]])
        if t == "laminar":
            _require(d, "n", "sets")
            return LaminarMatroid(int(d["n"]), [(s["members"], int(s["cap"])) for s in d["sets"]])
        if t == "transversal":
            _require(d, "n", "sets")
            return TransversalMatroid(int(d["n"]), d["sets"])
        if t == "graphic":
            _require(d, "vertices", "edges")
            return GraphicMatroid(int(d["vertices"]), d["edges"])
        if t == "bases":
            _require(d, "n", "bases")
            return ExplicitMatroid(int(d["n"]), d["bases"])
        if t == "dual":
            _require(d, "inner")
            return DualMatroid(build_matroid(d["inner"]))
        if t == "delete":
            _require(d, "inner", "elements")
            return DeletionMatroid(build_matroid(d["inner"]), d["elements"])
        if t == "contract":
            _require(d, "inner", "elements")
            return ContractionMatroid(build_matroid(d["inner"]), d["elements"])
        if t == "parallel":
            _require(d, "inner", "copies")
            return ParallelExtension(build_matroid(d["inner"]), d["copies"])
        if t == "direct_sum":
            _require(d, "parts")
            return DirectSum([build_matroid(p) for p in d["parts"]])
        if t == "union":
            _require(d, "parts")
            return UnionMatroid([build_matroid(p) for p in d["parts"]])
        if t == "maximizer":
            _require(d, "inner", "weights")
            return MaximizerMatroid(build_matroid(d["inner"]), [Fraction(w) for w in d["weights"]])
    except OutOfRange as exc:
        raise MalformedDescriptor(str(exc)) from exc
    except (TypeError, KeyError) as exc:
        raise MalformedDescriptor(f"bad {t!r} descriptor: {exc}") from exc
    raise MalformedDescriptor(f"unknown matroid type {t!r}")


def as_special_partition(m: Matroid) -> PartitionMatroid | None:
    """Detect a partition matroid with classes of size <= 2 and bound 1.

    Loops are tolerated as extra bound-0 classes, since restricting to
    maximum-weight bases or contracting can turn elements into loops.
    Returns an equivalent :class:`PartitionMatroid` or ``None``.
    """
    loops = [e for e in range(m.n) if m.is_loop(e)]
    loopset = set(loops)
    classes: list[list[int]] = []
    assigned: set[int] = set()
    for e in range(m.n):
        if e in loopset or e in assigned:
            continue
        cls = [e] + [f for f in range(e + 1, m.n)
                     if f not in loopset and f not in assigned and not m.is_independent((e, f))]
        if len(cls) > 2:
            return None
        classes.append(cls)
        assigned.update(cls)
    if m.full_rank != len(classes):
        return None
    bounds = [1] * len(classes) + [0] * len(loops)
    return PartitionMatroid(classes + [[e] for e in loops], bounds)
