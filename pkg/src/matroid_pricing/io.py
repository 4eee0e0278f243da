"""JSON file formats. Rationals are always strings ("3", "-2", "1/2")."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import MalformedDescriptor
from .gross_substitutes import ValuationTable
from .matroid import Matroid, build_matroid

__all__ = ["InstanceFile", "parse_rational", "load_json", "dump_json", "load_instance",
           "load_prices", "load_graph"]


def parse_rational(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise MalformedDescriptor(f"rational {s!r} must be a string or integer")
    try:
        return Fraction(s)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise MalformedDescriptor(f"cannot parse rational {s!r}") from exc


def load_json(path) -> dict:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDescriptor(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


@dataclass
class InstanceFile:
    n: int
    matroid1: Matroid | None
    matroid2: Matroid | None
    weights1: list | None = None
    weights2: list | None = None
    valuations: tuple | None = None

    @classmethod
    def from_json(cls, d: dict) -> "InstanceFile":
        if not isinstance(d, dict) or "ground_set" not in d:
            raise MalformedDescriptor("instance lacks 'ground_set'")
        n = d["ground_set"]
        if not isinstance(n, int) or n < 0:
            raise MalformedDescriptor("'ground_set' must be a non-negative integer")
        ms = []
        for key in ("matroid1", "matroid2"):
            m = build_matroid(d[key]) if key in d else None
            if m is not None and m.n != n:
                raise MalformedDescriptor(f"{key} has ground size {m.n}, expected {n}")
            ms.append(m)
        ws = []
        for key in ("weights1", "weights2"):
            w = d.get(key)
            if w is not None:
                if len(w) != n:
                    raise MalformedDescriptor(f"{key} has length {len(w)}, expected {n}")
                w = [parse_rational(x) for x in w]
            ws.append(w)
        vals = d.get("valuations")
        if vals is not None:
            if len(vals) != 2:
                raise MalformedDescriptor("'valuations' must hold exactly two tables")
            vals = tuple(ValuationTable.from_json(v) for v in vals)
            if any(v.n != n for v in vals):
                raise MalformedDescriptor("valuation size differs from 'ground_set'")
        return cls(n, ms[0], ms[1], ws[0], ws[1], vals)

    def require_matroids(self):
        if self.matroid1 is None or self.matroid2 is None:
            raise MalformedDescriptor("instance needs both 'matroid1' and 'matroid2'")
        return self.matroid1, self.matroid2

    def require_weights(self):
        if self.weights1 is None or self.weights2 is None:
            raise MalformedDescriptor("instance needs 'weights1' and 'weights2'")
        return self.weights1, self.weights2

    def require_valuations(self):
        if self.valuations is None:
            raise MalformedDescriptor("instance needs 'valuations'")
        return self.valuations


def load_instance(path) -> InstanceFile:
    return InstanceFile.from_json(load_json(path))


def load_prices(path, n: int | None = None) -> list[Fraction]:
    d = load_json(path)
    prices = d.get("prices") if isinstance(d, dict) else d
    if not isinstance(prices, list):
        raise MalformedDescriptor("price file lacks a 'prices' array")
    if n is not None and len(prices) != n:
        raise MalformedDescriptor(f"price vector has length {len(prices)}, expected {n}")
    return [parse_rational(x) for x in prices]


def load_graph(path) -> tuple[int, int, list]:
    d = load_json(path)
    try:
        U, V, edges = int(d["U"]), int(d["V"]), [tuple(map(int, e)) for e in d["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDescriptor(f"bad graph file: {exc}") from exc
    if any(len(e) != 2 for e in edges):
        raise MalformedDescriptor("each edge must be a [u, v] pair")
    return U, V, edges
