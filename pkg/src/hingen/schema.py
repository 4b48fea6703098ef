"""Schema of a heterogeneous information network."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable


class SchemaError(ValueError):
    """Raised for an invalid schema or an edge that violates one."""


@dataclass(frozen=True)
class EdgeType:
    name: str
    src: str
    dst: str

    def connects(self, a: str, b: str) -> bool:
        return (self.src, self.dst) in ((a, b), (b, a))


@dataclass(frozen=True)
class Schema:
    """Node types, legal edge types, the labelled target type and its label set.

    Edge types are undirected: an edge type declared ``movie -> actor`` also
    accepts ``actor, movie`` endpoints.
    """

    node_types: tuple[str, ...]
    edge_types: tuple[EdgeType, ...]
    target_type: str
    labels: tuple[str, ...]
    _by_name: dict = field(init=False, repr=False, compare=False)
    _by_pair: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "node_types", tuple(self.node_types))
        object.__setattr__(self, "edge_types", tuple(self.edge_types))
        object.__setattr__(self, "labels", tuple(str(y) for y in self.labels))
        if len(set(self.node_types)) != len(self.node_types):
            raise SchemaError("duplicate node type")
        if self.target_type not in self.node_types:
            raise SchemaError(f"target type {self.target_type!r} is not a declared node type")
        if not self.labels:
            raise SchemaError("label set is empty")
        if len(set(self.labels)) != len(self.labels):
            raise SchemaError("duplicate label")
        by_name = {}
        by_pair: dict[tuple[str, str], list[EdgeType]] = {}
        for et in self.edge_types:
            for end in (et.src, et.dst):
                if end not in self.node_types:
                    raise SchemaError(f"edge type {et.name!r} references unknown node type {end!r}")
            if et.name in by_name:
                raise SchemaError(f"duplicate edge type {et.name!r}")
            by_name[et.name] = et
            by_pair.setdefault((et.src, et.dst), []).append(et)
            if et.src != et.dst:
                by_pair.setdefault((et.dst, et.src), []).append(et)
        object.__setattr__(self, "_by_name", by_name)
        object.__setattr__(self, "_by_pair", by_pair)

    @property
    def minor_types(self) -> tuple[str, ...]:
        return tuple(t for t in self.node_types if t != self.target_type)

    def edge_type(self, name: str) -> EdgeType:
        try:
            return self._by_name[name]
        except KeyError:
            raise SchemaError(f"unknown edge type {name!r}") from None

    def edge_types_between(self, a: str, b: str) -> list[EdgeType]:
        return list(self._by_pair.get((a, b), ()))

    def edge_type_for(self, a: str, b: str) -> EdgeType:
        """First declared edge type joining node types ``a`` and ``b``."""
        ets = self._by_pair.get((a, b))
        if not ets:
            raise SchemaError(f"no edge type joins {a!r} and {b!r}")
        return ets[0]

    def neighbor_types(self, t: str) -> list[str]:
        out = []
        for et in self.edge_types:
            for a, b in ((et.src, et.dst), (et.dst, et.src)):
                if a == t and b not in out:
                    out.append(b)
        return [n for n in self.node_types if n in out]

    def edge_type_index(self, name: str) -> int:
        return [et.name for et in self.edge_types].index(name)

    def to_dict(self) -> dict:
        return {
            "node_types": list(self.node_types),
            "edge_types": [{"name": e.name, "src": e.src, "dst": e.dst} for e in self.edge_types],
            "target_type": self.target_type,
            "labels": list(self.labels),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Schema":
        allowed = {"node_types", "edge_types", "target_type", "labels"}
        unknown = set(d) - allowed
        if unknown:
            raise SchemaError(f"unknown schema keys: {sorted(unknown)}")
        missing = allowed - set(d)
        if missing:
            raise SchemaError(f"missing schema keys: {sorted(missing)}")
        ets = []
        for e in d["edge_types"]:
            if set(e) != {"name", "src", "dst"}:
                raise SchemaError(f"edge type entries need exactly name/src/dst, got {sorted(e)}")
            ets.append(EdgeType(str(e["name"]), str(e["src"]), str(e["dst"])))
        return cls(
            node_types=tuple(d["node_types"]),
            edge_types=tuple(ets),
            target_type=d["target_type"],
            labels=tuple(d["labels"]),
        )

    @classmethod
    def load(cls, path) -> "Schema":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"{path}:{exc.lineno}: {exc.msg}") from None
        return cls.from_dict(data)


def make_schema(
    target: str,
    relations: Iterable[tuple[str, str]],
    labels: Iterable,
    extra_types: Iterable[str] = (),
) -> Schema:
    """Shorthand: edge types named ``src-dst`` from endpoint pairs."""
    relations = list(relations)
    types = [target]
    for a, b in relations:
        for t in (a, b):
            if t not in types:
                types.append(t)
    types.extend(t for t in extra_types if t not in types)
    return Schema(
        node_types=tuple(types),
        edge_types=tuple(EdgeType(f"{a}-{b}", a, b) for a, b in relations),
        target_type=target,
        labels=tuple(labels),
    )
