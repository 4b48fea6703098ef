"""Mutable typed graph with schema enforcement.

Nodes are dense integer ids; a merged-away node leaves a hole (its id is never
reused). Edges are undirected and simple per edge type: inserting an existing
edge returns its id. Each edge keeps its id when a merge moves it to the
surviving endpoint; an edge that collapses onto an existing one disappears.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .schema import Schema, SchemaError


class GraphError(ValueError):
    """Unknown node, self-loop or another structural misuse."""


class InvariantError(AssertionError):
    """A stage produced a graph that breaks a global invariant (a bug)."""


def edge_key(etype: str, u: int, v: int) -> tuple[str, int, int]:
    return (etype, u, v) if u < v else (etype, v, u)


class NodeRemap:
    """old node id -> surviving node id, with path compression."""

    def __init__(self):
        self.mapping: dict[int, int] = {}

    def record(self, drop: int, keep: int) -> None:
        self.mapping[drop] = keep

    def resolve(self, x: int) -> int:
        m = self.mapping
        if x not in m:
            return x
        path = []
        while x in m:
            path.append(x)
            x = m[x]
        for p in path:
            m[p] = x
        return x

    def compress(self) -> None:
        for k in list(self.mapping):
            self.resolve(k)

    def __len__(self):
        return len(self.mapping)

    def __contains__(self, x):
        return x in self.mapping


class TypedGraph:
    def __init__(self, schema: Schema):
        self.schema = schema
        self._type: list[str | None] = []
        # node -> neighbour type -> neighbour -> edge types joining the pair
        self._nbrs: list[dict[str, dict[int, set[str]]] | None] = []
        self._edges: dict[tuple[str, int, int], int] = {}
        self._next_eid = 0
        self._by_type: dict[str, dict[int, None]] = {t: {} for t in schema.node_types}
        self.labels: dict[int, frozenset[str]] = {}

    # -- nodes -----------------------------------------------------------

    def add_node(self, node_type: str) -> int:
        if node_type not in self._by_type:
            raise SchemaError(f"unknown node type {node_type!r}")
        v = len(self._type)
        self._type.append(node_type)
        self._nbrs.append({})
        self._by_type[node_type][v] = None
        return v

    def has_node(self, v: int) -> bool:
        return 0 <= v < len(self._type) and self._type[v] is not None

    def _check(self, v: int) -> None:
        if not self.has_node(v):
            raise GraphError(f"unknown node {v}")

    def node_type(self, v: int) -> str:
        self._check(v)
        return self._type[v]

    def nodes(self, node_type: str | None = None) -> list[int]:
        if node_type is None:
            return [v for v, t in enumerate(self._type) if t is not None]
        return list(self._by_type[node_type])

    def count(self, node_type: str) -> int:
        return len(self._by_type[node_type])

    @property
    def num_nodes(self) -> int:
        return sum(len(d) for d in self._by_type.values())

    @property
    def id_bound(self) -> int:
        return len(self._type)

    def set_labels(self, v: int, labels: Iterable[str]) -> None:
        self._check(v)
        if self._type[v] != self.schema.target_type:
            raise SchemaError(f"node {v} of type {self._type[v]!r} cannot carry a label")
        labels = frozenset(str(y) for y in labels)
        bad = labels - set(self.schema.labels)
        if bad:
            raise SchemaError(f"unknown labels {sorted(bad)}")
        self.labels[v] = labels

    # -- edges -----------------------------------------------------------

    def add_edge(self, edge_type: str, u: int, v: int) -> int:
        self._check(u)
        self._check(v)
        if u == v:
            raise GraphError(f"self-loop on node {u}")
        et = self.schema.edge_type(edge_type)
        tu, tv = self._type[u], self._type[v]
        if not et.connects(tu, tv):
            raise SchemaError(
                f"edge type {edge_type!r} ({et.src}-{et.dst}) cannot join {tu!r} and {tv!r}"
            )
        key = edge_key(edge_type, u, v)
        eid = self._edges.get(key)
        if eid is not None:
            return eid
        eid = self._next_eid
        self._next_eid += 1
        self._link(key, eid)
        return eid

    def _link(self, key, eid) -> None:
        et, a, b = key
        self._edges[key] = eid
        self._nbrs[a].setdefault(self._type[b], {}).setdefault(b, set()).add(et)
        self._nbrs[b].setdefault(self._type[a], {}).setdefault(a, set()).add(et)

    def _unlink(self, key) -> int:
        et, a, b = key
        eid = self._edges.pop(key)
        for x, y in ((a, b), (b, a)):
            group = self._nbrs[x][self._type[y]]
            ets = group[y]
            ets.discard(et)
            if not ets:
                del group[y]
        return eid

    def has_edge(self, u: int, v: int, edge_type: str | None = None) -> bool:
        if not (self.has_node(u) and self.has_node(v)):
            return False
        ets = self._nbrs[u].get(self._type[v], {}).get(v)
        if not ets:
            return False
        return edge_type is None or edge_type in ets

    def edge_id(self, edge_type: str, u: int, v: int) -> int | None:
        return self._edges.get(edge_key(edge_type, u, v))

    def remove_edge(self, edge_type: str, u: int, v: int) -> int:
        key = edge_key(edge_type, u, v)
        if key not in self._edges:
            raise GraphError(f"no {edge_type!r} edge between {u} and {v}")
        return self._unlink(key)

    def edges(self) -> Iterator[tuple[int, str, int, int]]:
        """(edge id, edge type, lower endpoint, higher endpoint), by edge id."""
        for (et, a, b), eid in sorted(self._edges.items(), key=lambda kv: kv[1]):
            yield eid, et, a, b

    def edge_keys(self):
        return self._edges.keys()

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int, node_type: str | None = None) -> list[int]:
        self._check(v)
        groups = self._nbrs[v]
        if node_type is not None:
            return list(groups.get(node_type, ()))
        return [u for g in groups.values() for u in g]

    def edge_types_to(self, v: int, u: int) -> set[str]:
        return set(self._nbrs[v].get(self._type[u], {}).get(u, ()))

    def degree(self, v: int) -> int:
        self._check(v)
        return sum(len(g) for g in self._nbrs[v].values())

    def degree_by_type(self, v: int, neighbor_type: str) -> int:
        """Number of distinct neighbours of ``v`` whose type is ``neighbor_type``."""
        self._check(v)
        return len(self._nbrs[v].get(neighbor_type, ()))

    # -- merging ---------------------------------------------------------

    def contract(self, keep: int, drop: int) -> None:
        """Move every edge of ``drop`` onto ``keep`` and delete ``drop``.

        No validation; callers go through :func:`hingen.merge.merge_pair`.
        """
        moved = []
        for group in self._nbrs[drop].values():
            for u, ets in group.items():
                for et in ets:
                    moved.append((et, u))
        for et, u in moved:
            eid = self._unlink(edge_key(et, drop, u))
            if u == keep:
                continue
            key = edge_key(et, keep, u)
            if key not in self._edges:
                self._link(key, eid)
        t = self._type[drop]
        del self._by_type[t][drop]
        self._type[drop] = None
        self._nbrs[drop] = None
        if drop in self.labels:
            lab = self.labels.pop(drop)
            self.labels[keep] = self.labels.get(keep, frozenset()) | lab

    # -- bulk ------------------------------------------------------------

    def absorb(self, other: "TypedGraph") -> dict[int, int]:
        """Disjoint union in place; returns other's id -> new id."""
        if other.schema != self.schema:
            raise SchemaError("cannot union graphs bound to different schemas")
        mapping = {}
        for v, t in enumerate(other._type):
            if t is not None:
                mapping[v] = self.add_node(t)
        for _, et, a, b in other.edges():
            key = edge_key(et, mapping[a], mapping[b])
            self._link(key, self._next_eid)
            self._next_eid += 1
        for v, lab in other.labels.items():
            self.labels[mapping[v]] = lab
        return mapping

    @classmethod
    def from_parts(cls, schema: Schema, node_types, edges, labels) -> "TypedGraph":
        """Graph with the given id space (None marks a hole) and (eid, etype, u, v) edges."""
        g = cls(schema)
        g._type = list(node_types)
        g._nbrs = [None if t is None else {} for t in g._type]
        for v, t in enumerate(g._type):
            if t is not None:
                g._by_type[t][v] = None
        for eid, et, u, v in edges:
            g._link(edge_key(et, u, v), eid)
            g._next_eid = max(g._next_eid, eid + 1)
        g.labels = dict(labels)
        return g

    def copy(self) -> "TypedGraph":
        g = TypedGraph(self.schema)
        g.absorb(self)
        return g

    def compacted(self) -> tuple["TypedGraph", dict[int, int]]:
        """Copy with dense ids 0..n-1 in ascending old-id order."""
        g = TypedGraph(self.schema)
        return g, g.absorb(self)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(src, dst, edge-type index) int64 arrays in edge-id order."""
        idx = {et.name: i for i, et in enumerate(self.schema.edge_types)}
        rows = [(a, b, idx[et]) for _, et, a, b in self.edges()]
        arr = np.array(rows, dtype=np.int64).reshape(-1, 3)
        return arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy()

    def type_array(self) -> np.ndarray:
        """Node-type index per id, -1 for merged-away holes."""
        idx = {t: i for i, t in enumerate(self.schema.node_types)}
        return np.array([idx[t] if t is not None else -1 for t in self._type], dtype=np.int64)

    # -- invariants ------------------------------------------------------

    def check(self) -> None:
        """Raise InvariantError unless schema legality, simplicity and adjacency symmetry hold."""
        seen = 0
        for (et, a, b), _ in self._edges.items():
            if a == b:
                raise InvariantError(f"self-loop on {a}")
            if not (self.has_node(a) and self.has_node(b)):
                raise InvariantError(f"edge {et} {a}-{b} touches a removed node")
            if not self.schema.edge_type(et).connects(self._type[a], self._type[b]):
                raise InvariantError(f"schema-illegal edge {et} {a}-{b}")
            if et not in self._nbrs[a][self._type[b]].get(b, ()):
                raise InvariantError(f"adjacency of {a} misses {b}")
            if et not in self._nbrs[b][self._type[a]].get(a, ()):
                raise InvariantError(f"adjacency of {b} misses {a}")
        for v, groups in enumerate(self._nbrs):
            if groups is None:
                continue
            for t, group in groups.items():
                for u, ets in group.items():
                    if self._type[u] != t:
                        raise InvariantError(f"neighbour {u} of {v} filed under wrong type")
                    seen += len(ets)
        if seen != 2 * len(self._edges):
            raise InvariantError("adjacency and edge table disagree")
        for v in self.labels:
            if self._type[v] != self.schema.target_type:
                raise InvariantError(f"label on non-target node {v}")

    def __repr__(self):
        return f"TypedGraph(nodes={self.num_nodes}, edges={self.num_edges})"


def new_graph(schema: Schema) -> TypedGraph:
    return TypedGraph(schema)
