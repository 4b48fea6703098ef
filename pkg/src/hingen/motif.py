"""Meta-path enumeration and major-motif templates.

A major motif joins two target-type anchors through every meta-path the
schema allows within a hop budget. Each meta-path is realised by one or more
node-disjoint bridges whose count is drawn from a configured range.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import TypedGraph, edge_key
from .params import path_key
from .schema import Schema


@dataclass(frozen=True)
class MetaPath:
    types: tuple[str, ...]

    @property
    def hops(self) -> int:
        return len(self.types) - 1

    @property
    def key(self) -> str:
        return path_key(self.types)

    def __str__(self):
        return self.key


def _canonical(seq: tuple[str, ...]) -> tuple[str, ...]:
    rev = seq[::-1]
    return min(seq, rev)


def enumerate_metapaths(schema: Schema, max_hops: int = 2) -> list[MetaPath]:
    """All target-to-target type sequences of 2..max_hops hops, one per reversal pair.

    Intermediate types must differ from the target type; ordered by hop count
    and then lexicographically.
    """
    if max_hops < 2:
        raise ValueError("max_hops must be >= 2")
    tgt = schema.target_type
    found: set[tuple[str, ...]] = set()
    stack: list[tuple[str, ...]] = [(tgt,)]
    while stack:
        seq = stack.pop()
        for nxt in schema.neighbor_types(seq[-1]):
            cand = seq + (nxt,)
            if nxt == tgt:
                if len(cand) >= 3:
                    found.add(_canonical(cand))
                continue
            if len(cand) - 1 < max_hops:
                stack.append(cand)
    return [MetaPath(s) for s in sorted(found, key=lambda s: (len(s), s))]


@dataclass
class MotifTemplate:
    target_type: str
    metapaths: tuple[MetaPath, ...]
    bridge_ranges: dict[str, tuple[int, int]]
    template_id: int = 0

    def range_for(self, mp: MetaPath) -> tuple[int, int]:
        return self.bridge_ranges[mp.key]


def build_motif_template(metapaths, bridge_ranges=None, template_id: int = 0) -> MotifTemplate:
    metapaths = tuple(metapaths)
    if not metapaths:
        raise ValueError("a motif needs at least one meta-path")
    target = metapaths[0].types[0]
    ranges = {}
    given = dict(bridge_ranges or {})
    for mp in metapaths:
        lo, hi = given.pop(mp.key, None) or given.pop(path_key(mp.types[::-1]), None) or (1, 1)
        if lo < 1 or hi < lo:
            raise ValueError(f"bridge range for {mp.key} must satisfy 1 <= min <= max, got [{lo}, {hi}]")
        ranges[mp.key] = (int(lo), int(hi))
    if given:
        raise ValueError(f"bridge ranges given for unknown meta-paths: {sorted(given)}")
    return MotifTemplate(target, metapaths, ranges, template_id)


@dataclass
class MotifInstance:
    """Concrete motif inside a graph: anchors, bridge nodes and motif edges.

    ``edges`` hold (edge type, lo, hi) keys so they survive node remapping;
    ``bridges`` list, per meta-path key, the node sequence of each bridge.
    """

    template_id: int
    anchors: tuple[int, int]
    nodes: list[int]
    edges: list[tuple[str, int, int]]
    bridges: dict[str, list[tuple[int, ...]]] = field(default_factory=dict)


def instantiate_motif(template: MotifTemplate, rng: np.random.Generator, g: TypedGraph) -> MotifInstance:
    """Add a fresh copy of ``template`` to ``g`` (which allocates the ids)."""
    schema = g.schema
    a0 = g.add_node(template.target_type)
    a1 = g.add_node(template.target_type)
    nodes = [a0, a1]
    edges = []
    bridges = {}
    for mp in template.metapaths:
        lo, hi = template.range_for(mp)
        count = int(rng.integers(lo, hi + 1))
        realised = []
        for _ in range(count):
            chain = [a0] + [g.add_node(t) for t in mp.types[1:-1]] + [a1]
            nodes.extend(chain[1:-1])
            for i in range(len(chain) - 1):
                et = schema.edge_type_for(mp.types[i], mp.types[i + 1]).name
                g.add_edge(et, chain[i], chain[i + 1])
                edges.append(edge_key(et, chain[i], chain[i + 1]))
            realised.append(tuple(chain))
        bridges[mp.key] = realised
    return MotifInstance(template.template_id, (a0, a1), nodes, edges, bridges)
