"""Base subgraphs: a motif plus minor nodes matching the reference target degrees."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import TypedGraph
from .groundtruth import MotifRecord
from .motif import MotifInstance, MotifTemplate, instantiate_motif
from .reference import DegreeDistribution
from .schema import Schema, SchemaError


@dataclass
class BaseSubgraph:
    graph: TypedGraph
    motif: MotifInstance
    label: str | None = None
    index: int = 0

    def record(self, motif_id: int) -> MotifRecord:
        m = self.motif
        return MotifRecord(motif_id, m.template_id, m.anchors, tuple(m.nodes), tuple(m.edges))


class _Sampler:
    def __init__(self, dist: DegreeDistribution):
        self.ks, self.cdf = dist.sampler()

    def draw(self, rng) -> int:
        return int(self.ks[np.searchsorted(self.cdf, rng.random(), side="right")])


def _samplers(schema: Schema, dists: dict) -> dict:
    out = {}
    for phi in schema.minor_types:
        d = dists.get(phi)
        if d is None:
            if phi in schema.neighbor_types(schema.target_type):
                raise SchemaError(f"no degree distribution for minor type {phi!r}")
            d = DegreeDistribution.point_mass(schema.target_type, phi)
        out[phi] = d if isinstance(d, _Sampler) else _Sampler(d)
    return out


def attach_minor_nodes(g: TypedGraph, instance: MotifInstance, dists, rng) -> BaseSubgraph:
    """Top each anchor up to a sampled per-type degree with fresh degree-1 minor nodes.

    The motif's own contribution is a floor: a draw below it attaches nothing.
    """
    schema = g.schema
    samplers = dists if _is_prepared(dists) else _samplers(schema, dists)
    adjacent = set(schema.neighbor_types(schema.target_type))
    for t in instance.anchors:
        for phi in schema.minor_types:
            k = samplers[phi].draw(rng)
            need = k - g.degree_by_type(t, phi)
            if need <= 0:
                continue
            if phi not in adjacent:
                raise SchemaError(
                    f"sampled {k} {phi!r} neighbours but no edge type joins {phi!r} to {schema.target_type!r}"
                )
            et = schema.edge_type_for(schema.target_type, phi).name
            for _ in range(need):
                g.add_edge(et, t, g.add_node(phi))
    return BaseSubgraph(g, instance)


def _is_prepared(dists) -> bool:
    return bool(dists) and all(isinstance(v, _Sampler) for v in dists.values())


def label_subgraph(sg: BaseSubgraph, y) -> BaseSubgraph:
    y = str(y)
    if y not in sg.graph.schema.labels:
        raise SchemaError(f"unknown label {y!r}")
    for a in sg.motif.anchors:
        sg.graph.set_labels(a, [y])
    sg.label = y
    return sg


def draw_labels(labels, n: int, frequencies: dict | None, rng) -> list[str]:
    """One label per subgraph; every label occurs at least once.

    The first ``len(labels)`` slots cover each label once, the rest are drawn
    from ``frequencies`` (uniform when None), and the sequence is shuffled.
    """
    labels = list(labels)
    if n < len(labels):
        raise ValueError(f"need at least {len(labels)} subgraphs for {len(labels)} labels, got {n}")
    if frequencies is None:
        probs = np.full(len(labels), 1.0 / len(labels))
    else:
        probs = np.array([frequencies.get(y, 0.0) for y in labels], dtype=np.float64)
        if probs.sum() <= 0:
            probs = np.full(len(labels), 1.0 / len(labels))
        probs = probs / probs.sum()
    extra = rng.choice(len(labels), size=n - len(labels), p=probs)
    seq = np.concatenate([np.arange(len(labels)), extra])
    rng.shuffle(seq)
    return [labels[i] for i in seq.tolist()]


def generate_pool(template: MotifTemplate, n: int, schema: Schema, dists, label_frequencies, rngs) -> dict[str, list[BaseSubgraph]]:
    """``n`` labelled base subgraphs grouped by label, each in its own graph.

    ``rngs`` maps "motif", "attach" and "labels" to generators;
    ``label_frequencies=None`` draws labels uniformly.
    """
    labels = draw_labels(schema.labels, n, label_frequencies, rngs["labels"])
    samplers = _samplers(schema, dists)
    pool: dict[str, list[BaseSubgraph]] = {y: [] for y in schema.labels}
    for i, y in enumerate(labels):
        g = TypedGraph(schema)
        inst = instantiate_motif(template, rngs["motif"], g)
        sg = attach_minor_nodes(g, inst, samplers, rngs["attach"])
        sg.index = i
        pool[y].append(label_subgraph(sg, y))
    return pool
