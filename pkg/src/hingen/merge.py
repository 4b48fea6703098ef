"""Node merging and the intra-/inter-cluster merge phases.

Merging ``drop`` into ``keep`` reconnects every neighbour of ``drop`` (other
than ``keep`` itself) to ``keep`` and deletes ``drop``. A merge plan is a set
of node-disjoint pairs, so the order in which its pairs are applied does not
change the result.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import GraphError, NodeRemap, TypedGraph
from .groundtruth import GroundTruthMap
from .schema import SchemaError
from .subgraph import BaseSubgraph


@dataclass
class MergePlan:
    node_type: str
    pairs: list[tuple[int, int]]
    provenance: str = ""

    def __len__(self):
        return len(self.pairs)


@dataclass
class Cluster:
    label: str
    graph: TypedGraph
    gt: GroundTruthMap
    merges: int = 0
    subgraphs: int = 0


def merge_pair(g: TypedGraph, keep: int, drop: int, remap: NodeRemap | None = None) -> NodeRemap:
    if not g.has_node(keep):
        raise GraphError(f"unknown node {keep}")
    if not g.has_node(drop):
        raise GraphError(f"unknown node {drop}")
    if keep == drop:
        raise GraphError(f"cannot merge node {keep} with itself")
    if g.node_type(keep) != g.node_type(drop):
        raise SchemaError(
            f"cannot merge {g.node_type(drop)!r} node {drop} into {g.node_type(keep)!r} node {keep}"
        )
    g.contract(keep, drop)
    remap = remap if remap is not None else NodeRemap()
    remap.record(drop, keep)
    return remap


def check_disjoint(pairs) -> None:
    seen = set()
    for keep, drop in pairs:
        if keep in seen or drop in seen or keep == drop:
            raise GraphError(f"merge pairs are not node-disjoint at ({keep}, {drop})")
        seen.add(keep)
        seen.add(drop)


def apply_pairs(g: TypedGraph, pairs, remap: NodeRemap | None = None) -> NodeRemap:
    """Sequentially merge node-disjoint (keep, drop) pairs."""
    pairs = list(pairs)
    check_disjoint(pairs)
    remap = remap if remap is not None else NodeRemap()
    for keep, drop in pairs:
        merge_pair(g, keep, drop, remap)
    return remap


def merge_batch(g: TypedGraph, pairs) -> tuple[TypedGraph, NodeRemap]:
    """Apply all node-disjoint pairs at once with the edge-contraction kernel.

    Returns a new graph in the same id space (dropped ids become holes).
    Equivalent to :func:`apply_pairs` up to edge ids.
    """
    pairs = list(pairs)
    check_disjoint(pairs)
    remap = NodeRemap()
    rm = np.arange(g.id_bound, dtype=np.int64)
    types = list(g._type)
    labels = dict(g.labels)
    for keep, drop in pairs:
        if not (g.has_node(keep) and g.has_node(drop)):
            raise GraphError(f"unknown node in pair ({keep}, {drop})")
        if types[keep] != types[drop]:
            raise SchemaError(f"cannot merge {types[drop]!r} node {drop} into {types[keep]!r} node {keep}")
        rm[drop] = keep
        types[drop] = None
        remap.record(drop, keep)
        if drop in labels:
            labels[keep] = labels.get(keep, frozenset()) | labels.pop(drop)
    eids, ets, src, dst = [], [], [], []
    for eid, et, a, b in g.edges():
        eids.append(eid)
        ets.append(et)
        src.append(a)
        dst.append(b)
    et_names = [et.name for et in g.schema.edge_types]
    et_idx = {n: i for i, n in enumerate(et_names)}
    lo, hi, et_out, idx = kernels.contract_edges(
        np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64),
        np.array([et_idx[e] for e in ets], dtype=np.int64), rm,
    )
    edges = [(eids[i], et_names[t], u, v) for i, t, u, v in zip(idx.tolist(), et_out.tolist(), lo.tolist(), hi.tolist())]
    return TypedGraph.from_parts(g.schema, types, edges, labels), remap


# -- intra-cluster ------------------------------------------------------------


def plan_intra_merge(cluster: TypedGraph, incoming: TypedGraph, p: dict, rng, provenance="intra") -> list[MergePlan]:
    """Per minor type: n ~ Binomial(|incoming nodes of that type|, p), capped by both sides.

    Pairs are (cluster node, incoming node) and form a uniformly random
    partial matching between the two sides.
    """
    schema = cluster.schema
    plans = []
    for phi in schema.minor_types:
        inc = incoming.nodes(phi)
        cl = cluster.nodes(phi)
        n = int(rng.binomial(len(inc), p.get(phi, 0.0))) if inc else 0
        n = min(n, len(inc), len(cl))
        pairs = []
        if n:
            ci = rng.choice(len(cl), size=n, replace=False)
            ii = rng.choice(len(inc), size=n, replace=False)
            pairs = [(cl[a], inc[b]) for a, b in zip(ci.tolist(), ii.tolist())]
        plans.append(MergePlan(phi, pairs, provenance))
    return plans


def intra_cluster_merge(label, subgraphs: list[BaseSubgraph], p: dict, rng, check=False) -> Cluster:
    """Grow one cluster by merging its base subgraphs in pool order."""
    if not subgraphs:
        raise ValueError(f"no base subgraphs for label {label!r}")
    g = TypedGraph(subgraphs[0].graph.schema)
    gt = GroundTruthMap()
    remap = NodeRemap()
    merges = 0
    for i, sg in enumerate(subgraphs):
        plans = plan_intra_merge(g, sg.graph, p, rng, provenance=f"intra:{label}:{i}") if i else []
        m = g.absorb(sg.graph)
        gt.add(sg.record(sg.index).mapped(m.__getitem__))
        for plan in plans:
            for keep, drop in plan.pairs:
                merge_pair(g, keep, m[drop], remap)
                merges += 1
    if check:
        g.check()
    return Cluster(str(label), g, gt.mapped(remap.resolve), merges, len(subgraphs))


def build_clusters(pool: dict, p: dict, rngs: dict, workers: int = 1, check=False) -> list[Cluster]:
    """Intra-cluster merge for every label; clusters are independent so may run in threads.

    ``rngs`` maps each label to its own generator; output is in label order.
    """
    labels = list(pool)
    job = lambda y: intra_cluster_merge(y, pool[y], p, rngs[y], check=check)
    if workers > 1 and len(labels) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(job, labels))
    return [job(y) for y in labels]


# -- inter-cluster ------------------------------------------------------------


def _max_cross_pairs(sizes) -> int:
    total = int(sum(sizes))
    biggest = int(max(sizes)) if len(sizes) else 0
    return min(total // 2, total - biggest)


def _sample_cross_pairs(parts: list[list[int]], n: int, rng) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """n node-disjoint pairs, each joining two different parts.

    Every step picks a pair of parts with probability proportional to the
    number of remaining cross pairs between them, then a random remaining
    node from each. A step that would leave too few nodes for the rest falls
    back to pairing the two largest parts.
    """
    k = len(parts)
    pools = [list(rng.permutation(len(part))) for part in parts]
    r = np.array([len(part) for part in parts], dtype=np.int64)
    iu, ju = np.triu_indices(k, 1)
    out = []
    for step in range(n):
        left = n - step
        w = (r[iu] * r[ju]).astype(np.float64)
        c = int(rng.choice(len(w), p=w / w.sum()))
        a, b = int(iu[c]), int(ju[c])
        r2 = r.copy()
        r2[a] -= 1
        r2[b] -= 1
        if _max_cross_pairs(r2) < left - 1:
            order = np.argsort(-r, kind="stable")
            a, b = sorted((int(order[0]), int(order[1])))
        r[a] -= 1
        r[b] -= 1
        out.append(((a, parts[a][pools[a].pop()]), (b, parts[b][pools[b].pop()])))
    return out


def plan_inter_merge(clusters: list[Cluster], q: dict, multi_label: bool, rng) -> list[MergePlan]:
    """Per node type: n ~ Binomial(total nodes of that type, q), capped at the feasible maximum.

    Pairs are ((cluster index, node), (cluster index, node)) with the lower
    cluster index first. Target nodes are only planned in multi-label mode.
    """
    if len(clusters) < 2:
        return []
    schema = clusters[0].graph.schema
    types = schema.node_types if multi_label else schema.minor_types
    plans = []
    for phi in types:
        parts = [c.graph.nodes(phi) for c in clusters]
        sizes = [len(x) for x in parts]
        total = sum(sizes)
        n = int(rng.binomial(total, q.get(phi, 0.0))) if total else 0
        n = min(n, _max_cross_pairs(sizes))
        pairs = _sample_cross_pairs(parts, n, rng) if n else []
        plans.append(MergePlan(phi, pairs, "inter"))
    return plans


def disjoint_union(clusters: list[Cluster]) -> tuple[TypedGraph, GroundTruthMap, list[dict[int, int]]]:
    g = TypedGraph(clusters[0].graph.schema)
    gt = GroundTruthMap()
    maps = []
    for c in clusters:
        m = g.absorb(c.graph)
        maps.append(m)
        for rec in c.gt.mapped(m.__getitem__).records:
            gt.add(rec)
    gt.records.sort(key=lambda r: r.motif_id)
    return g, gt, maps


def inter_cluster_merge(clusters: list[Cluster], q: dict, multi_label: bool, rng):
    """Disjoint union of all clusters, then every planned pair merged in one pass.

    Returns (graph, remap, ground truth, plans).
    """
    if any(c.graph.num_nodes == 0 for c in clusters):
        raise ValueError("every cluster must be non-empty")
    g, gt, maps = disjoint_union(clusters)
    plans = plan_inter_merge(clusters, q, multi_label, rng)
    pairs = []
    for plan in plans:
        for (ca, va), (cb, vb) in plan.pairs:
            x, y = maps[ca][va], maps[cb][vb]
            pairs.append((x, y) if x < y else (y, x))
    merged, remap = merge_batch(g, pairs)
    return merged, remap, gt.mapped(remap.resolve), plans
