"""End-to-end generation: motifs, base subgraphs, merges, features, pruning."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .features import FeatureSpec, sample_centers, sample_features
from .graph import InvariantError, TypedGraph
from .groundtruth import GroundTruthMap, VerifyReport, verify_ground_truth
from .merge import build_clusters, inter_cluster_merge
from .metrics import component_count
from .motif import build_motif_template, enumerate_metapaths
from .params import GeneratorParams
from .prune import DegreeCaps, PruneReport, prune
from .reference import ReferenceProfile
from .rng import substream
from .subgraph import generate_pool

STAGES = ("motif", "subgraphs", "intra_merge", "inter_merge", "features", "prune")


class StageError(RuntimeError):
    def __init__(self, stage: str, exc: Exception):
        self.stage = stage
        self.cause = exc
        super().__init__(f"stage {stage!r} failed: {exc}")


@dataclass
class GenerationResult:
    graph: TypedGraph
    feature_ids: np.ndarray
    features: np.ndarray
    gt: GroundTruthMap
    manifest: dict
    prune_report: PruneReport | None = None
    verify: VerifyReport | None = None
    centers: dict = field(default_factory=dict)


class _Stages:
    def __init__(self):
        self.timings = {}
        self.counts = {}

    def run(self, name, fn, *args, **kw):
        t0 = time.perf_counter()
        try:
            out = fn(*args, **kw)
        except (InvariantError, StageError):
            raise
        except Exception as exc:
            raise StageError(name, exc) from exc
        self.timings[name] = self.timings.get(name, 0.0) + time.perf_counter() - t0
        return out

    def count(self, name, nodes, edges, **extra):
        self.counts[name] = {"nodes": int(nodes), "edges": int(edges), **extra}


def _conserve(stage, expected, got):
    if expected != got:
        raise InvariantError(f"{stage}: expected {expected} nodes after merging, found {got}")


def generate(params: GeneratorParams, profile: ReferenceProfile, verify: bool = False, workers: int = 1) -> GenerationResult:
    """Run the six stages in order; a pure function of (params, profile).

    ``workers`` threads build the label clusters; it never changes the output.

    With ``verify`` every stage boundary checks schema legality and node
    conservation and raises InvariantError on failure.
    """
    schema = profile.schema
    params.validate(schema)
    seed = params.seed
    st = _Stages()

    metapaths = st.run("motif", enumerate_metapaths, schema, params.max_hops)
    if not metapaths:
        raise StageError("motif", ValueError("schema has no meta-path between target nodes"))
    template = st.run("motif", build_motif_template, metapaths, params.bridge_ranges)

    freqs = profile.label_frequencies if params.label_policy == "proportional" else None
    rngs = {name: substream(seed, name) for name in ("motif", "attach", "labels")}
    pool = st.run("subgraphs", generate_pool, template, params.n_motifs, schema, profile.degree_dists, freqs, rngs)
    pool_nodes = {y: sum(sg.graph.num_nodes for sg in sgs) for y, sgs in pool.items()}
    st.count(
        "subgraphs",
        sum(pool_nodes.values()),
        sum(sg.graph.num_edges for sgs in pool.values() for sg in sgs),
        per_label={y: len(sgs) for y, sgs in pool.items()},
    )
    if verify:
        for sgs in pool.values():
            for sg in sgs:
                sg.graph.check()

    intra_rngs = {y: substream(seed, "intra", y) for y in pool}
    clusters = st.run("intra_merge", build_clusters, pool, params.p, intra_rngs, workers, verify)
    n_intra = sum(c.merges for c in clusters)
    st.count("intra_merge", sum(c.graph.num_nodes for c in clusters), sum(c.graph.num_edges for c in clusters), merges=n_intra)
    if verify:
        for c in clusters:
            _conserve(f"intra_merge[{c.label}]", pool_nodes[c.label] - c.merges, c.graph.num_nodes)

    before_inter = sum(c.graph.num_nodes for c in clusters)
    g, _, gt, plans = st.run("inter_merge", inter_cluster_merge, clusters, params.q, params.multi_label, substream(seed, "inter"))
    n_inter = sum(len(pl) for pl in plans)
    st.count("inter_merge", g.num_nodes, g.num_edges, merges=n_inter, components=component_count(g))
    if verify:
        g.check()
        _conserve("inter_merge", before_inter - n_inter, g.num_nodes)

    def _features():
        centers = sample_centers(schema.labels, params.feature_dim, params.beta, substream(seed, "features", "centers"))
        spec = FeatureSpec(params.feature_dim, params.alpha, params.beta, centers)
        ids, x = sample_features(g, spec, substream(seed, "features", "nodes"), params.multi_label_mode)
        return centers, ids, x

    centers, fids, fx = st.run("features", _features)

    report = None
    if params.prune:
        caps = DegreeCaps.from_keys(params.caps if params.caps is not None else profile.degree_caps)
        g, report = st.run("prune", prune, g, caps, gt, substream(seed, "prune"))
        st.count("prune", g.num_nodes, g.num_edges, removed=report.removed_total, violations=len(report.violations))
        if verify:
            g.check()

    g, dense = g.compacted()
    gt = gt.mapped(dense.__getitem__)
    fids = np.array([dense[v] for v in fids.tolist()], dtype=np.int64)
    vr = verify_ground_truth(g, gt)
    if verify and vr.degraded:
        raise InvariantError(f"{len(vr.degraded)} target nodes lost motif nodes or edges")

    manifest = {
        "params": params.to_dict(),
        "seed": seed,
        "kernel_backend": kernels.BACKEND,
        "metapaths": [mp.key for mp in metapaths],
        "bridge_ranges": {k: list(v) for k, v in template.bridge_ranges.items()},
        "stages": list(STAGES if params.prune else STAGES[:-1]),
        "counts": st.counts,
        "final": {
            "nodes": g.num_nodes,
            "edges": g.num_edges,
            "targets": g.count(schema.target_type),
            "components": component_count(g),
            "nodes_by_type": {t: g.count(t) for t in schema.node_types},
        },
        "prune": report.to_dict() if report else None,
        "ground_truth": {
            "motifs": len(gt),
            "intact_fraction": vr.intact_fraction,
            "degraded": len(vr.degraded),
            "broken_motifs": len(vr.broken_motifs),
            "flagged": len(vr.flagged),
        },
        "minor_features": params.minor_features,
        "timings": st.timings,
    }
    return GenerationResult(g, fids, fx, gt, manifest, report, vr, centers)
