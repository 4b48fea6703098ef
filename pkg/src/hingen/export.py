"""Writing a generated network to disk.

Layout of an output directory::

    schema.json            the schema the graph obeys
    nodes.tsv              id, type
    edges/<edge type>.tsv  src, dst (src has the edge type's source type)
    labels.tsv             id, comma-joined labels
    features.tsv           id, then one column per feature dimension
    ground_truth.tsv       target id, motif ids, motif nodes, motif edges, status
    manifest.json          parameters, counts, pruning report, file digests
"""

from __future__ import annotations

import json
import os

from .groundtruth import GroundTruthMap
from .pipeline import GenerationResult
from .textio import tree_digests, write_rows

ARTIFACTS = ("nodes.tsv", "edges", "labels.tsv", "features.tsv", "ground_truth.tsv", "manifest.json")


def write_graph(g, out_dir) -> None:
    """schema.json, nodes.tsv, edges/ and labels.tsv: exactly what ``hingen analyze`` reads."""
    os.makedirs(os.path.join(out_dir, "edges"), exist_ok=True)
    with open(os.path.join(out_dir, "schema.json"), "w", encoding="utf-8", newline="\n") as fh:
        json.dump(g.schema.to_dict(), fh, indent=2)
        fh.write("\n")
    write_rows(os.path.join(out_dir, "nodes.tsv"), ((v, g.node_type(v)) for v in g.nodes()), "id\ttype")
    by_type = {et.name: [] for et in g.schema.edge_types}
    for _, et, a, b in g.edges():
        spec = g.schema.edge_type(et)
        if g.node_type(a) != spec.src:
            a, b = b, a
        by_type[et].append((a, b))
    for et, rows in by_type.items():
        write_rows(os.path.join(out_dir, "edges", f"{et}.tsv"), sorted(rows), "src\tdst")
    write_rows(
        os.path.join(out_dir, "labels.tsv"),
        ((v, ",".join(sorted(g.labels[v]))) for v in sorted(g.labels)),
        "id\tlabels",
    )


def ground_truth_rows(g, gt: GroundTruthMap, status: dict):
    recs = {r.motif_id: r for r in gt.records}
    for t, mids in gt.by_target().items():
        nodes = sorted({v for m in mids for v in recs[m].nodes})
        edges = sorted({e for m in mids for e in recs[m].edges})
        flag = any(recs[m].pruning_exception for m in mids)
        yield (
            t,
            ",".join(map(str, mids)),
            ",".join(map(str, nodes)),
            ";".join(f"{et}:{a}-{b}" for et, a, b in edges),
            status.get(t, "intact") + ("+flagged" if flag else ""),
        )


def write_outputs(res: GenerationResult, out_dir) -> dict:
    """Write every artifact; returns the manifest (including file digests)."""
    os.makedirs(out_dir, exist_ok=True)
    g = res.graph
    write_graph(g, out_dir)
    write_rows(
        os.path.join(out_dir, "features.tsv"),
        ([v] + [repr(float(x)) for x in row] for v, row in zip(res.feature_ids.tolist(), res.features)),
        "id\tf0..f{}".format(res.features.shape[1] - 1),
    )
    status = res.verify.status if res.verify else {}
    write_rows(
        os.path.join(out_dir, "ground_truth.tsv"),
        ground_truth_rows(g, res.gt, status),
        "target\tmotifs\tnodes\tedges\tstatus",
    )
    manifest_path = os.path.join(out_dir, "manifest.json")
    if os.path.exists(manifest_path):
        os.remove(manifest_path)
    manifest = dict(res.manifest)
    manifest["digests"] = tree_digests(out_dir)
    with open(manifest_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    return manifest


def read_ground_truth(path):
    """target id -> (motif ids, node ids, edge keys, status) from ground_truth.tsv."""
    from .textio import read_rows

    out = {}
    for _, row in read_rows(path, ncols=5):
        t, mids, nodes, edges, status = row
        keys = []
        for item in filter(None, edges.split(";")):
            et, _, ends = item.rpartition(":")
            a, b = ends.split("-")
            keys.append((et, int(a), int(b)))
        out[int(t)] = (
            [int(x) for x in mids.split(",")],
            [int(x) for x in nodes.split(",")],
            keys,
            status,
        )
    return out
