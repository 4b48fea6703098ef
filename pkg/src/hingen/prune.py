"""Degree-cap enforcement that never deletes motif edges."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import TypedGraph
from .groundtruth import GroundTruthMap
from .metrics import component_count
from .params import cap_key, split_cap_key


class DegreeCaps(dict):
    """(node type, neighbour type) -> maximum number of such neighbours.

    Pairs without an entry are unbounded, so ``DegreeCaps()`` disables pruning.
    """

    @classmethod
    def from_keys(cls, caps: dict[str, int]) -> "DegreeCaps":
        return cls({split_cap_key(k): int(v) for k, v in caps.items()})

    def to_keys(self) -> dict[str, int]:
        return {cap_key(a, b): c for (a, b), c in sorted(self.items())}


@dataclass
class PruneReport:
    removed: dict[str, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    passes: int = 0
    edges_before: int = 0
    edges_after: int = 0
    components_before: int = 0
    components_after: int = 0

    @property
    def removed_total(self) -> int:
        return sum(self.removed.values())

    def to_dict(self) -> dict:
        return {
            "removed": dict(sorted(self.removed.items())),
            "removed_total": self.removed_total,
            "violations": self.violations,
            "passes": self.passes,
            "edges_before": self.edges_before,
            "edges_after": self.edges_after,
            "components_before": self.components_before,
            "components_after": self.components_after,
        }


def prune(g: TypedGraph, caps: DegreeCaps, gt: GroundTruthMap, rng) -> tuple[TypedGraph, PruneReport]:
    """Delete non-motif edges until every node is within its per-type caps. Mutates ``g``.

    Nodes are scanned in ascending id order and the edges to drop are chosen
    uniformly among a node's non-motif neighbours of the offending type.
    When motif edges alone exceed a cap they are all kept, the node is
    reported as a violation and its motif records are flagged.
    """
    report = PruneReport(edges_before=g.num_edges, components_before=component_count(g))
    motif_edges = gt.motif_edges()
    flagged_at: set[tuple[int, str]] = set()

    def is_motif(v, u):
        return any(((et, v, u) if v < u else (et, u, v)) in motif_edges for et in g.edge_types_to(v, u))

    nbr_types = {t: g.schema.neighbor_types(t) for t in g.schema.node_types}
    changed = True
    while changed:
        changed = False
        report.passes += 1
        for v in g.nodes():
            tv = g.node_type(v)
            for phi in nbr_types[tv]:
                cap = caps.get((tv, phi))
                if cap is None:
                    continue
                nbrs = g.neighbors(v, phi)
                if len(nbrs) <= cap:
                    continue
                protected = sorted(u for u in nbrs if is_motif(v, u))
                others = sorted(u for u in nbrs if not is_motif(v, u))
                n_drop = min(len(nbrs) - cap, len(others))
                if n_drop:
                    for i in sorted(rng.choice(len(others), size=n_drop, replace=False).tolist()):
                        u = others[i]
                        for et in sorted(g.edge_types_to(v, u)):
                            g.remove_edge(et, v, u)
                            k = cap_key(tv, phi)
                            report.removed[k] = report.removed.get(k, 0) + 1
                    changed = True
                if len(protected) > cap and (v, phi) not in flagged_at:
                    flagged_at.add((v, phi))
                    report.violations.append(
                        {"node": v, "node_type": tv, "neighbor_type": phi, "motif_degree": len(protected), "cap": cap}
                    )
    for rec in gt.records:
        for _, a, b in rec.edges:
            if (a, g.node_type(b)) in flagged_at or (b, g.node_type(a)) in flagged_at:
                rec.pruning_exception = True
                break
    report.edges_after = g.num_edges
    report.components_after = component_count(g)
    return g, report
