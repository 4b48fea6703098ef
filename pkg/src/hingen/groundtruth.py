"""Ground-truth motif records, kept valid through merges and pruning."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

from .graph import TypedGraph, edge_key


@dataclass
class MotifRecord:
    motif_id: int
    template_id: int
    anchors: tuple[int, int]
    nodes: tuple[int, ...]
    edges: tuple[tuple[str, int, int], ...]
    # set when pruning could not bring a motif node under its degree cap
    pruning_exception: bool = False

    def mapped(self, f: Callable[[int], int]) -> "MotifRecord":
        return replace(
            self,
            anchors=(f(self.anchors[0]), f(self.anchors[1])),
            nodes=tuple(f(v) for v in self.nodes),
            edges=tuple(edge_key(et, f(a), f(b)) for et, a, b in self.edges),
        )

    def missing(self, g: TypedGraph) -> tuple[list[int], list[tuple[str, int, int]]]:
        nodes = [v for v in self.nodes if not g.has_node(v)]
        edges = [e for e in self.edges if g.edge_id(*e) is None]
        return nodes, edges


@dataclass
class GroundTruthMap:
    """Motif records plus target node -> ids of the motifs it anchors.

    A target anchors one motif, except after multi-label target merges where
    the survivor anchors every motif of the merged nodes.
    """

    records: list[MotifRecord] = field(default_factory=list)

    def add(self, rec: MotifRecord) -> None:
        self.records.append(rec)

    def mapped(self, f: Callable[[int], int]) -> "GroundTruthMap":
        return GroundTruthMap([r.mapped(f) for r in self.records])

    def by_target(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for r in self.records:
            for a in dict.fromkeys(r.anchors):
                out.setdefault(a, []).append(r.motif_id)
        return {t: tuple(ids) for t, ids in sorted(out.items())}

    def record(self, motif_id: int) -> MotifRecord:
        return self.records[self._index()[motif_id]]

    def _index(self):
        return {r.motif_id: i for i, r in enumerate(self.records)}

    def motif_edges(self) -> set[tuple[str, int, int]]:
        return {e for r in self.records for e in r.edges}

    def __len__(self):
        return len(self.records)


@dataclass
class VerifyReport:
    status: dict[int, str]
    degraded: list[int]
    flagged: list[int]
    broken_motifs: list[int] = field(default_factory=list)

    @property
    def intact_fraction(self) -> float:
        if not self.status:
            return 1.0
        return sum(s == "intact" for s in self.status.values()) / len(self.status)


def verify_ground_truth(g: TypedGraph, gt: GroundTruthMap) -> VerifyReport:
    """Per target node: ``intact`` when every node and edge of its motifs is present."""
    recs = {r.motif_id: r for r in gt.records}
    broken = {mid for mid, r in recs.items() if any(r.missing(g))}
    status = {}
    degraded, flagged = [], []
    for t, mids in gt.by_target().items():
        if any(m in broken for m in mids):
            status[t] = "degraded"
            degraded.append(t)
        else:
            status[t] = "intact"
        if any(recs[m].pruning_exception for m in mids):
            flagged.append(t)
    return VerifyReport(status, degraded, flagged, sorted(broken))
