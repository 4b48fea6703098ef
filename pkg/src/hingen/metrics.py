"""Degree-distribution comparison, cluster exclusion and explanation fidelity."""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import TypedGraph
from .textio import FormatError


def components(g: TypedGraph) -> dict[int, int]:
    """Live node -> smallest node id of its connected component."""
    src, dst, _ = g.edge_arrays()
    comp = kernels.connected_components(g.id_bound, src, dst)
    return {v: int(comp[v]) for v in g.nodes()}


def component_count(g: TypedGraph) -> int:
    return len(set(components(g).values()))


# -- degree distributions -----------------------------------------------------


def total_variation(p: dict, q: dict) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


def ks_statistic(p: dict, q: dict) -> float:
    """Largest CDF gap of two distributions over the integers."""
    cp = cq = 0.0
    worst = 0.0
    for k in sorted(set(p) | set(q)):
        cp += p.get(k, 0.0)
        cq += q.get(k, 0.0)
        worst = max(worst, abs(cp - cq))
    return min(worst, 1.0)


@dataclass
class TypeComparison:
    neighbor_type: str
    tv: float
    ks: float
    synthetic: dict[int, float]
    reference: dict[int, float]


@dataclass
class DistributionReport:
    per_type: dict[str, TypeComparison]

    def to_dict(self) -> dict:
        return {
            t: {
                "tv": c.tv,
                "ks": c.ks,
                "synthetic": {str(k): v for k, v in c.synthetic.items()},
                "reference": {str(k): v for k, v in c.reference.items()},
            }
            for t, c in self.per_type.items()
        }


def compare_distributions(synthetic, reference) -> DistributionReport:
    """Per minor type TV and KS distances between two profiles' target-degree histograms."""
    if synthetic.schema.target_type != reference.schema.target_type:
        raise ValueError("profiles have different target types")
    out = {}
    types = list(synthetic.degree_dists) + [t for t in reference.degree_dists if t not in synthetic.degree_dists]
    for t in types:
        a = synthetic.degree_dists.get(t)
        b = reference.degree_dists.get(t)
        if a is None or b is None:
            warnings.warn(f"type {t!r} appears in only one profile; comparing against a point mass at 0")
        ha = a.histogram if a is not None else {0: 1.0}
        hb = b.histogram if b is not None else {0: 1.0}
        out[t] = TypeComparison(t, total_variation(ha, hb), ks_statistic(ha, hb), ha, hb)
    return DistributionReport(out)


# -- fidelity -----------------------------------------------------------------


def fidelity(full: dict, motif: dict) -> float:
    """Mean over nodes of the mean absolute per-label probability gap.

    ``full`` and ``motif`` map node id -> probability vector predicted on the
    whole graph and on the motif alone.
    """
    if set(full) != set(motif):
        only = sorted(set(full) ^ set(motif), key=str)[:5]
        raise ValueError(f"prediction sets cover different node ids (e.g. {only})")
    if not full:
        raise ValueError("no predictions")
    total = 0.0
    width = None
    for v in full:
        a = np.asarray(full[v], dtype=np.float64)
        b = np.asarray(motif[v], dtype=np.float64)
        if a.shape != b.shape or a.ndim != 1 or a.size == 0:
            raise ValueError(f"node {v}: probability vectors of lengths {a.size} and {b.size}")
        if width is None:
            width = a.size
        elif a.size != width:
            raise ValueError(f"node {v}: expected {width} labels, got {a.size}")
        total += float(np.abs(a - b).sum()) / a.size
    return total / len(full)


def read_predictions(path, n_labels: int | None = None):
    """Parse a prediction file into (labels, full, motif).

    Header: ``id``, then ``full:<label>`` columns, then ``motif:<label>``
    columns in the same label order. Tab or comma separated; lines starting
    with ``#`` are skipped.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        lines = [(i, ln) for i, ln in enumerate(fh, 1) if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise FormatError(path, 0, "empty prediction file")
    delim = "\t" if "\t" in lines[0][1] else ","
    rows = list(csv.reader([ln for _, ln in lines], delimiter=delim))
    header = [h.strip() for h in rows[0]]
    if not header or header[0] != "id":
        raise FormatError(path, lines[0][0], "first column must be 'id'")
    cols = header[1:]
    full_labels = [c.split(":", 1)[1] for c in cols if c.startswith("full:")]
    motif_labels = [c.split(":", 1)[1] for c in cols if c.startswith("motif:")]
    expected = ["full:" + y for y in full_labels] + ["motif:" + y for y in motif_labels]
    if cols != expected or full_labels != motif_labels or not full_labels:
        raise FormatError(path, lines[0][0], "header must be id, full:<label>..., motif:<label>... with matching labels")
    if n_labels is not None and len(full_labels) != n_labels:
        raise FormatError(path, lines[0][0], f"expected {n_labels} labels, header declares {len(full_labels)}")
    L = len(full_labels)
    full, motif = {}, {}
    for (lineno, _), row in zip(lines[1:], rows[1:]):
        if len(row) != 1 + 2 * L:
            raise FormatError(path, lineno, f"expected {1 + 2 * L} columns, got {len(row)}")
        node = row[0].strip()
        try:
            vals = [float(x) for x in row[1:]]
        except ValueError as exc:
            raise FormatError(path, lineno, str(exc)) from None
        if any(not (0.0 <= x <= 1.0) or math.isnan(x) for x in vals):
            raise FormatError(path, lineno, "probabilities must lie in [0, 1]")
        if node in full:
            raise FormatError(path, lineno, f"duplicate node id {node!r}")
        full[node] = vals[:L]
        motif[node] = vals[L:]
    return full_labels, full, motif


# -- cluster exclusion --------------------------------------------------------


@dataclass
class ExclusionReport:
    edge_agreement: float
    shared_minor_fraction: float
    component_purity: float
    components: int
    target_components: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def exclusion_summary(g: TypedGraph) -> ExclusionReport:
    """How separated the label clusters are.

    * edge_agreement: share of edges whose endpoints have the same label
      closure (a minor node's closure is the union of its target neighbours'
      labels; a minor node with no target neighbour has an empty closure).
    * shared_minor_fraction: share of minor nodes whose closure has 2+ labels.
    * component_purity: over components holding targets, the summed count of
      each component's most common label divided by all label occurrences.
    """
    tgt = g.schema.target_type
    closure = {}
    for v in g.nodes():
        if g.node_type(v) == tgt:
            closure[v] = frozenset(g.labels.get(v, ()))
        else:
            labs = set()
            for u in g.neighbors(v, tgt):
                labs |= g.labels.get(u, frozenset())
            closure[v] = frozenset(labs)
    n_edges = g.num_edges
    agree = sum(closure[a] == closure[b] for _, a, b in g.edge_keys())
    minors = [v for v in closure if g.node_type(v) != tgt]
    shared = sum(len(closure[v]) > 1 for v in minors)

    comp = components(g)
    per_comp: dict[int, dict[str, int]] = {}
    for v in g.nodes(tgt):
        counts = per_comp.setdefault(comp[v], {})
        for y in g.labels.get(v, ()):
            counts[y] = counts.get(y, 0) + 1
    top = sum(max(c.values()) for c in per_comp.values() if c)
    occurrences = sum(sum(c.values()) for c in per_comp.values())
    return ExclusionReport(
        edge_agreement=agree / n_edges if n_edges else 1.0,
        shared_minor_fraction=shared / len(minors) if minors else 0.0,
        component_purity=top / occurrences if occurrences else 1.0,
        components=len(set(comp.values())),
        target_components=len(per_comp),
    )
