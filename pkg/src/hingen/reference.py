"""Reading a reference network and summarising the statistics the generator matches."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graph import TypedGraph
from .params import DEFAULT_P, DEFAULT_Q, GeneratorParams, cap_key, split_cap_key
from .schema import Schema, SchemaError
from .textio import FormatError, read_rows


@dataclass
class DegreeDistribution:
    """Empirical P(k): how many ``neighbor_type`` neighbours a target node has."""

    target_type: str
    neighbor_type: str
    counts: dict[int, int]

    def __post_init__(self):
        self.counts = {int(k): int(c) for k, c in sorted(self.counts.items()) if c > 0}
        if not self.counts:
            raise ValueError("degree distribution needs at least one observation")
        if min(self.counts) < 0:
            raise ValueError("negative degree")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def histogram(self) -> dict[int, float]:
        n = self.total
        return {k: c / n for k, c in self.counts.items()}

    @property
    def support(self) -> int:
        return max(self.counts)

    @classmethod
    def point_mass(cls, target_type, neighbor_type, k=0):
        return cls(target_type, neighbor_type, {k: 1})

    @classmethod
    def from_probabilities(cls, target_type, neighbor_type, probs: dict, resolution=10**6):
        """Build from probabilities (scaled to integer pseudo-counts)."""
        counts = {int(k): int(round(float(p) * resolution)) for k, p in probs.items()}
        return cls(target_type, neighbor_type, counts)

    def sampler(self):
        ks = np.array(list(self.counts), dtype=np.int64)
        cdf = np.cumsum(np.array(list(self.counts.values()), dtype=np.float64))
        cdf /= cdf[-1]
        return ks, cdf

    def mean(self) -> float:
        return sum(k * p for k, p in self.histogram.items())


@dataclass
class ReferenceProfile:
    schema: Schema
    degree_dists: dict[str, DegreeDistribution]
    target_count: int
    label_counts: dict[str, int]
    degree_caps: dict[str, int] = field(default_factory=dict)

    @property
    def label_count(self) -> int:
        return len(self.schema.labels)

    @property
    def label_frequencies(self) -> dict[str, float]:
        total = sum(self.label_counts.values())
        if total == 0:
            return {y: 1.0 / len(self.schema.labels) for y in self.schema.labels}
        return {y: self.label_counts.get(y, 0) / total for y in self.schema.labels}

    def cap(self, node_type: str, neighbor_type: str) -> int | None:
        return self.degree_caps.get(cap_key(node_type, neighbor_type))

    def to_dict(self) -> dict:
        return {
            "schema": self.schema.to_dict(),
            "target_count": self.target_count,
            "label_counts": {y: self.label_counts.get(y, 0) for y in self.schema.labels},
            "label_frequencies": self.label_frequencies,
            "degree_dists": {
                t: {
                    "counts": {str(k): c for k, c in d.counts.items()},
                    "histogram": {str(k): p for k, p in d.histogram.items()},
                    "support": d.support,
                }
                for t, d in self.degree_dists.items()
            },
            "degree_caps": dict(self.degree_caps),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReferenceProfile":
        schema = Schema.from_dict(d["schema"])
        dists = {}
        for t, dd in d["degree_dists"].items():
            if "counts" in dd:
                dists[t] = DegreeDistribution(schema.target_type, t, {int(k): c for k, c in dd["counts"].items()})
            else:
                dists[t] = DegreeDistribution.from_probabilities(schema.target_type, t, dd["histogram"])
        caps = {str(k): int(v) for k, v in d.get("degree_caps", {}).items()}
        for k in caps:
            split_cap_key(k)
        return cls(
            schema=schema,
            degree_dists=dists,
            target_count=int(d["target_count"]),
            label_counts={str(k): int(v) for k, v in d.get("label_counts", {}).items()},
            degree_caps=caps,
        )

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=False)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "ReferenceProfile":
        with open(path, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise FormatError(path, exc.lineno, exc.msg) from None
        try:
            return cls.from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(path, 0, f"invalid profile: {exc}") from None


# -- ingestion --------------------------------------------------------------


def edge_files_in(directory) -> dict[str, str]:
    """Edge-type name -> path for every ``<name>.tsv`` in ``directory``."""
    out = {}
    for name in sorted(os.listdir(directory)):
        if name.endswith(".tsv"):
            out[name[: -len(".tsv")]] = os.path.join(directory, name)
    return out


def ingest_reference(schema: Schema, nodes_path, edge_paths: dict, labels_path=None):
    """Load a reference graph.

    Returns the graph and the original node tokens indexed by dense node id.
    Raises FormatError (with file and line) for malformed or inconsistent
    input and SchemaError for an edge file naming an undeclared edge type.
    """
    g = TypedGraph(schema)
    ids: dict[str, int] = {}
    tokens: list[str] = []
    for lineno, (tok, t) in read_rows(nodes_path, ncols=2):
        if tok in ids:
            raise FormatError(nodes_path, lineno, f"duplicate node id {tok!r}")
        if t not in schema.node_types:
            raise FormatError(nodes_path, lineno, f"unknown node type {t!r}")
        ids[tok] = g.add_node(t)
        tokens.append(tok)

    for et_name, path in edge_paths.items():
        try:
            et = schema.edge_type(et_name)
        except SchemaError:
            raise SchemaError(f"edge file {path} names undeclared edge type {et_name!r}") from None
        for lineno, (a, b) in read_rows(path, ncols=2):
            try:
                u, v = ids[a], ids[b]
            except KeyError as exc:
                raise FormatError(path, lineno, f"undeclared node id {exc.args[0]!r}") from None
            tu, tv = g.node_type(u), g.node_type(v)
            if not et.connects(tu, tv):
                raise FormatError(path, lineno, f"edge type {et_name!r} cannot join {tu!r} and {tv!r}")
            if u == v:
                raise FormatError(path, lineno, f"self-loop on {a!r}")
            g.add_edge(et_name, u, v)

    if labels_path is not None:
        for lineno, row in read_rows(labels_path, min_cols=1):
            if len(row) > 2:
                raise FormatError(labels_path, lineno, f"expected 2 columns, got {len(row)}")
            tok = row[0]
            if tok not in ids:
                raise FormatError(labels_path, lineno, f"undeclared node id {tok!r}")
            v = ids[tok]
            if g.node_type(v) != schema.target_type:
                raise FormatError(labels_path, lineno, f"label on non-target node {tok!r}")
            labels = [y for y in row[1].split(",") if y] if len(row) == 2 else []
            try:
                g.set_labels(v, labels)
            except SchemaError as exc:
                raise FormatError(labels_path, lineno, str(exc)) from None
    return g, tokens


# -- statistics ---------------------------------------------------------------


def typed_degree_matrix(g: TypedGraph) -> np.ndarray:
    """[node id, node-type index] -> distinct neighbours of that type."""
    src, dst, _ = g.edge_arrays()
    a, b = kernels.unique_pairs(src, dst)
    types = g.type_array()
    return kernels.typed_degrees(a, b, np.maximum(types, 0), len(g.schema.node_types))


def profile(g: TypedGraph) -> ReferenceProfile:
    schema = g.schema
    targets = g.nodes(schema.target_type)
    if not targets:
        raise ValueError("reference graph has no target nodes")
    deg = typed_degree_matrix(g)
    types = g.type_array()
    tidx = {t: i for i, t in enumerate(schema.node_types)}

    dists = {}
    tcol = np.array(targets, dtype=np.int64)
    for phi in schema.minor_types:
        ks, cs = np.unique(deg[tcol, tidx[phi]], return_counts=True)
        dists[phi] = DegreeDistribution(schema.target_type, phi, dict(zip(ks.tolist(), cs.tolist())))

    caps = {}
    for t in schema.node_types:
        rows = np.flatnonzero(types == tidx[t])
        for nb in schema.neighbor_types(t):
            caps[cap_key(t, nb)] = int(deg[rows, tidx[nb]].max()) if rows.size else 0

    label_counts = {y: 0 for y in schema.labels}
    for v in targets:
        for y in g.labels.get(v, ()):
            label_counts[y] += 1
    return ReferenceProfile(schema, dists, len(targets), label_counts, caps)


def estimate_params(prof: ReferenceProfile, **overrides) -> GeneratorParams:
    """Default parameters: half as many motifs as reference targets (rounded up)."""
    schema = prof.schema
    kw = dict(
        n_motifs=max(1, math.ceil(prof.target_count / 2)),
        p={t: DEFAULT_P for t in schema.minor_types},
        q={t: DEFAULT_Q for t in schema.minor_types},
        caps=dict(prof.degree_caps),
    )
    kw.update(overrides)
    return GeneratorParams(**kw)
