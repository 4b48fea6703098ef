"""Built-in schemas shaped like IMDB, ACM and DBLP, plus toy reference graphs.

The reference graphs are synthetic stand-ins with the public datasets'
schema and rough scale; they are not the datasets themselves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import TypedGraph
from .rng import substream
from .schema import Schema, make_schema


@dataclass(frozen=True)
class Attachment:
    """Each ``owner`` node links to k distinct ``partner`` nodes, k ~ ``degrees``.

    Partners are drawn from a pool of ``pool`` nodes with Zipf-like weights.
    """

    owner: str
    partner: str
    degrees: dict
    pool: int
    zipf: float = 0.8


@dataclass(frozen=True)
class Preset:
    name: str
    schema: Schema
    max_hops: int
    n_targets: int
    label_weights: tuple[float, ...]
    attachments: tuple[Attachment, ...]


PRESETS = {
    "imdb": Preset(
        "imdb",
        make_schema("movie", [("movie", "director"), ("movie", "actor")], ["0", "1", "2"]),
        max_hops=2,
        n_targets=4278,
        label_weights=(0.32, 0.36, 0.32),
        attachments=(
            Attachment("movie", "director", {1: 1.0}, 2081),
            Attachment("movie", "actor", {1: 0.03, 2: 0.05, 3: 0.92}, 5257),
        ),
    ),
    "acm": Preset(
        "acm",
        make_schema("paper", [("paper", "author"), ("paper", "subject")], ["0", "1", "2"]),
        max_hops=2,
        n_targets=3025,
        label_weights=(0.33, 0.32, 0.35),
        attachments=(
            Attachment("paper", "author", {1: 0.15, 2: 0.3, 3: 0.3, 4: 0.15, 5: 0.1}, 5959),
            Attachment("paper", "subject", {1: 1.0}, 56, zipf=1.0),
        ),
    ),
    "dblp": Preset(
        "dblp",
        make_schema(
            "author",
            [("author", "paper"), ("paper", "term"), ("paper", "conference")],
            ["0", "1", "2", "3"],
        ),
        max_hops=4,
        n_targets=4057,
        label_weights=(0.28, 0.25, 0.22, 0.25),
        attachments=(
            Attachment("author", "paper", {1: 0.3, 2: 0.25, 3: 0.2, 4: 0.15, 5: 0.1}, 14328),
            Attachment("paper", "term", {1: 0.2, 2: 0.3, 3: 0.3, 4: 0.2}, 7723),
            Attachment("paper", "conference", {1: 1.0}, 20, zipf=1.0),
        ),
    ),
}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def reference_graph(preset: Preset | str, n_targets: int | None = None, seed: int = 0) -> TypedGraph:
    """Random reference network following the preset's schema and degree shapes."""
    if isinstance(preset, str):
        preset = get_preset(preset)
    schema = preset.schema
    n = preset.n_targets if n_targets is None else n_targets
    scale = n / preset.n_targets
    g = TypedGraph(schema)
    rng = substream(seed, "reference", preset.name)
    pools = {schema.target_type: [g.add_node(schema.target_type) for _ in range(n)]}
    for att in preset.attachments:
        if att.partner not in pools:
            size = max(2, int(round(att.pool * scale)))
            pools[att.partner] = [g.add_node(att.partner) for _ in range(size)]
    for att in preset.attachments:
        et = schema.edge_type_for(att.owner, att.partner).name
        partners = pools[att.partner]
        w = 1.0 / np.arange(1, len(partners) + 1) ** att.zipf
        w /= w.sum()
        ks = np.array(list(att.degrees), dtype=np.int64)
        ps = np.array(list(att.degrees.values()), dtype=np.float64)
        ps /= ps.sum()
        for v in pools[att.owner]:
            k = min(int(rng.choice(ks, p=ps)), len(partners))
            for j in rng.choice(len(partners), size=k, replace=False, p=w).tolist():
                g.add_edge(et, v, partners[j])
    lw = np.array(preset.label_weights, dtype=np.float64)
    ys = rng.choice(len(schema.labels), size=n, p=lw / lw.sum())
    for v, y in zip(pools[schema.target_type], ys.tolist()):
        g.set_labels(v, [schema.labels[y]])
    return g
