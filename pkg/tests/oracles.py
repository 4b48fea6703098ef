"""Independent reference implementations used to cross-check the library."""

import numpy as np


def adjacency_sets(g):
    """(node types, edge set, labels) with edges as (type, frozenset of ends)."""
    types = {v: g.node_type(v) for v in g.nodes()}
    edges = {(et, frozenset((a, b))) for et, a, b in g.edge_keys()}
    return types, edges, dict(g.labels)


def oracle_merge(state, keep, drop):
    """Fuse ``drop`` into ``keep`` on plain sets: relabel ends, drop loops and duplicates."""
    types, edges, labels = state
    f = lambda x: keep if x == drop else x
    new_edges = set()
    for et, ends in edges:
        ends = frozenset(f(x) for x in ends)
        if len(ends) == 2:
            new_edges.add((et, ends))
    types = {v: t for v, t in types.items() if v != drop}
    labels = dict(labels)
    if drop in labels:
        labels[keep] = labels.get(keep, frozenset()) | labels.pop(drop)
    return types, new_edges, labels


def canonical(g):
    types, edges, labels = adjacency_sets(g)
    return (
        tuple(sorted(types.items())),
        tuple(sorted((et, tuple(sorted(e))) for et, e in edges)),
        tuple(sorted((v, tuple(sorted(y))) for v, y in labels.items())),
    )


def random_disjoint_pairs(g, rng, max_pairs):
    """Same-type node-disjoint (keep, drop) pairs."""
    free = list(rng.permutation(g.nodes()))
    pairs = []
    while free and len(pairs) < max_pairs:
        v = int(free.pop())
        mates = [u for u in free if g.node_type(int(u)) == g.node_type(v)]
        if not mates:
            continue
        u = int(mates[int(rng.integers(len(mates)))])
        free.remove(u)
        pairs.append((v, u) if rng.random() < 0.5 else (u, v))
    return pairs


def motif_degree_violations(g, gt, caps):
    """(node, neighbour type) pairs whose motif edges alone exceed the cap."""
    count = {}
    for et, a, b in gt.motif_edges():
        for v, u in ((a, b), (b, a)):
            key = (v, g.node_type(u))
            count.setdefault(key, set()).add(u)
    out = set()
    for (v, phi), nbrs in count.items():
        cap = caps.get((g.node_type(v), phi))
        if cap is not None and len(nbrs) > cap:
            out.add((v, phi))
    return out


def binomial_moment_bounds(n, p, trials):
    """3-sigma half-widths for the sample mean and the sample variance."""
    var = n * p * (1 - p)
    mu4 = var * (1 + 3 * (n - 2) * p * (1 - p))
    return 3 * np.sqrt(var / trials), 3 * np.sqrt((mu4 - var**2) / trials)
