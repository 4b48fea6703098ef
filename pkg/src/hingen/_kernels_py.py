"""Pure-Python kernels, used when the compiled extension is unavailable.

Same signatures and results as ``hingen._ext._kernels``.
"""

import numpy as np


def typed_degrees(a, b, node_type, n_types):
    """Per-node neighbour counts by neighbour type.

    ``a``/``b`` must list each undirected neighbour pair once.
    """
    types = node_type.tolist()
    out = [[0] * n_types for _ in types]
    for u, v in zip(a.tolist(), b.tolist()):
        out[u][types[v]] += 1
        out[v][types[u]] += 1
    return np.array(out, dtype=np.int64).reshape(len(types), n_types)


def connected_components(n, a, b):
    """Component id per node: the smallest node id in its component."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in zip(a.tolist(), b.tolist()):
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    return np.array([find(x) for x in range(n)], dtype=np.int64)


def contract_edges(src, dst, etype, remap):
    """Relabel endpoints through ``remap`` and keep each surviving edge once.

    Returns (lo, hi, etype, index) where ``index`` are the positions of the
    kept input edges; self-loops are dropped and later duplicates of an
    (etype, lo, hi) triple collapse onto the first occurrence.
    """
    rm = remap.tolist()
    seen = set()
    lo, hi, et_out, idx = [], [], [], []
    for i, (u, v, t) in enumerate(zip(src.tolist(), dst.tolist(), etype.tolist())):
        u, v = rm[u], rm[v]
        if u == v:
            continue
        if u > v:
            u, v = v, u
        key = (t, u, v)
        if key in seen:
            continue
        seen.add(key)
        lo.append(u)
        hi.append(v)
        et_out.append(t)
        idx.append(i)
    as_arr = lambda x: np.array(x, dtype=np.int64)
    return as_arr(lo), as_arr(hi), as_arr(et_out), as_arr(idx)
