"""Kernel backend selection.

The compiled extension is used when importable; setting
``HINGEN_PURE_PYTHON=1`` forces the pure-Python fallback. Both backends give
identical results.
"""

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("HINGEN_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._ext import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"


def _i64(x):
    return np.ascontiguousarray(x, dtype=np.int64)


def typed_degrees(a, b, node_type, n_types, impl=None):
    """Matrix [node, type] of distinct-neighbour counts; pairs must be unique."""
    impl = impl or _impl
    return impl.typed_degrees(_i64(a), _i64(b), _i64(node_type), int(n_types))


def connected_components(n, a, b, impl=None):
    impl = impl or _impl
    return impl.connected_components(int(n), _i64(a), _i64(b))


def contract_edges(src, dst, etype, remap, impl=None):
    impl = impl or _impl
    return impl.contract_edges(_i64(src), _i64(dst), _i64(etype), _i64(remap))


def unique_pairs(a, b):
    """Undirected pairs (lo, hi) with duplicates removed, sorted."""
    a, b = _i64(a), _i64(b)
    if a.size == 0:
        return a, b
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    pairs = np.unique(np.stack([lo, hi], axis=1), axis=0)
    return pairs[:, 0].copy(), pairs[:, 1].copy()
