# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled counterparts of ``hingen._kernels_py``."""

import numpy as np
cimport numpy as cnp
from libcpp.unordered_set cimport unordered_set
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


def typed_degrees(const int64_t[:] a, const int64_t[:] b, const int64_t[:] node_type, Py_ssize_t n_types):
    cdef Py_ssize_t n = node_type.shape[0]
    cdef Py_ssize_t m = a.shape[0]
    out = np.zeros((n, n_types), dtype=np.int64)
    cdef int64_t[:, :] o = out
    cdef Py_ssize_t i
    cdef int64_t u, v
    with nogil:
        for i in range(m):
            u = a[i]
            v = b[i]
            o[u, node_type[v]] += 1
            o[v, node_type[u]] += 1
    return out


cdef inline int64_t _find(int64_t[:] parent, int64_t x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def connected_components(Py_ssize_t n, const int64_t[:] a, const int64_t[:] b):
    out = np.arange(n, dtype=np.int64)
    cdef int64_t[:] parent = out
    cdef Py_ssize_t i
    cdef int64_t ru, rv
    with nogil:
        for i in range(a.shape[0]):
            ru = _find(parent, a[i])
            rv = _find(parent, b[i])
            if ru != rv:
                if ru < rv:
                    parent[rv] = ru
                else:
                    parent[ru] = rv
        for i in range(n):
            parent[i] = _find(parent, i)
    return out


def contract_edges(const int64_t[:] src, const int64_t[:] dst, const int64_t[:] etype, const int64_t[:] remap):
    cdef Py_ssize_t m = src.shape[0]
    cdef uint64_t n = <uint64_t> remap.shape[0]
    lo_a = np.empty(m, dtype=np.int64)
    hi_a = np.empty(m, dtype=np.int64)
    et_a = np.empty(m, dtype=np.int64)
    idx_a = np.empty(m, dtype=np.int64)
    cdef int64_t[:] lo = lo_a
    cdef int64_t[:] hi = hi_a
    cdef int64_t[:] eo = et_a
    cdef int64_t[:] ix = idx_a
    cdef unordered_set[uint64_t] seen
    cdef Py_ssize_t i, k = 0
    cdef int64_t u, v, t
    cdef uint64_t key
    seen.reserve(m)
    with nogil:
        for i in range(m):
            u = remap[src[i]]
            v = remap[dst[i]]
            if u == v:
                continue
            if u > v:
                u, v = v, u
            t = etype[i]
            key = (<uint64_t> t * n + <uint64_t> u) * n + <uint64_t> v
            if seen.count(key):
                continue
            seen.insert(key)
            lo[k] = u
            hi[k] = v
            eo[k] = t
            ix[k] = i
            k += 1
    return lo_a[:k].copy(), hi_a[:k].copy(), et_a[:k].copy(), idx_a[:k].copy()
