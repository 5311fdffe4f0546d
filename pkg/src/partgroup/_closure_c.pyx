# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled closure kernel; same semantics as ``_closure_py``."""
from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t


cdef inline int _find(int[::1] parent, int x) nogil:
    cdef int root = x
    cdef int nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


cdef inline bint _union(int[::1] parent, int a, int b) nogil:
    cdef int ra = _find(parent, a)
    cdef int rb = _find(parent, b)
    if ra == rb:
        return False
    if ra < rb:
        parent[rb] = ra
    else:
        parent[ra] = rb
    return True


def find(int[::1] parent, int x):
    return _find(parent, x)


def union(int[::1] parent, int a, int b):
    return _union(parent, a, b)


cdef inline bint _same_key(int* reps, int[::1] offsets, int u, int v) nogil:
    cdef int lu = offsets[u + 1] - offsets[u]
    cdef int k
    if lu != offsets[v + 1] - offsets[v]:
        return False
    for k in range(lu):
        if reps[offsets[u] + k] != reps[offsets[v] + k]:
            return False
    return True


def closure_pass(int[::1] flat, int[::1] offsets, int[::1] prods, int[::1] parent):
    cdef Py_ssize_t n_words = offsets.shape[0] - 1
    cdef Py_ssize_t n_flat = flat.shape[0]
    cdef Py_ssize_t cap = 1
    cdef Py_ssize_t i, w, slot, j
    cdef uint64_t h
    cdef int k
    cdef int* reps
    cdef int* table
    merges = []
    if n_words <= 0:
        return merges
    while cap < 2 * n_words:
        cap <<= 1
    reps = <int*> malloc(max(n_flat, 1) * sizeof(int))
    table = <int*> malloc(cap * sizeof(int))
    if reps == NULL or table == NULL:
        free(reps)
        free(table)
        raise MemoryError()
    try:
        for i in range(n_flat):
            reps[i] = _find(parent, flat[i])
        for i in range(cap):
            table[i] = -1
        for w in range(n_words):
            h = 1469598103934665603ULL ^ <uint64_t>(offsets[w + 1] - offsets[w])
            for k in range(offsets[w], offsets[w + 1]):
                h = (h ^ <uint64_t>reps[k]) * 1099511628211ULL
            slot = <Py_ssize_t>(h & <uint64_t>(cap - 1))
            while True:
                j = table[slot]
                if j == -1:
                    table[slot] = <int>w
                    break
                if _same_key(reps, offsets, <int>j, <int>w):
                    if _union(parent, prods[j], prods[w]):
                        merges.append((prods[j], prods[w], j, w))
                    break
                slot = (slot + 1) & (cap - 1)
    finally:
        free(reps)
        free(table)
    return merges
