# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled double-description adjacency kernel (see ``_ddcore_py``)."""
from libc.stdint cimport uint64_t


cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil


def adjacent_pairs(const uint64_t[:, ::1] zero_sets, pos, neg, Py_ssize_t min_common):
    cdef Py_ssize_t nrays = zero_sets.shape[0]
    cdef Py_ssize_t nwords = zero_sets.shape[1]
    cdef Py_ssize_t i, j, t, w, p, n, cnt
    cdef Py_ssize_t npos = len(pos), nneg = len(neg)
    cdef uint64_t c
    cdef bint contained, blocked
    cdef Py_ssize_t[::1] pv = _as_index(pos)
    cdef Py_ssize_t[::1] nv = _as_index(neg)
    out = []
    for i in range(npos):
        p = pv[i]
        for j in range(nneg):
            n = nv[j]
            cnt = 0
            for w in range(nwords):
                cnt += popcount64(zero_sets[p, w] & zero_sets[n, w])
            if cnt < min_common:
                continue
            blocked = False
            for t in range(nrays):
                if t == p or t == n:
                    continue
                contained = True
                for w in range(nwords):
                    c = zero_sets[p, w] & zero_sets[n, w]
                    if c & ~zero_sets[t, w]:
                        contained = False
                        break
                if contained:
                    blocked = True
                    break
            if not blocked:
                out.append((p, n))
    return out


cdef Py_ssize_t[::1] _as_index(seq):
    import numpy as np
    return np.ascontiguousarray(np.asarray(seq, dtype=np.intp).reshape(-1))
