# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled set kernels.

Same contract as ``_kernels_py``; masks are split into two 64-bit words
(ground cap 128) held in a pair of numpy arrays so the inner loops run
as plain C.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

cdef extern from *:
    """
    static inline int sf_popcount64(unsigned long long x) {
        return __builtin_popcountll(x);
    }
    """
    int sf_popcount64(unsigned long long x) nogil

BACKEND = "compiled"

cdef uint64_t _M64 = <uint64_t> 0xFFFFFFFFFFFFFFFFULL


def pack(masks):
    cdef Py_ssize_t n = len(masks)
    lo = np.empty(n, dtype=np.uint64)
    hi = np.empty(n, dtype=np.uint64)
    cdef uint64_t[::1] lo_v = lo
    cdef uint64_t[::1] hi_v = hi
    cdef Py_ssize_t i = 0
    for m in masks:
        lo_v[i] = <uint64_t> (m & 0xFFFFFFFFFFFFFFFF)
        hi_v[i] = <uint64_t> (m >> 64)
        i += 1
    return lo, hi


def greedy_disjoint(packed):
    lo, hi = packed
    cdef uint64_t[::1] lo_v = lo
    cdef uint64_t[::1] hi_v = hi
    cdef Py_ssize_t n = lo_v.shape[0]
    cdef uint64_t ulo = 0, uhi = 0
    cdef Py_ssize_t i
    kept = []
    for i in range(n):
        if (lo_v[i] & ulo) == 0 and (hi_v[i] & uhi) == 0:
            kept.append(i)
            ulo |= lo_v[i]
            uhi |= hi_v[i]
    return kept


def first_disjoint(packed, union, skip):
    lo, hi = packed
    cdef uint64_t[::1] lo_v = lo
    cdef uint64_t[::1] hi_v = hi
    cdef Py_ssize_t n = lo_v.shape[0]
    cdef uint64_t ulo = <uint64_t> (union & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t uhi = <uint64_t> (union >> 64)
    cdef Py_ssize_t i
    for i in range(n):
        if (lo_v[i] & ulo) == 0 and (hi_v[i] & uhi) == 0 and i not in skip:
            return i
    return -1


def intersection_sizes(packed, smask):
    lo, hi = packed
    cdef uint64_t[::1] lo_v = lo
    cdef uint64_t[::1] hi_v = hi
    cdef Py_ssize_t n = lo_v.shape[0]
    cdef uint64_t slo = <uint64_t> (smask & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t shi = <uint64_t> (smask >> 64)
    cdef Py_ssize_t i
    out = [0] * n
    for i in range(n):
        out[i] = sf_popcount64(lo_v[i] & slo) + sf_popcount64(hi_v[i] & shi)
    return out


def superset_flags(packed, smask):
    lo, hi = packed
    cdef uint64_t[::1] lo_v = lo
    cdef uint64_t[::1] hi_v = hi
    cdef Py_ssize_t n = lo_v.shape[0]
    cdef uint64_t slo = <uint64_t> (smask & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t shi = <uint64_t> (smask >> 64)
    cdef Py_ssize_t i
    out = [False] * n
    for i in range(n):
        out[i] = (lo_v[i] & slo) == slo and (hi_v[i] & shi) == shi
    return out


def element_counts(packed, ground_size):
    lo, hi = packed
    cdef uint64_t[::1] lo_v = lo
    cdef uint64_t[::1] hi_v = hi
    cdef Py_ssize_t n = lo_v.shape[0]
    counts_arr = np.zeros(ground_size, dtype=np.int64)
    cdef int64_t[::1] counts = counts_arr
    cdef Py_ssize_t i
    cdef int ng = ground_size
    cdef uint64_t m
    cdef int b
    for i in range(n):
        m = lo_v[i]
        while m:
            b = sf_popcount64((m & (~m + 1)) - 1)
            counts[b] += 1
            m &= m - 1
        m = hi_v[i]
        while m:
            b = sf_popcount64((m & (~m + 1)) - 1)
            counts[64 + b] += 1
            m &= m - 1
    return counts_arr.tolist()


cdef bint _extend(uint64_t[::1] lo_v, uint64_t[::1] hi_v, Py_ssize_t n,
                  Py_ssize_t* prefix, int depth, int k,
                  Py_ssize_t start, uint64_t clo, uint64_t chi) noexcept nogil:
    cdef Py_ssize_t j, t
    cdef bint ok
    cdef uint64_t nlo, nhi
    if depth == k:
        return True
    for j in range(start, n - (k - depth) + 1):
        if depth == 1:
            nlo = lo_v[prefix[0]] & lo_v[j]
            nhi = hi_v[prefix[0]] & hi_v[j]
            prefix[1] = j
            if _extend(lo_v, hi_v, n, prefix, 2, k, j + 1, nlo, nhi):
                return True
        else:
            ok = True
            for t in range(depth):
                if (lo_v[prefix[t]] & lo_v[j]) != clo or (hi_v[prefix[t]] & hi_v[j]) != chi:
                    ok = False
                    break
            if ok:
                prefix[depth] = j
                if _extend(lo_v, hi_v, n, prefix, depth + 1, k, j + 1, clo, chi):
                    return True
    return False


def find_k_sunflower(packed, k):
    lo, hi = packed
    cdef uint64_t[::1] lo_v = lo
    cdef uint64_t[::1] hi_v = hi
    cdef Py_ssize_t n = lo_v.shape[0]
    cdef int kk = k
    if kk == 1:
        return (0,) if n >= 1 else None
    if n < kk:
        return None
    prefix_arr = np.empty(kk, dtype=np.intp)
    cdef Py_ssize_t[::1] prefix = prefix_arr
    cdef Py_ssize_t i
    for i in range(n - kk + 1):
        prefix[0] = i
        if _extend(lo_v, hi_v, n, &prefix[0], 1, kk, i + 1, 0, 0):
            return tuple(prefix_arr.tolist())
    return None
