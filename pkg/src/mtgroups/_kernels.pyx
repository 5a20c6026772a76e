# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.

Every function here has a line-for-line twin in ``_pykernels``; the two are
selected between in ``mtgroups.kernels`` and must return identical results.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memcmp, memcpy

cnp.import_array()


def table_closure(const int[:, ::1] mul, const int[::1] seed, const int[::1] gens):
    """Close ``seed`` under right multiplication by ``gens`` in a Cayley table.

    Returns a uint8 membership vector over the parent's element indices.
    ``seed`` must contain the identity (index 0) for the result to be a group.
    """
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t k = gens.shape[0]
    member_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] member = member_arr
    cdef int *queue = <int *> malloc(n * sizeof(int))
    cdef Py_ssize_t head = 0, tail = 0, i
    cdef int x, y
    if queue == NULL:
        raise MemoryError()
    try:
        for i in range(seed.shape[0]):
            x = seed[i]
            if not member[x]:
                member[x] = 1
                queue[tail] = x
                tail += 1
        while head < tail:
            x = queue[head]
            head += 1
            for i in range(k):
                y = mul[x, gens[i]]
                if not member[y]:
                    member[y] = 1
                    queue[tail] = y
                    tail += 1
    finally:
        free(queue)
    return member_arr


def distinct_count(const int[::1] labels, const int[::1] idx, int nlabels):
    """Number of distinct values among ``labels[idx]``."""
    cdef unsigned char *seen = <unsigned char *> calloc(nlabels, 1)
    cdef Py_ssize_t i
    cdef int lab, count = 0
    if seen == NULL:
        raise MemoryError()
    for i in range(idx.shape[0]):
        lab = labels[idx[i]]
        if not seen[lab]:
            seen[lab] = 1
            count += 1
    free(seen)
    return count


def coset_labels(const int[:, ::1] mul, const int[::1] sub):
    """Label the right cosets ``sub * x`` by order of least element.

    Returns ``(labels, reps)``: ``labels[x]`` is the coset number of element x
    and ``reps[c]`` is the least element of coset c (so ``reps[0] == 0``).
    """
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t m = sub.shape[0]
    labels_arr = np.full(n, -1, dtype=np.int32)
    cdef int[::1] labels = labels_arr
    reps_arr = np.empty(n // m, dtype=np.int32)
    cdef int[::1] reps = reps_arr
    cdef int count = 0
    cdef Py_ssize_t x, j
    for x in range(n):
        if labels[x] < 0:
            reps[count] = x
            for j in range(m):
                labels[mul[sub[j], x]] = count
            count += 1
    return labels_arr, reps_arr


cdef inline unsigned long long _row_hash(const int *row, int n) nogil:
    cdef unsigned long long h = 1469598103934665603ULL
    cdef int i
    for i in range(n):
        h ^= <unsigned long long> row[i]
        h *= 1099511628211ULL
    return h


def perm_closure(const int[:, ::1] gens, int degree, long cap):
    """Breadth-first closure of permutation image tables.

    Returns an ``(order, degree)`` int32 array in discovery order, or ``None``
    once more than ``cap`` elements have been found.
    """
    cdef Py_ssize_t k = gens.shape[0]
    cdef long nslots = 16
    while nslots < 2 * (cap + 1):
        nslots *= 2
    cdef long mask = nslots - 1
    cdef long *slots = <long *> malloc(nslots * sizeof(long))
    cdef long capacity = 64
    cdef int *rows = <int *> malloc(capacity * degree * sizeof(int))
    cdef int *tmp = <int *> malloc(degree * sizeof(int))
    cdef long count = 0, head = 0, s, j
    cdef int i, g
    cdef unsigned long long h
    cdef bint found, overflow = False
    cdef int *newrows
    if slots == NULL or rows == NULL or tmp == NULL:
        free(slots); free(rows); free(tmp)
        raise MemoryError()
    try:
        for s in range(nslots):
            slots[s] = -1
        for i in range(degree):
            rows[i] = i
        h = _row_hash(rows, degree)
        slots[h & mask] = 0
        count = 1
        while head < count and not overflow:
            for g in range(k):
                for i in range(degree):
                    tmp[i] = gens[g, rows[head * degree + i]]
                h = _row_hash(tmp, degree)
                s = h & mask
                found = False
                while slots[s] >= 0:
                    if memcmp(&rows[slots[s] * degree], tmp, degree * sizeof(int)) == 0:
                        found = True
                        break
                    s = (s + 1) & mask
                if found:
                    continue
                if count >= cap:
                    overflow = True
                    break
                if count == capacity:
                    capacity *= 2
                    newrows = <int *> malloc(capacity * degree * sizeof(int))
                    if newrows == NULL:
                        raise MemoryError()
                    memcpy(newrows, rows, count * degree * sizeof(int))
                    free(rows)
                    rows = newrows
                memcpy(&rows[count * degree], tmp, degree * sizeof(int))
                slots[s] = count
                count += 1
            head += 1
        if overflow:
            return None
        out = np.empty((count, degree), dtype=np.int32)
        for s in range(count):
            for i in range(degree):
                out[s, i] = rows[s * degree + i]
        return out
    finally:
        free(slots)
        free(rows)
        free(tmp)


def lehmer_ranks(const int[:, ::1] perms):
    """Lexicographic rank of each row among all permutations of its degree."""
    cdef Py_ssize_t m = perms.shape[0]
    cdef int n = perms.shape[1]
    out_arr = np.empty(m, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef long long fact[21]
    cdef long long r
    cdef int i, j, c
    cdef Py_ssize_t row
    fact[0] = 1
    for i in range(1, 21):
        fact[i] = fact[i - 1] * i
    for row in range(m):
        r = 0
        for i in range(n):
            c = 0
            for j in range(i + 1, n):
                if perms[row, j] < perms[row, i]:
                    c += 1
            r += c * fact[n - 1 - i]
        out[row] = r
    return out_arr
