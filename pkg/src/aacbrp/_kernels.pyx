# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled attack-mining kernel.

Input is the comparison tensor ``cmp[k, a, b]`` (codes: 0 incomparable,
1 greater, 2 less, 3 equivalent) for every order k and argument pair, and
the outcome code of every argument. Index 0 is the default argument.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    INC = 0
    GT = 1
    LT = 2
    EQ = 3


def derived_relations(const signed char[:, :, ::1] cmp, const signed char[::1] outcome):
    """Return (potential, geq_all, max_strict) as int32/uint8/int32 matrices."""
    cdef Py_ssize_t n = cmp.shape[0]
    cdef Py_ssize_t m = cmp.shape[1]
    cdef Py_ssize_t a, b, k
    cdef signed char c
    cdef int first
    pot_arr = np.zeros((m, m), dtype=np.int32)
    geq_arr = np.ones((m, m), dtype=np.uint8)
    ms_arr = np.zeros((m, m), dtype=np.int32)
    cdef int[:, ::1] pot = pot_arr
    cdef unsigned char[:, ::1] geq = geq_arr
    cdef int[:, ::1] ms = ms_arr
    with nogil:
        for a in range(m):
            for b in range(m):
                first = -1
                for k in range(n):
                    c = cmp[k, a, b]
                    if c == GT:
                        ms[a, b] = <int>(k + 1)
                    elif c != EQ:
                        geq[a, b] = 0
                    if first < 0 and c != EQ:
                        first = <int>k
                if first >= 0 and cmp[first, a, b] == GT and outcome[a] != outcome[b]:
                    pot[a, b] = first + 1
    return pot_arr, geq_arr, ms_arr


def mine_attacks(const signed char[:, :, ::1] cmp, const signed char[::1] outcome):
    """Return (attacker, target, order) arrays of the order-labelled attacks."""
    cdef Py_ssize_t m = cmp.shape[1]
    pot_arr, geq_arr, ms_arr = derived_relations(cmp, outcome)
    cdef int[:, ::1] pot = pot_arr
    cdef unsigned char[:, ::1] geq = geq_arr
    cdef int[:, ::1] ms = ms_arr
    cdef Py_ssize_t a, b, g, count = 0
    cdef int i, pg
    cdef bint blocked
    src_arr = np.empty(m * m, dtype=np.int32)
    dst_arr = np.empty(m * m, dtype=np.int32)
    ord_arr = np.empty(m * m, dtype=np.int32)
    cdef int[::1] src = src_arr
    cdef int[::1] dst = dst_arr
    cdef int[::1] od = ord_arr
    with nogil:
        for a in range(m):
            for b in range(m):
                i = pot[a, b]
                if i == 0:
                    continue
                blocked = False
                for g in range(m):
                    if outcome[g] != outcome[a] or not geq[a, g]:
                        continue
                    pg = pot[g, b]
                    if (pg == i and ms[a, g] >= i) or pg > i:
                        blocked = True
                        break
                if not blocked:
                    src[count] = <int>a
                    dst[count] = <int>b
                    od[count] = i
                    count += 1
    return src_arr[:count], dst_arr[:count], ord_arr[:count]
