# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled valuation sweep, mirroring fdekit._pykernel.sweep."""

import numpy as np

from libc.stdlib cimport free, malloc


cdef int _ev(Py_ssize_t i,
             const unsigned char[::1] kinds,
             const int[::1] a,
             const int[::1] b,
             unsigned char* env,
             const unsigned char[::1] neg,
             const unsigned char[:, :, ::1] tables,
             const unsigned char[::1] codes) noexcept nogil:
    cdef int k = kinds[i]
    cdef int acc, v, c
    cdef Py_ssize_t body, slot, red
    if k == 0:
        return env[a[i]]
    if k == 1:
        return a[i]
    if k == 2:
        return neg[_ev(a[i], kinds, a, b, env, neg, tables, codes)]
    if k <= 9:
        return tables[k - 3,
                      _ev(a[i], kinds, a, b, env, neg, tables, codes),
                      _ev(b[i], kinds, a, b, env, neg, tables, codes)]
    body = a[i]
    slot = b[i]
    red = 0 if k == 10 else 1  # forall reduces by meet (the "and" table), exists by join
    acc = -1
    for c in range(codes.shape[0]):
        env[slot] = codes[c]
        v = _ev(body, kinds, a, b, env, neg, tables, codes)
        acc = v if acc < 0 else tables[red, acc, v]
    return acc


def sweep(const unsigned char[::1] kinds,
          const int[::1] a,
          const int[::1] b,
          const int[::1] roots,
          int natoms,
          int nslots,
          const unsigned char[::1] codes,
          const unsigned char[::1] neg,
          const unsigned char[:, :, ::1] tables,
          bint mix):
    cdef int ncodes = codes.shape[0]
    cdef int nroots = roots.shape[0]
    cdef Py_ssize_t nrows = 1
    cdef int i, j, pos
    cdef bint keep, has_b, has_n
    for i in range(natoms):
        nrows *= ncodes

    vals_arr = np.empty((nrows, max(natoms, 1)), dtype=np.uint8)
    out_arr = np.empty((nrows, max(nroots, 1)), dtype=np.uint8)
    cdef unsigned char[:, ::1] vals = vals_arr
    cdef unsigned char[:, ::1] out = out_arr

    cdef unsigned char* env = <unsigned char*> malloc(max(nslots, 1))
    cdef int* digits = <int*> malloc(max(natoms, 1) * sizeof(int))
    if env == NULL or digits == NULL:
        free(env)
        free(digits)
        raise MemoryError()
    for i in range(natoms):
        digits[i] = 0

    cdef Py_ssize_t kept = 0
    cdef Py_ssize_t row
    try:
        with nogil:
            for row in range(nrows):
                keep = True
                if mix:
                    has_b = False
                    has_n = False
                    for i in range(natoms):
                        if codes[digits[i]] == 1:
                            has_b = True
                        elif codes[digits[i]] == 2:
                            has_n = True
                    if has_b and has_n:
                        keep = False
                if keep:
                    for i in range(natoms):
                        env[i] = codes[digits[i]]
                        vals[kept, i] = codes[digits[i]]
                    for j in range(nroots):
                        out[kept, j] = <unsigned char> _ev(
                            roots[j], kinds, a, b, env, neg, tables, codes)
                    kept += 1
                for pos in range(natoms - 1, -1, -1):
                    digits[pos] += 1
                    if digits[pos] < ncodes:
                        break
                    digits[pos] = 0
    finally:
        free(env)
        free(digits)

    return vals_arr[:kept, :natoms], out_arr[:kept, :nroots]
