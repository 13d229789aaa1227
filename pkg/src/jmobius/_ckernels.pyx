# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels over int64 arrays.

Arithmetic is overflow-checked: any int64 overflow raises OverflowError and the
caller retries with the pure-Python kernels, so results stay exact.
"""
cimport cython
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


@cython.overflowcheck(True)
def mobius_matrix(const unsigned char[:, ::1] leq, const cnp.intp_t[::1] order):
    cdef Py_ssize_t n = leq.shape[0]
    cdef Py_ssize_t x, y, a, k, m, seen_len
    cdef i64 s
    out = np.zeros((n, n), dtype=np.int64)
    cdef i64[:, ::1] mu = out
    seen = np.empty(n, dtype=np.intp)
    cdef cnp.intp_t[::1] sv = seen
    for x in range(n):
        seen_len = 0
        for k in range(n):
            y = order[k]
            if not leq[x, y]:
                continue
            if y == x:
                mu[x, y] = 1
            else:
                s = 0
                for m in range(seen_len):
                    a = sv[m]
                    if leq[a, y]:
                        s = s + mu[x, a]
                mu[x, y] = -s
            sv[seen_len] = y
            seen_len += 1
    return out


@cython.overflowcheck(True)
def tri_mul(const unsigned char[:, ::1] leq, const i64[:, :, ::1] f, const i64[:, :, ::1] g):
    cdef Py_ssize_t n = leq.shape[0]
    cdef Py_ssize_t x, y, z, a, b, ia, ib, nl, nr
    cdef i64 s, fa, term
    out = np.zeros((n, n, n), dtype=np.int64)
    cdef i64[:, :, ::1] o = out
    lbuf = np.empty(n, dtype=np.intp)
    rbuf = np.empty(n, dtype=np.intp)
    cdef cnp.intp_t[::1] left = lbuf
    cdef cnp.intp_t[::1] right = rbuf
    for x in range(n):
        for y in range(n):
            if not leq[x, y]:
                continue
            nl = 0
            for a in range(n):
                if leq[x, a] and leq[a, y] and f[x, a, a] != 0:
                    left[nl] = a
                    nl += 1
            for z in range(n):
                if not leq[y, z]:
                    continue
                nr = 0
                for b in range(n):
                    if leq[y, b] and leq[b, z] and f[b, b, z] != 0:
                        right[nr] = b
                        nr += 1
                s = 0
                for ia in range(nl):
                    a = left[ia]
                    fa = f[x, a, a]
                    for ib in range(nr):
                        b = right[ib]
                        term = fa * g[a, y, b]
                        term = term * f[b, b, z]
                        s = s + term
                o[x, y, z] = s
    return out


@cython.overflowcheck(True)
def jmobius_coeffs(const unsigned char[:, ::1] leq, const i64[:, ::1] mu,
                   const i64[::1] ranks, long total_rank):
    cdef Py_ssize_t n = leq.shape[0]
    cdef Py_ssize_t x, y, z
    cdef long base = 3 * total_rank
    cdef i64 mxy, term
    out = np.zeros(3 * total_rank + 1, dtype=np.int64)
    cdef i64[::1] c = out
    for x in range(n):
        for y in range(n):
            if not leq[x, y]:
                continue
            mxy = mu[x, y]
            if mxy == 0:
                continue
            for z in range(n):
                if leq[y, z]:
                    term = mxy * mu[y, z]
                    c[base - ranks[x] - ranks[y] - ranks[z]] = c[base - ranks[x] - ranks[y] - ranks[z]] + term
    return out
