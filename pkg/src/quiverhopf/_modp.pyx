# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p kernels: matmul, rank and rref on int64 matrices.

Pivoting matches linalg._py_rref / _py_rank exactly (first nonzero row,
full reduction), so both backends produce identical output.
"""

import numpy as np

cimport numpy as cnp


cdef long long _powmod(long long base, long long exp, long long p):
    cdef long long result = 1
    base %= p
    while exp > 0:
        if exp & 1:
            result = (result * base) % p
        base = (base * base) % p
        exp >>= 1
    return result


def matmul_mod(cnp.ndarray[cnp.int64_t, ndim=2] a,
               cnp.ndarray[cnp.int64_t, ndim=2] b,
               long long p):
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1], m = b.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.zeros((n, m), dtype=np.int64)
    cdef Py_ssize_t i, j, t
    cdef long long acc, aval
    for i in range(n):
        for t in range(k):
            aval = a[i, t]
            if aval == 0:
                continue
            for j in range(m):
                out[i, j] = (out[i, j] + aval * b[t, j]) % p
    return out


def rank_mod(cnp.ndarray[cnp.int64_t, ndim=2] a, long long p):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] m = a.copy()
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef long long inv, factor, tmp
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(cols):
                tmp = m[r, j]; m[r, j] = m[k, j]; m[k, j] = tmp
        inv = _powmod(m[r, c], p - 2, p)
        for j in range(c, cols):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(r + 1, rows):
            factor = m[i, c]
            if factor == 0:
                continue
            for j in range(c, cols):
                m[i, j] = (m[i, j] - factor * m[r, j]) % p
                if m[i, j] < 0:
                    m[i, j] += p
        r += 1
    return r


def rref_mod(cnp.ndarray[cnp.int64_t, ndim=2] a, long long p):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] m = a.copy()
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef long long inv, factor, tmp
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(cols):
                tmp = m[r, j]; m[r, j] = m[k, j]; m[k, j] = tmp
        inv = _powmod(m[r, c], p - 2, p)
        for j in range(cols):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(rows):
            if i == r:
                continue
            factor = m[i, c]
            if factor == 0:
                continue
            for j in range(cols):
                m[i, j] = (m[i, j] - factor * m[r, j]) % p
                if m[i, j] < 0:
                    m[i, j] += p
        pivots.append(c)
        r += 1
    return m, pivots
