# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular Gauss-Jordan elimination."""

import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef inline i64 _inv(i64 a, i64 p):
    cdef i64 r = 1, e = p - 2
    a %= p
    while e:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


def rref_inplace(i64[:, ::1] a, i64 p):
    """Reduce ``a`` (entries in [0, p)) to reduced row echelon form in place.

    Returns the list of pivot columns; the first len(pivots) rows hold the
    echelon basis and the remaining rows are zero.
    """
    cdef Py_ssize_t nr = a.shape[0], nc = a.shape[1]
    cdef Py_ssize_t row = 0, col, i, k, sel
    cdef i64 inv, f, tmp, pp = p * p
    pivots = []
    for col in range(nc):
        if row == nr:
            break
        sel = -1
        for i in range(row, nr):
            if a[i, col] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != row:
            for k in range(col, nc):
                tmp = a[sel, k]
                a[sel, k] = a[row, k]
                a[row, k] = tmp
        inv = _inv(a[row, col], p)
        if inv != 1:
            for k in range(col, nc):
                if a[row, k]:
                    a[row, k] = a[row, k] * inv % p
        for i in range(nr):
            if i == row:
                continue
            f = a[i, col]
            if f == 0:
                continue
            for k in range(col, nc):
                if a[row, k]:
                    a[i, k] = (a[i, k] + pp - f * a[row, k]) % p
        pivots.append(col)
        row += 1
    return pivots
