"""Numpy implementation of the modular elimination kernel."""

import numpy as np


def rref_inplace(a, p):
    """Reduce ``a`` (int64, entries in [0, p)) to reduced row echelon form in place.

    Returns the pivot columns; the first len(pivots) rows hold the basis.
    """
    nr, nc = a.shape
    row = 0
    pivots = []
    for col in range(nc):
        if row == nr:
            break
        nz = np.flatnonzero(a[row:, col])
        if nz.size == 0:
            continue
        sel = row + int(nz[0])
        if sel != row:
            a[[row, sel]] = a[[sel, row]]
        inv = pow(int(a[row, col]), p - 2, p)
        if inv != 1:
            a[row, col:] = a[row, col:] * inv % p
        colv = a[:, col].copy()
        colv[row] = 0
        rows = np.flatnonzero(colv)
        if rows.size:
            piv = a[row, col:]
            a[rows, col:] = (a[rows, col:] - np.outer(colv[rows], piv) % p) % p
        pivots.append(col)
        row += 1
    return pivots
