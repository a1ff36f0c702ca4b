"""Numba-compiled elimination kernels.

Importing this module requires numba.  :mod:`lsgenus.linalg` falls back to
pure-numpy implementations when the import fails or when the backend flag
forces it, so nothing else should import this module directly.
"""

import numpy as np
from numba import njit

ONE = np.uint64(1)


@njit(cache=True)
def gf2_rref(m, ncols):
    """In-place reduced row echelon form over GF(2).

    ``m`` is a bit-packed matrix, one uint64 word per 64 columns.  Pivot
    columns are chosen left to right, so the result is canonical.  Returns
    the pivot column indices; afterwards the first ``len(pivots)`` rows of
    ``m`` hold the echelon rows and the rest are zero.
    """
    nrows, nwords = m.shape
    pivots = np.empty(ncols if ncols < nrows else nrows, np.int64)
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        b = np.uint64(col & 63)
        pr = -1
        for r in range(rank, nrows):
            if (m[r, w] >> b) & ONE:
                pr = r
                break
        if pr < 0:
            continue
        if pr != rank:
            for k in range(nwords):
                tmp = m[pr, k]
                m[pr, k] = m[rank, k]
                m[rank, k] = tmp
        # The new echelon row has no bits before its pivot column, so rows
        # can be cleaned starting at the pivot word.
        for r in range(nrows):
            if r != rank and ((m[r, w] >> b) & ONE):
                for k in range(w, nwords):
                    m[r, k] ^= m[rank, k]
        pivots[rank] = col
        rank += 1
    return pivots[:rank].copy()


@njit(cache=True)
def gf2_reduce(v, ech, pivots):
    """Reduce the rows of ``v`` in place against packed echelon rows."""
    nwords = v.shape[1]
    for i in range(v.shape[0]):
        for k in range(pivots.shape[0]):
            col = pivots[k]
            w = col >> 6
            b = np.uint64(col & 63)
            if (v[i, w] >> b) & ONE:
                for t in range(w, nwords):
                    v[i, t] ^= ech[k, t]


@njit(cache=True)
def gf2_reduce_record(v, ech, pivots, coeffs):
    """Like :func:`gf2_reduce`, recording which echelon rows were used.

    ``coeffs`` is a packed (len(v), ceil(rank/64)) matrix; bit ``k`` of row
    ``i`` is set when echelon row ``k`` took part in reducing ``v[i]``.
    """
    nwords = v.shape[1]
    for i in range(v.shape[0]):
        for k in range(pivots.shape[0]):
            col = pivots[k]
            w = col >> 6
            b = np.uint64(col & 63)
            if (v[i, w] >> b) & ONE:
                coeffs[i, k >> 6] |= ONE << np.uint64(k & 63)
                for t in range(w, nwords):
                    v[i, t] ^= ech[k, t]


@njit(cache=True)
def modp_rref(m, p):
    """In-place reduced row echelon form over GF(p), p an odd prime."""
    nrows, ncols = m.shape
    inv = np.zeros(p, np.int64)
    for a in range(1, p):
        x = 1
        base = a
        e = p - 2
        while e:
            if e & 1:
                x = (x * base) % p
            base = (base * base) % p
            e >>= 1
        inv[a] = x
    pivots = np.empty(ncols if ncols < nrows else nrows, np.int64)
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        pr = -1
        for r in range(rank, nrows):
            if m[r, col] != 0:
                pr = r
                break
        if pr < 0:
            continue
        if pr != rank:
            for k in range(ncols):
                tmp = m[pr, k]
                m[pr, k] = m[rank, k]
                m[rank, k] = tmp
        s = inv[m[rank, col]]
        if s != 1:
            for k in range(col, ncols):
                m[rank, k] = (m[rank, k] * s) % p
        for r in range(nrows):
            f = m[r, col]
            if r != rank and f != 0:
                for k in range(col, ncols):
                    m[r, k] = (m[r, k] - f * m[rank, k]) % p
        pivots[rank] = col
        rank += 1
    return pivots[:rank].copy()


@njit(cache=True)
def modp_reduce(v, ech, pivots, p):
    """Reduce the rows of ``v`` in place against GF(p) echelon rows."""
    ncols = v.shape[1]
    for i in range(v.shape[0]):
        for k in range(pivots.shape[0]):
            col = pivots[k]
            f = v[i, col]
            if f != 0:
                for t in range(col, ncols):
                    v[i, t] = (v[i, t] - f * ech[k, t]) % p


@njit(cache=True)
def modp_reduce_record(v, ech, pivots, p, coeffs):
    """GF(p) reduction that records the coefficient of each echelon row."""
    ncols = v.shape[1]
    for i in range(v.shape[0]):
        for k in range(pivots.shape[0]):
            col = pivots[k]
            f = v[i, col]
            if f != 0:
                coeffs[i, k] = f
                for t in range(col, ncols):
                    v[i, t] = (v[i, t] - f * ech[k, t]) % p
