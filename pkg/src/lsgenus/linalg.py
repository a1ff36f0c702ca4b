"""Exact linear algebra over small prime fields, on two backends.

GF(2) matrices are bit-packed, one ``uint64`` word per 64 columns, so a
row operation is a handful of word xors.  Odd-prime matrices are plain
``int64`` arrays with entries in ``0..p-1``.

The hot loops (echelon forms and reductions) exist twice: numba-compiled
kernels in :mod:`lsgenus._kernels` and vectorised numpy fallbacks here.
The numba path is used when available unless the environment variable
``LSGENUS_NUMBA`` is set to ``0``/``false``/``off``; setting it to ``1``
insists on numba and raises if the import fails.  ``backend()`` reports
which path is live.  ``benchmarks/bench_linalg.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "backend",
    "words_for",
    "pack_bool",
    "unpack_bits",
    "set_bits",
    "gf2_rref",
    "gf2_reduce",
    "gf2_reduce_record",
    "gf2_nullspace",
    "modp_rref",
    "modp_reduce",
    "modp_reduce_record",
    "modp_nullspace",
]

_ONE = np.uint64(1)


def words_for(ncols: int) -> int:
    """Number of uint64 words needed to hold ``ncols`` bits (at least 1)."""
    return max(1, (int(ncols) + 63) >> 6)


def pack_bool(dense) -> np.ndarray:
    """Pack a (rows, ncols) array of 0/1 values into uint64 words."""
    dense = np.ascontiguousarray(dense, dtype=np.uint8)
    nrows, ncols = dense.shape
    nwords = words_for(ncols)
    padded = np.zeros((nrows, nwords * 64), np.uint8)
    padded[:, :ncols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view(np.uint64).reshape(nrows, nwords)


def unpack_bits(packed: np.ndarray, ncols: int) -> np.ndarray:
    """Inverse of :func:`pack_bool`; returns a (rows, ncols) uint8 array."""
    nrows, nwords = packed.shape
    bytes_ = np.ascontiguousarray(packed).view(np.uint8).reshape(nrows, nwords * 8)
    bits = np.unpackbits(bytes_, axis=1, bitorder="little")
    return bits[:, :ncols]


def set_bits(packed: np.ndarray, rows, cols) -> None:
    """Set bit ``cols[i]`` of row ``rows[i]`` for each i (duplicates ok)."""
    rows = np.asarray(rows, np.int64)
    cols = np.asarray(cols, np.int64)
    np.bitwise_or.at(packed, (rows, cols >> 6), _ONE << (cols & 63).astype(np.uint64))


# ---------------------------------------------------------------------------
# numpy fallback implementations


def _gf2_rref_np(m: np.ndarray, ncols: int) -> np.ndarray:
    nrows = m.shape[0]
    pivots = []
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        b = np.uint64(col & 63)
        cand = np.nonzero((m[rank:, w] >> b) & _ONE)[0]
        if cand.size == 0:
            continue
        pr = rank + int(cand[0])
        if pr != rank:
            m[[rank, pr]] = m[[pr, rank]]
        hit = ((m[:, w] >> b) & _ONE).astype(bool)
        hit[rank] = False
        if hit.any():
            m[hit] ^= m[rank]
        pivots.append(col)
        rank += 1
    return np.asarray(pivots, np.int64)


def _gf2_reduce_np(v: np.ndarray, ech: np.ndarray, pivots: np.ndarray) -> None:
    for k, col in enumerate(pivots):
        w = int(col) >> 6
        b = np.uint64(int(col) & 63)
        hit = ((v[:, w] >> b) & _ONE).astype(bool)
        if hit.any():
            v[hit] ^= ech[k]


def _gf2_reduce_record_np(v, ech, pivots, coeffs) -> None:
    for k, col in enumerate(pivots):
        w = int(col) >> 6
        b = np.uint64(int(col) & 63)
        hit = ((v[:, w] >> b) & _ONE).astype(bool)
        if hit.any():
            coeffs[hit, k >> 6] |= _ONE << np.uint64(k & 63)
            v[hit] ^= ech[k]


def _modp_rref_np(m: np.ndarray, p: int) -> np.ndarray:
    nrows, ncols = m.shape
    pivots = []
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        cand = np.nonzero(m[rank:, col])[0]
        if cand.size == 0:
            continue
        pr = rank + int(cand[0])
        if pr != rank:
            m[[rank, pr]] = m[[pr, rank]]
        s = pow(int(m[rank, col]), p - 2, p)
        if s != 1:
            m[rank] = (m[rank] * s) % p
        f = m[:, col].copy()
        f[rank] = 0
        hit = np.nonzero(f)[0]
        if hit.size:
            m[hit] = (m[hit] - f[hit, None] * m[rank][None, :]) % p
        pivots.append(col)
        rank += 1
    return np.asarray(pivots, np.int64)


def _modp_reduce_np(v, ech, pivots, p) -> None:
    for k, col in enumerate(pivots):
        f = v[:, int(col)].copy()
        hit = np.nonzero(f)[0]
        if hit.size:
            v[hit] = (v[hit] - f[hit, None] * ech[k][None, :]) % p


def _modp_reduce_record_np(v, ech, pivots, p, coeffs) -> None:
    for k, col in enumerate(pivots):
        f = v[:, int(col)].copy()
        hit = np.nonzero(f)[0]
        if hit.size:
            coeffs[hit, k] = f[hit]
            v[hit] = (v[hit] - f[hit, None] * ech[k][None, :]) % p


# ---------------------------------------------------------------------------
# backend selection

def _select():
    flag = os.environ.get("LSGENUS_NUMBA", "").strip().lower()
    if flag in ("0", "false", "no", "off"):
        return None
    try:
        from . import _kernels
    except ImportError:
        if flag in ("1", "true", "yes", "on"):
            raise
        return None
    return _kernels


_K = _select()


def backend() -> str:
    """Name of the live elimination backend: ``"numba"`` or ``"numpy"``."""
    return "numba" if _K is not None else "numpy"


def gf2_rref(m: np.ndarray, ncols: int) -> np.ndarray:
    """Reduced row echelon form of a packed GF(2) matrix, in place.

    Pivot columns are scanned left to right, so pivots are the
    lexicographically first possible set.  Returns the pivot columns; on
    return the first ``len(pivots)`` rows of ``m`` are the echelon rows.
    """
    if _K is not None:
        return _K.gf2_rref(m, ncols)
    return _gf2_rref_np(m, ncols)


def gf2_reduce(v: np.ndarray, ech: np.ndarray, pivots: np.ndarray) -> None:
    """Reduce rows of ``v`` in place modulo the span of echelon rows."""
    if pivots.size == 0 or v.shape[0] == 0:
        return
    if _K is not None:
        _K.gf2_reduce(v, ech, pivots)
    else:
        _gf2_reduce_np(v, ech, pivots)


def gf2_reduce_record(v, ech, pivots) -> np.ndarray:
    """Reduce rows of ``v`` in place and return the packed coefficients.

    Bit ``k`` of returned row ``i`` says echelon row ``k`` was subtracted
    while reducing ``v[i]``.
    """
    coeffs = np.zeros((v.shape[0], words_for(max(1, pivots.size))), np.uint64)
    if pivots.size == 0 or v.shape[0] == 0:
        return coeffs
    if _K is not None:
        _K.gf2_reduce_record(v, ech, pivots, coeffs)
    else:
        _gf2_reduce_record_np(v, ech, pivots, coeffs)
    return coeffs


def gf2_nullspace(d: np.ndarray, ncols: int) -> np.ndarray:
    """Packed basis of the right nullspace of a packed GF(2) matrix."""
    r = d.copy()
    piv = gf2_rref(r, ncols)
    rank = piv.size
    free = np.setdiff1d(np.arange(ncols, dtype=np.int64), piv, assume_unique=False)
    nf = free.size
    dense = np.zeros((nf, ncols), np.uint8)
    if nf == 0:
        return pack_bool(dense)
    dense[np.arange(nf), free] = 1
    if rank:
        vals = (r[:rank][:, free >> 6] >> (free & 63).astype(np.uint64)) & _ONE
        dense[:, piv] = vals.T.astype(np.uint8)
    return pack_bool(dense)


def modp_rref(m: np.ndarray, p: int) -> np.ndarray:
    """Reduced row echelon form over GF(p), in place; returns pivot cols."""
    if _K is not None:
        return _K.modp_rref(m, p)
    return _modp_rref_np(m, p)


def modp_reduce(v: np.ndarray, ech: np.ndarray, pivots: np.ndarray, p: int) -> None:
    if pivots.size == 0 or v.shape[0] == 0:
        return
    if _K is not None:
        _K.modp_reduce(v, ech, pivots, p)
    else:
        _modp_reduce_np(v, ech, pivots, p)


def modp_reduce_record(v, ech, pivots, p) -> np.ndarray:
    """Reduce rows of ``v`` in place; entry ``(i, k)`` is the coefficient
    of echelon row ``k`` used on ``v[i]``."""
    coeffs = np.zeros((v.shape[0], max(1, pivots.size)), np.int64)
    if pivots.size == 0 or v.shape[0] == 0:
        return coeffs
    if _K is not None:
        _K.modp_reduce_record(v, ech, pivots, p, coeffs)
    else:
        _modp_reduce_record_np(v, ech, pivots, p, coeffs)
    return coeffs


def modp_nullspace(d: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right nullspace of an int64 matrix over GF(p)."""
    r = d.copy()
    piv = modp_rref(r, p)
    rank = piv.size
    ncols = d.shape[1]
    free = np.setdiff1d(np.arange(ncols, dtype=np.int64), piv)
    basis = np.zeros((free.size, ncols), np.int64)
    if free.size == 0:
        return basis
    basis[np.arange(free.size), free] = 1
    if rank:
        basis[:, piv] = (-r[:rank][:, free].T) % p
    return basis
