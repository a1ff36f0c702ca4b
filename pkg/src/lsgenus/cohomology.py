"""Simplicial cohomology over a prime field.

Cochains are plain vectors indexed by the rows of the owner's simplex
tables: uint8 bit vectors over GF(2), int64 residue vectors otherwise.
All elimination goes through :mod:`lsgenus.linalg`, so the numba/numpy
backend switch applies uniformly.

The central quantity is the relative length ``hl``: the longest nonzero
cup product of positive-degree ambient classes after restriction to an
open piece, computed on the order-complex model of the piece.  Products
of pullbacks are taken in the model; the last-vertex maps involved are
weakly order-preserving on chains, so the front/back-face product rule
commutes with restriction at the cochain level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import linalg as L
from .complexes import (
    Complex,
    SimplicialMap,
    UpSet,
    induced_subcomplex,
    order_complex_model,
    vertex_components,
)
from .errors import (
    EmptyUpSet,
    InputError,
    InvariantViolation,
    OwnerMismatch,
    TractabilityLimit,
)

__all__ = [
    "Field",
    "GF2",
    "CohomologyClass",
    "GradedBasis",
    "cohomology_basis",
    "cup_product",
    "induced_map",
    "pullback_cochain",
    "coboundary_of",
    "is_coboundary",
    "hl",
    "hl_with_generators",
    "cup_length",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class Field:
    """GF(p) for a prime p; arithmetic is on residues 0..p-1."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise InputError(f"characteristic {self.p} is not prime")

    @property
    def gf2(self) -> bool:
        return self.p == 2

    def zeros(self, n: int) -> np.ndarray:
        return np.zeros(n, np.uint8 if self.gf2 else np.int64)

    def asvec(self, data) -> np.ndarray:
        a = np.asarray(data, np.int64) % self.p
        return a.astype(np.uint8) if self.gf2 else a


GF2 = Field(2)


# ---------------------------------------------------------------------------
# coboundary data, cached per complex


def _alt_signs(n: int) -> np.ndarray:
    s = np.ones(n, np.int64)
    s[1::2] = -1
    return s


@lru_cache(maxsize=256)
def _im_rows_gf2(k: Complex, d: int) -> np.ndarray:
    """Packed rows spanning im(δ: C^{d-1} → C^d); row σ is δ(indicator σ)."""
    fd = k.f_vector[d]
    out = np.zeros((k.f_vector[d - 1], L.words_for(fd)), np.uint64)
    fr = k.facet_rows(d)
    cols = np.repeat(np.arange(fd, dtype=np.int64), d + 1)
    L.set_bits(out, fr.ravel(), cols)
    return out


@lru_cache(maxsize=256)
def _constraint_rows_gf2(k: Complex, d: int) -> np.ndarray:
    """Packed cocycle constraints in degree d: one row per (d+1)-simplex."""
    n = k.f_vector[d + 1]
    out = np.zeros((n, L.words_for(k.f_vector[d])), np.uint64)
    fr = k.facet_rows(d + 1)
    rows = np.repeat(np.arange(n, dtype=np.int64), d + 2)
    L.set_bits(out, rows, fr.ravel())
    return out


@lru_cache(maxsize=256)
def _im_rows_modp(k: Complex, p: int, d: int) -> np.ndarray:
    out = np.zeros((k.f_vector[d - 1], k.f_vector[d]), np.int64)
    fr = k.facet_rows(d)
    fd = k.f_vector[d]
    cols = np.repeat(np.arange(fd, dtype=np.int64), d + 1)
    signs = np.tile(_alt_signs(d + 1), fd)
    np.add.at(out, (fr.ravel(), cols), signs)
    return out % p


@lru_cache(maxsize=256)
def _im_echelon(k: Complex, p: int, d: int):
    """(echelon_rows, pivots) for im δ in degree d (empty for d = 0)."""
    if d == 0:
        if p == 2:
            return np.zeros((0, L.words_for(k.f_vector[0])), np.uint64), np.zeros(0, np.int64)
        return np.zeros((0, k.f_vector[0]), np.int64), np.zeros(0, np.int64)
    if p == 2:
        m = _im_rows_gf2(k, d).copy()
        piv = L.gf2_rref(m, k.f_vector[d])
    else:
        m = _im_rows_modp(k, p, d).copy()
        piv = L.modp_rref(m, p)
    return np.ascontiguousarray(m[: piv.size]), piv


def coboundary_of(k: Complex, f: Field, vec: np.ndarray, d: int) -> np.ndarray:
    """δ(vec) as a vector over (d+1)-simplices (zero vector at top degree)."""
    if d >= k.dim:
        return f.zeros(0)
    fr = k.facet_rows(d + 1)
    vals = vec.astype(np.int64)[fr]
    if not f.gf2:
        vals = vals * _alt_signs(d + 2)[None, :]
    return f.asvec(vals.sum(axis=1))


def _reduce_mod(f: Field, rows: np.ndarray, ech, piv, ncols: int) -> np.ndarray:
    """Reduce dense rows modulo an echelon; returns reduced dense rows."""
    if rows.shape[0] == 0 or piv.size == 0:
        return rows.copy()
    if f.gf2:
        v = L.pack_bool(rows)
        L.gf2_reduce(v, ech, piv)
        return L.unpack_bits(v, ncols)
    v = rows.copy()
    L.modp_reduce(v, ech, piv, f.p)
    return v


def _rref_dense(f: Field, rows: np.ndarray, ncols: int):
    """(canonical independent rows, pivots) of the span of dense rows."""
    if rows.shape[0] == 0:
        return rows.copy(), np.zeros(0, np.int64)
    if f.gf2:
        m = L.pack_bool(rows)
        piv = L.gf2_rref(m, ncols)
        return L.unpack_bits(m[: piv.size], ncols), piv
    m = rows.copy()
    piv = L.modp_rref(m, f.p)
    return m[: piv.size], piv


# ---------------------------------------------------------------------------
# classes and bases


@dataclass(frozen=True)
class CohomologyClass:
    """A cocycle representative on a fixed complex."""

    owner: Complex
    field: Field
    degree: int
    vector: np.ndarray

    def __post_init__(self):
        v = self.field.asvec(self.vector)
        want = (
            self.owner.f_vector[self.degree] if self.degree <= self.owner.dim else 0
        )
        if v.shape != (want,):
            raise InputError("cocycle vector length does not match the complex")
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)
        if coboundary_of(self.owner, self.field, v, self.degree).any():
            raise InputError("vector is not a cocycle")

    def is_zero_class(self) -> bool:
        return is_coboundary(self.owner, self.field, self.vector, self.degree)


@dataclass(frozen=True)
class GradedBasis:
    """Per-degree representatives of H^d plus reduction data."""

    owner: Complex
    field: Field
    reps: tuple  # reps[d]: dense matrix, one representative per row
    _basis_ech: tuple = field(repr=False, default=())
    _basis_piv: tuple = field(repr=False, default=())

    @property
    def betti(self) -> tuple:
        return tuple(r.shape[0] for r in self.reps)

    def classes(self, d: int):
        return [
            CohomologyClass(self.owner, self.field, d, row) for row in self.reps[d]
        ]

    def reduce_mod_coboundaries(self, vec: np.ndarray, d: int) -> np.ndarray:
        ech, piv = _im_echelon(self.owner, self.field.p, d)
        return _reduce_mod(
            self.field, vec.reshape(1, -1), ech, piv, self.owner.f_vector[d]
        )[0]

    def coordinates(self, vec: np.ndarray, d: int) -> np.ndarray:
        """Coefficients of a cocycle's class in this basis."""
        n = self.owner.f_vector[d]
        red = self.reduce_mod_coboundaries(self.field.asvec(vec), d)
        if not red.any():
            return self.field.zeros(self.reps[d].shape[0])
        ech, piv = self._basis_ech[d], self._basis_piv[d]
        if self.field.gf2:
            v = L.pack_bool(red.reshape(1, -1))
            co = L.gf2_reduce_record(v, ech, piv)
            if L.unpack_bits(v, n).any():
                raise InvariantViolation("vector is not in the span of the basis")
            return L.unpack_bits(co, max(1, piv.size))[0, : self.reps[d].shape[0]]
        v = red.reshape(1, -1).copy()
        co = L.modp_reduce_record(v, ech, piv, self.field.p)
        if v.any():
            raise InvariantViolation("vector is not in the span of the basis")
        return co[0, : self.reps[d].shape[0]]


@lru_cache(maxsize=64)
def cohomology_basis(k: Complex, f: Field = GF2) -> GradedBasis:
    """Canonical basis of H^d(k; f) for every degree, via elimination."""
    reps, echs, pivs = [], [], []
    for d in range(k.dim + 1):
        fd = k.f_vector[d]
        if f.gf2:
            if d < k.dim:
                ker = L.unpack_bits(
                    L.gf2_nullspace(_constraint_rows_gf2(k, d), fd), fd
                )
            else:
                ker = np.eye(fd, dtype=np.uint8)
        else:
            if d < k.dim:
                m = _im_rows_modp(k, f.p, d + 1)
                ker = L.modp_nullspace(np.ascontiguousarray(m.T) % f.p, f.p)
            else:
                ker = np.eye(fd, dtype=np.int64)
        ech, piv = _im_echelon(k, f.p, d)
        red = _reduce_mod(f, ker, ech, piv, fd)
        red = red[red.any(axis=1)]
        basis, bpiv = _rref_dense(f, red, fd)
        reps.append(basis)
        if f.gf2:
            echs.append(L.pack_bool(basis) if basis.shape[0] else
                        np.zeros((0, L.words_for(fd)), np.uint64))
        else:
            echs.append(basis.copy())
        pivs.append(bpiv)
    return GradedBasis(k, f, tuple(reps), tuple(echs), tuple(pivs))


def is_coboundary(k: Complex, f: Field, vec: np.ndarray, d: int) -> bool:
    vec = f.asvec(vec)
    if not vec.any():
        return True
    ech, piv = _im_echelon(k, f.p, d)
    return not _reduce_mod(f, vec.reshape(1, -1), ech, piv, k.f_vector[d]).any()


# ---------------------------------------------------------------------------
# cup products and induced maps


@lru_cache(maxsize=1024)
def _front_back_rows(k: Complex, d: int, p: int):
    """Row indices of the front p-face and back (d-p)-face of d-simplices."""
    table = k.tables[d]
    rm_f, rm_b = k.row_map(p), k.row_map(d - p)
    front = np.empty(table.shape[0], np.int64)
    back = np.empty(table.shape[0], np.int64)
    for r, row in enumerate(table.tolist()):
        front[r] = rm_f[tuple(row[: p + 1])]
        back[r] = rm_b[tuple(row[p:])]
    return front, back


def _cup_vec(k: Complex, f: Field, a: np.ndarray, p: int, b: np.ndarray, q: int):
    """Front/back-face product of cochain vectors; None above top degree."""
    d = p + q
    if d > k.dim:
        return None
    front, back = _front_back_rows(k, d, p)
    if f.gf2:
        return a[front] & b[back]
    return (a[front].astype(np.int64) * b[back]) % f.p


def cup_product(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    if a.owner != b.owner:
        raise OwnerMismatch("cup product across different complexes")
    if a.field != b.field:
        raise InputError("cup product across different fields")
    k, f = a.owner, a.field
    d = a.degree + b.degree
    if d > k.dim:
        return CohomologyClass(k, f, d, f.zeros(0))
    vec = _cup_vec(k, f, a.vector, a.degree, b.vector, b.degree)
    return CohomologyClass(k, f, d, vec)


def pullback_cochain(
    m: SimplicialMap, f: Field, vec: np.ndarray, d: int
) -> np.ndarray:
    """(m* vec) on the source; degenerate simplex images contribute zero."""
    if d > m.source.dim:
        return f.zeros(0)
    tdim, trow = m.image_rows(d)
    out = f.zeros(m.source.f_vector[d])
    sel = tdim == d
    if sel.any():
        if f.gf2:
            out[sel] = vec[trow[sel]]
        else:
            signs = m.image_signs(d).astype(np.int64)
            out[sel] = (vec[trow[sel]] * signs[sel]) % f.p
    return out


def induced_map(m: SimplicialMap, f: Field = GF2) -> dict:
    """Pullback on cohomology, one matrix per degree shared by both bases.

    The degree-d matrix has one column per target basis class; column j
    holds the coordinates of its pullback in the source basis.
    """
    src = cohomology_basis(m.source, f)
    tgt = cohomology_basis(m.target, f)
    out = {}
    for d in range(m.target.dim + 1):
        cols = []
        for row in tgt.reps[d]:
            if d > m.source.dim:
                cols.append(f.zeros(0))
                continue
            pulled = pullback_cochain(m, f, row, d)
            cols.append(src.coordinates(pulled, d))
        nrows = src.betti[d] if d <= m.source.dim else 0
        mat = (
            np.stack(cols, axis=1)
            if cols and nrows
            else np.zeros((nrows, tgt.betti[d]), np.int64)
        )
        out[d] = mat.astype(np.int64)
    return out


# ---------------------------------------------------------------------------
# relative length


def _s_iteration(c: Complex, f: Field, gens: dict, cap: int) -> int:
    """Longest nonzero product chain of the given cochain generators.

    ``gens`` maps positive degree -> dense matrix of cocycle vectors on
    ``c``.  Level spans are reduced modulo coboundaries of ``c``; the
    level count stops at ``cap``.
    """
    cap = min(cap, c.dim)

    def prune(rows_by_deg: dict) -> dict:
        out = {}
        for d, rows in sorted(rows_by_deg.items()):
            if d > c.dim or rows.shape[0] == 0:
                continue
            ech, piv = _im_echelon(c, f.p, d)
            red = _reduce_mod(f, rows, ech, piv, c.f_vector[d])
            red = red[red.any(axis=1)]
            if red.shape[0] == 0:
                continue
            basis, _ = _rref_dense(f, red, c.f_vector[d])
            if basis.shape[0]:
                out[d] = basis
        return out

    s1 = prune({d: rows for d, rows in gens.items() if 0 < d <= c.dim})
    if not s1:
        return 0
    level, k = s1, 1
    while k < cap:
        nxt: dict = {}
        for p, srows in sorted(level.items()):
            for q, grows in sorted(s1.items()):
                if p + q > c.dim:
                    continue
                prods = [
                    _cup_vec(c, f, s, p, g, q) for s in srows for g in grows
                ]
                prods = [v for v in prods if v is not None and v.any()]
                if prods:
                    stack = np.stack(prods)
                    nxt[p + q] = (
                        np.concatenate([nxt[p + q], stack])
                        if p + q in nxt
                        else stack
                    )
        nxt = prune(nxt)
        if not nxt:
            return k
        level = nxt
        k += 1
    return k


def _component_models(k: Complex, u: UpSet):
    """Order-complex model split into connected components.

    Yields (component_complex, map component -> k).  A single component
    avoids the subsetting pass.
    """
    delta, model = order_complex_model(k, u)
    labels = vertex_components(delta)
    ncomp = int(labels.max()) + 1
    if ncomp == 1:
        yield delta, model
        return
    for c in range(ncomp):
        sub, embed = induced_subcomplex(delta, labels == c)
        yield sub, model.compose(embed)


def hl_with_generators(k: Complex, u: UpSet, f: Field, gens: dict) -> int:
    """Relative length of ``u`` for a fixed family of ambient cocycles.

    ``gens`` maps positive degree -> dense matrix of cocycle vectors on
    ``k`` spanning the image subspaces to restrict.  This is the common
    engine behind ``hl`` (full ambient basis) and the index height used
    by the involution layer (single degree-1 class).
    """
    if u.owner != k:
        raise OwnerMismatch("up-set does not live on this complex")
    if u.is_empty:
        raise EmptyUpSet("hl of an empty up-set")
    gens = {d: rows for d, rows in gens.items() if d > 0 and rows.shape[0]}
    if not gens:
        return 0
    if u.is_full:
        return _s_iteration(k, f, gens, cap=k.dim)
    best = 0
    for comp, to_k in _component_models(k, u):
        pulled = {}
        for d, rows in gens.items():
            if d > comp.dim:
                continue
            mat = np.stack([pullback_cochain(to_k, f, row, d) for row in rows])
            mat = mat[mat.any(axis=1)]
            if mat.shape[0]:
                pulled[d] = mat
        if not pulled:
            continue
        best = max(best, _s_iteration(comp, f, pulled, cap=k.dim))
        if best >= k.dim:
            break
    return best


def _positive_generators(k: Complex, f: Field) -> dict:
    basis = cohomology_basis(k, f)
    return {d: basis.reps[d] for d in range(1, k.dim + 1) if basis.reps[d].shape[0]}


@lru_cache(maxsize=100_000)
def hl(k: Complex, u: UpSet, f: Field = GF2) -> int:
    """Relative cohomology length of the open piece ``u`` inside ``k``.

    Maximum number of positive-degree classes of H*(k) whose cup product
    restricts nontrivially to ``u``; 0 when every restriction vanishes.
    """
    return hl_with_generators(k, u, f, _positive_generators(k, f))


def cup_length(k: Complex, f: Field = GF2) -> int:
    """Length of the longest nonzero positive-degree product on k itself."""
    return _s_iteration(k, f, _positive_generators(k, f), cap=k.dim)


# ---------------------------------------------------------------------------
# independent oracle


def brute_force_hl_oracle(k: Complex, u: UpSet, f: Field = GF2) -> int:
    """Direct tuple enumeration of products of pulled-back basis classes.

    No span iteration and no component splitting: every product of basis
    classes up to length dim(k) is formed on the full order-complex model
    and tested against the coboundaries there.  Deliberately a different
    route from :func:`hl`, as a cross-check.
    """
    if u.is_empty:
        raise EmptyUpSet("oracle on an empty up-set")
    basis = cohomology_basis(k, f)
    classes = []
    for d in range(1, k.dim + 1):
        if basis.reps[d].shape[0] > 14:
            raise TractabilityLimit(
                f"{basis.reps[d].shape[0]} basis classes in degree {d}"
            )
        classes.extend((d, row) for row in basis.reps[d])
    if not classes:
        return 0
    delta, model = order_complex_model(k, u)

    def nonzero_class(vec, d):
        if not vec.any():
            return False
        ech, piv = _im_echelon(delta, f.p, d)
        return _reduce_mod(f, vec.reshape(1, -1), ech, piv, delta.f_vector[d]).any()

    pulled = [
        (d, pullback_cochain(model, f, row, d))
        for d, row in classes
        if d <= delta.dim
    ]
    best = 0
    stack = [(vec, d, 1) for d, vec in pulled if nonzero_class(vec, d)]
    best = 1 if stack else 0
    while stack:
        vec, d, ln = stack.pop()
        if ln >= min(k.dim, delta.dim):
            continue
        for q, gvec in pulled:
            if d + q > delta.dim:
                continue
            prod = _cup_vec(delta, f, vec, d, gvec, q)
            if prod is not None and nonzero_class(prod, d + q):
                best = max(best, ln + 1)
                stack.append((prod, d + q, ln + 1))
    return best


__all__.append("brute_force_hl_oracle")
