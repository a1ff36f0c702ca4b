"""Finite abstract simplicial complexes and their open pieces.

A complex stores one integer array per dimension, each row a sorted
vertex tuple, rows in lexicographic order.  That layout makes every
derived structure (facet rows, stars, subdivisions) a vectorised lookup
and gives a canonical iteration order everywhere, which the rest of the
package relies on for reproducibility.

Open subsets of the realization are modelled as up-sets: families of
simplices closed under passing to cofaces.  The order complex of an
up-set, together with the last-vertex projection, is the simplicial
model on which cohomology of the open piece is computed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import EmptyUpSet, InputError, InvariantViolation, OwnerMismatch

__all__ = [
    "Complex",
    "Geometry",
    "UpSet",
    "SimplicialMap",
    "build_complex",
    "standard_geometry",
    "mesh",
    "barycentric_subdivide",
    "subdivision",
    "open_star",
    "star_of_simplex",
    "full_upset",
    "up_closure",
    "upset_union",
    "closures_disjoint",
    "order_complex_model",
    "preimage_upset",
    "subdivide_map",
    "transport_upset",
    "identity_map",
    "vertex_components",
    "induced_subcomplex",
]


class Complex:
    """Immutable finite simplicial complex with integer vertex labels."""

    __slots__ = (
        "tables",
        "verts",
        "_vert_pos",
        "_row_maps",
        "_facet_rows",
        "_offsets",
        "_hash",
        "__weakref__",
    )

    def __init__(self, tables):
        if not tables or tables[0].shape[0] == 0:
            raise InputError("a complex needs at least one vertex")
        self.tables = tuple(np.ascontiguousarray(t, dtype=np.int64) for t in tables)
        for d, t in enumerate(self.tables):
            if t.ndim != 2 or t.shape[1] != d + 1:
                raise InputError(f"table for dimension {d} has wrong shape {t.shape}")
        self.verts = tuple(int(v) for v in self.tables[0][:, 0])
        self._vert_pos = {v: i for i, v in enumerate(self.verts)}
        self._row_maps = [None] * len(self.tables)
        self._facet_rows = [None] * len(self.tables)
        counts = [t.shape[0] for t in self.tables]
        self._offsets = tuple(np.concatenate([[0], np.cumsum(counts)]).tolist())
        self._hash = None

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Complex):
            return NotImplemented
        return len(self.tables) == len(other.tables) and all(
            np.array_equal(a, b) for a, b in zip(self.tables, other.tables)
        )

    def __hash__(self):
        if self._hash is None:
            h = hash(tuple(t.tobytes() for t in self.tables))
            self._hash = h
        return self._hash

    def __repr__(self):
        return f"Complex(dim={self.dim}, f={self.f_vector})"

    # -- basic queries ----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.tables) - 1

    @property
    def f_vector(self) -> tuple:
        return tuple(t.shape[0] for t in self.tables)

    @property
    def nsimplices(self) -> int:
        return self._offsets[-1]

    @property
    def euler(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector))

    def vertex_position(self, v) -> int:
        try:
            return self._vert_pos[v]
        except KeyError:
            raise InputError(f"unknown vertex {v!r}") from None

    def row_map(self, d: int) -> dict:
        """Mapping sorted-vertex-tuple -> row index in dimension ``d``."""
        if self._row_maps[d] is None:
            self._row_maps[d] = {
                tuple(row): i for i, row in enumerate(self.tables[d].tolist())
            }
        return self._row_maps[d]

    def simplex(self, d: int, row: int) -> tuple:
        return tuple(int(x) for x in self.tables[d][row])

    def has_simplex(self, simplex) -> bool:
        s = tuple(sorted(set(simplex)))
        d = len(s) - 1
        return 0 <= d <= self.dim and s in self.row_map(d)

    def row_of(self, simplex) -> tuple:
        """(dim, row) of a simplex given as an iterable of vertices."""
        s = tuple(sorted(set(simplex)))
        d = len(s) - 1
        if d < 0 or d > self.dim or s not in self.row_map(d):
            raise InputError(f"not a simplex of this complex: {simplex!r}")
        return d, self.row_map(d)[s]

    # -- flat indexing (dimension-major) ----------------------------------

    def flat_of(self, d: int, row: int) -> int:
        return self._offsets[d] + row

    def dim_row_of_flat(self, flat: int) -> tuple:
        for d in range(self.dim + 1):
            if flat < self._offsets[d + 1]:
                return d, flat - self._offsets[d]
        raise InputError(f"flat index {flat} out of range")

    def simplex_of_flat(self, flat: int) -> tuple:
        d, r = self.dim_row_of_flat(flat)
        return self.simplex(d, r)

    # -- derived structure -------------------------------------------------

    def facet_rows(self, d: int) -> np.ndarray:
        """(f_d, d+1) array: entry [r, i] is the row in dimension d-1 of the
        facet obtained by deleting vertex position i.  Requires d >= 1."""
        if self._facet_rows[d] is None:
            table = self.tables[d]
            rm = self.row_map(d - 1)
            out = np.empty((table.shape[0], d + 1), np.int64)
            for i in range(d + 1):
                sub = np.delete(table, i, axis=1)
                col = out[:, i]
                for r, row in enumerate(sub.tolist()):
                    col[r] = rm[tuple(row)]
            self._facet_rows[d] = out
        return self._facet_rows[d]

    def simplices(self):
        """All simplices as tuples, dimension-ascending then lexicographic."""
        for t in self.tables:
            for row in t.tolist():
                yield tuple(row)


def build_complex(maximal_simplices) -> Complex:
    """Face closure of the given simplices, vertices sorted by label."""
    maximal_simplices = list(maximal_simplices)
    if not maximal_simplices:
        raise InputError("empty input: no simplices given")
    by_dim: list[set] = []
    for s in maximal_simplices:
        s = tuple(sorted(set(int(v) for v in s)))
        if not s:
            raise InputError("empty simplex in input")
        d = len(s) - 1
        while len(by_dim) <= d:
            by_dim.append(set())
        for k in range(1, len(s) + 1):
            for face in itertools.combinations(s, k):
                by_dim[k - 1].add(face)
    tables = [
        np.array(sorted(faces), np.int64).reshape(len(faces), d + 1)
        for d, faces in enumerate(by_dim)
    ]
    return Complex(tables)


# ---------------------------------------------------------------------------
# geometry


@dataclass(frozen=True)
class Geometry:
    """Coordinates per vertex, row-aligned with the owning complex."""

    verts: tuple
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, np.float64)
        if c.ndim != 2 or c.shape[0] != len(self.verts):
            raise InputError("coordinate array does not match the vertex list")
        if not np.isfinite(c).all():
            raise InputError("non-finite coordinates")
        object.__setattr__(self, "coords", c)

    def for_complex(self, k: Complex) -> np.ndarray:
        if self.verts != k.verts:
            raise OwnerMismatch("geometry does not cover this complex's vertices")
        return self.coords


def standard_geometry(k: Complex) -> Geometry:
    """Default embedding: vertex i at the i-th standard basis vector."""
    return Geometry(k.verts, np.eye(len(k.verts)))


def _simplex_diameters(coords: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Per-row diameter: max pairwise vertex distance inside each simplex."""
    pts = coords[table]
    n = table.shape[1]
    best = np.zeros(table.shape[0])
    for i in range(n):
        for j in range(i + 1, n):
            d = np.linalg.norm(pts[:, i] - pts[:, j], axis=1)
            np.maximum(best, d, out=best)
    return best


def mesh(k: Complex, g: Geometry | None = None) -> float:
    """Max simplex diameter; contracts by dim/(dim+1) under subdivision."""
    if k.dim == 0:
        return 0.0
    g = g or standard_geometry(k)
    coords = g.for_complex(k)
    top = 0.0
    # vertex labels need not be 0..n-1; translate once
    lookup = np.full(max(k.verts) + 1, -1, np.int64)
    for i, v in enumerate(k.verts):
        lookup[v] = i
    for d in range(1, k.dim + 1):
        diam = _simplex_diameters(coords, lookup[k.tables[d]])
        top = max(top, float(diam.max()))
    return top


# ---------------------------------------------------------------------------
# up-sets


class UpSet:
    """A coface-closed family of simplices of a fixed complex."""

    __slots__ = ("owner", "masks", "_hash")

    def __init__(self, owner: Complex, masks, validate: bool = True):
        self.owner = owner
        ms = []
        for d in range(owner.dim + 1):
            m = np.asarray(masks[d], bool) if d < len(masks) else None
            if m is None or m.shape != (owner.f_vector[d],):
                raise InputError("mask shape does not match the complex")
            m = m.copy()
            m.setflags(write=False)
            ms.append(m)
        self.masks = tuple(ms)
        self._hash = None
        if validate:
            for d in range(owner.dim):
                below, above = self.masks[d], self.masks[d + 1]
                if not below.any():
                    continue
                f = owner.facet_rows(d + 1)
                needed = below[f].any(axis=1)
                bad = needed & ~above
                if bad.any():
                    r = int(np.nonzero(bad)[0][0])
                    raise InputError(
                        f"not up-closed: missing coface {owner.simplex(d + 1, r)}"
                    )

    def __eq__(self, other):
        if not isinstance(other, UpSet):
            return NotImplemented
        return self.owner == other.owner and all(
            np.array_equal(a, b) for a, b in zip(self.masks, other.masks)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.owner, tuple(np.packbits(m).tobytes() for m in self.masks))
            )
        return self._hash

    def __repr__(self):
        return f"UpSet({self.nmembers} of {self.owner.nsimplices} simplices)"

    @property
    def nmembers(self) -> int:
        return sum(int(m.sum()) for m in self.masks)

    @property
    def is_empty(self) -> bool:
        return all(not m.any() for m in self.masks)

    @property
    def is_full(self) -> bool:
        return all(m.all() for m in self.masks)

    def __contains__(self, simplex) -> bool:
        try:
            d, r = self.owner.row_of(simplex)
        except InputError:
            return False
        return bool(self.masks[d][r])

    def members(self):
        """Member simplices as tuples, dimension-ascending, lex within."""
        for d, m in enumerate(self.masks):
            t = self.owner.tables[d]
            for r in np.nonzero(m)[0]:
                yield tuple(int(x) for x in t[r])

    def issubset(self, other: "UpSet") -> bool:
        _same_owner(self, other)
        return not any((a & ~b).any() for a, b in zip(self.masks, other.masks))

    def union(self, other: "UpSet") -> "UpSet":
        _same_owner(self, other)
        return UpSet(
            self.owner,
            [a | b for a, b in zip(self.masks, other.masks)],
            validate=False,
        )

    def intersection(self, other: "UpSet") -> "UpSet":
        _same_owner(self, other)
        return UpSet(
            self.owner,
            [a & b for a, b in zip(self.masks, other.masks)],
            validate=False,
        )

    __or__ = union
    __and__ = intersection


def _same_owner(u: UpSet, v: UpSet):
    if u.owner != v.owner:
        raise OwnerMismatch("up-sets live on different complexes")


def full_upset(k: Complex) -> UpSet:
    return UpSet(k, [np.ones(n, bool) for n in k.f_vector], validate=False)


def _close_up(k: Complex, masks) -> list:
    masks = [np.asarray(m, bool).copy() for m in masks]
    for d in range(k.dim):
        if masks[d].any():
            f = k.facet_rows(d + 1)
            masks[d + 1] |= masks[d][f].any(axis=1)
    return masks


def up_closure(k: Complex, simplices) -> UpSet:
    """Smallest up-set containing the given simplices."""
    masks = [np.zeros(n, bool) for n in k.f_vector]
    for s in simplices:
        d, r = k.row_of(s)
        masks[d][r] = True
    return UpSet(k, _close_up(k, masks), validate=False)


def open_star(k: Complex, v) -> UpSet:
    """All simplices containing the vertex ``v``."""
    k.vertex_position(v)
    masks = [(t == v).any(axis=1) for t in k.tables]
    return UpSet(k, masks, validate=False)


def star_of_simplex(k: Complex, simplex) -> UpSet:
    """All simplices containing the given simplex (its open star)."""
    d0, r0 = k.row_of(simplex)
    s = np.asarray(k.simplex(d0, r0), np.int64)
    masks = []
    for d, t in enumerate(k.tables):
        if d < d0:
            masks.append(np.zeros(t.shape[0], bool))
        else:
            masks.append(np.isin(t, s).sum(axis=1) == len(s))
    return UpSet(k, masks, validate=False)


def upset_union(us) -> UpSet:
    us = list(us)
    if not us:
        raise InputError("union of no up-sets")
    out = us[0]
    for u in us[1:]:
        out = out.union(u)
    return out


def _closure_masks(u: UpSet) -> list:
    """Masks of the face closure of an up-set's members (down-closed)."""
    k = u.owner
    masks = [m.copy() for m in u.masks]
    for d in range(k.dim, 0, -1):
        if masks[d].any():
            f = k.facet_rows(d)
            hit = np.unique(f[masks[d]].ravel())
            masks[d - 1][hit] = True
    return masks


def closures_disjoint(u: UpSet, v: UpSet) -> bool:
    """True when the two open pieces are separated: no member of one is a
    face of a member of the other.  For valid up-sets this coincides with
    plain member disjointness, and it is preserved by preimages."""
    _same_owner(u, v)
    cu, cv = _closure_masks(u), _closure_masks(v)
    for d in range(u.owner.dim + 1):
        if (cu[d] & v.masks[d]).any() or (u.masks[d] & cv[d]).any():
            return False
    return True


# ---------------------------------------------------------------------------
# simplicial maps


class SimplicialMap:
    """Vertex map between complexes whose induced simplex map is total."""

    __slots__ = ("source", "target", "vmap", "_images", "_hash")

    def __init__(self, source: Complex, target: Complex, vertex_map):
        self.source = source
        self.target = target
        if isinstance(vertex_map, dict):
            try:
                vm = np.array([int(vertex_map[v]) for v in source.verts], np.int64)
            except KeyError as e:
                raise InputError(f"vertex {e.args[0]!r} has no image") from None
        else:
            vm = np.asarray(vertex_map, np.int64)
            if vm.shape != (len(source.verts),):
                raise InputError("vertex map length does not match source")
        for w in np.unique(vm):
            if int(w) not in target._vert_pos:
                raise InputError(f"image vertex {int(w)} is not in the target")
        self.vmap = vm
        self.vmap.setflags(write=False)
        self._images = [None] * (source.dim + 1)
        self._hash = None
        for d in range(source.dim + 1):
            self._image_data(d)  # validates every simplex image

    def __eq__(self, other):
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and np.array_equal(self.vmap, other.vmap)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, self.vmap.tobytes()))
        return self._hash

    def __repr__(self):
        return f"SimplicialMap({self.source!r} -> {self.target!r})"

    def apply_vertex(self, v):
        return int(self.vmap[self.source.vertex_position(v)])

    def _image_data(self, d: int):
        """Per d-row image data: (tdim, trow, sign).

        ``tdim[r]``/``trow[r]`` locate the image simplex in the target;
        ``sign[r]`` is the parity of the vertex-sorting permutation, 0 when
        the image is degenerate (repeated vertices, image of lower dim)."""
        if self._images[d] is None:
            src = self.source
            lookup = np.full(max(src.verts) + 1, -1, np.int64)
            for i, v in enumerate(src.verts):
                lookup[v] = i
            mapped = self.vmap[lookup[src.tables[d]]]
            n = d + 1
            inv = np.zeros(mapped.shape[0], np.int64)
            for i in range(n):
                for j in range(i + 1, n):
                    inv += mapped[:, i] > mapped[:, j]
            srt = np.sort(mapped, axis=1)
            if n > 1:
                degen = (srt[:, 1:] == srt[:, :-1]).any(axis=1)
            else:
                degen = np.zeros(mapped.shape[0], bool)
            sign = np.where(degen, 0, np.where(inv % 2 == 0, 1, -1)).astype(np.int8)
            tdim = np.empty(mapped.shape[0], np.int64)
            trow = np.empty(mapped.shape[0], np.int64)
            for r, row in enumerate(srt.tolist()):
                key = tuple(dict.fromkeys(row))
                td = len(key) - 1
                rm = self.target.row_map(td) if td <= self.target.dim else {}
                if key not in rm:
                    raise InputError(
                        f"image {key} of simplex {self.source.simplex(d, r)}"
                        " is not a simplex of the target"
                    )
                tdim[r] = td
                trow[r] = rm[key]
            self._images[d] = (tdim, trow, sign)
        return self._images[d]

    def image_rows(self, d: int):
        tdim, trow, _ = self._image_data(d)
        return tdim, trow

    def image_signs(self, d: int):
        return self._image_data(d)[2]

    def apply_simplex(self, simplex) -> tuple:
        d, r = self.source.row_of(simplex)
        tdim, trow, _ = self._image_data(d)
        return self.target.simplex(int(tdim[r]), int(trow[r]))

    def compose(self, inner: "SimplicialMap") -> "SimplicialMap":
        """self ∘ inner, requiring inner.target == self.source."""
        if inner.target != self.source:
            raise OwnerMismatch("maps do not compose")
        lookup = np.full(max(self.source.verts) + 1, -1, np.int64)
        for i, v in enumerate(self.source.verts):
            lookup[v] = i
        return SimplicialMap(inner.source, self.target, self.vmap[lookup[inner.vmap]])


def identity_map(k: Complex) -> SimplicialMap:
    return SimplicialMap(k, k, np.array(k.verts, np.int64))


def preimage_upset(f: SimplicialMap, v: UpSet) -> UpSet:
    """{σ in the source : f(σ) ∈ v}; up-closed because v is."""
    if v.owner != f.target:
        raise OwnerMismatch("up-set does not live on the map's target")
    masks = []
    for d in range(f.source.dim + 1):
        tdim, trow = f.image_rows(d)
        m = np.zeros(tdim.shape[0], bool)
        for e in range(f.target.dim + 1):
            sel = tdim == e
            if sel.any():
                m[sel] = v.masks[e][trow[sel]]
        masks.append(m)
    return UpSet(f.source, masks, validate=False)


# ---------------------------------------------------------------------------
# barycentric subdivision

# Chains are encoded by flat simplex indices of the base complex; a chain
# sorted ascending is automatically sorted by inclusion, so the flat
# labels double as subdivision vertex labels with the right order.


@lru_cache(maxsize=24)
def _sd_structure(k: Complex):
    chains_at: list[list[tuple]] = [None] * k.nsimplices
    by_len: list[list[tuple]] = [[] for _ in range(k.dim + 1)]
    for d in range(k.dim + 1):
        table = k.tables[d]
        for r, row in enumerate(table.tolist()):
            flat = k.flat_of(d, r)
            mine = [(flat,)]
            if d:
                seen = set()
                for size in range(1, d + 1):
                    rm = k.row_map(size - 1)
                    for face in itertools.combinations(row, size):
                        ff = k.flat_of(size - 1, rm[face])
                        for ch in chains_at[ff]:
                            if ch not in seen:
                                seen.add(ch)
                                mine.append(ch + (flat,))
            chains_at[flat] = mine
            for ch in mine:
                by_len[len(ch) - 1].append(ch)
    tables = []
    for ln, chains in enumerate(by_len):
        arr = np.array(sorted(chains), np.int64).reshape(len(chains), ln + 1)
        tables.append(arr)
    sdk = Complex(tables)
    last_vertex = np.empty(k.nsimplices, np.int64)
    for d in range(k.dim + 1):
        o = k._offsets[d]
        last_vertex[o : o + k.f_vector[d]] = k.tables[d][:, -1]
    proj = SimplicialMap(sdk, k, last_vertex)
    return sdk, proj


def subdivision(k: Complex):
    """(sd K, last-vertex projection sd K → K); cached, deterministic."""
    return _sd_structure(k)


def _sd_geometry(k: Complex, g: Geometry) -> Geometry:
    coords = g.for_complex(k)
    lookup = np.full(max(k.verts) + 1, -1, np.int64)
    for i, v in enumerate(k.verts):
        lookup[v] = i
    rows = []
    for d in range(k.dim + 1):
        rows.append(coords[lookup[k.tables[d]]].mean(axis=1))
    sdk, _ = subdivision(k)
    return Geometry(sdk.verts, np.concatenate(rows, axis=0))


def barycentric_subdivide(k: Complex, g: Geometry | None = None):
    """Returns (sd K, barycentric geometry, last-vertex projection)."""
    g = g or standard_geometry(k)
    sdk, proj = subdivision(k)
    return sdk, _sd_geometry(k, g), proj


def subdivide_map(f: SimplicialMap) -> SimplicialMap:
    """sd f : sd(source) → sd(target), barycenter of σ ↦ barycenter of f(σ)."""
    src, _ = subdivision(f.source)
    tgt, _ = subdivision(f.target)
    vm = np.empty(f.source.nsimplices, np.int64)
    for d in range(f.source.dim + 1):
        tdim, trow = f.image_rows(d)
        o = f.source._offsets[d]
        for e in range(f.target.dim + 1):
            sel = tdim == e
            if sel.any():
                vm[o + np.nonzero(sel)[0]] = f.target._offsets[e] + trow[sel]
    return SimplicialMap(src, tgt, vm)


def transport_upset(u: UpSet) -> UpSet:
    """The same open piece seen on sd(owner): chains whose top lies in u."""
    k = u.owner
    sdk, _ = subdivision(k)
    flat = np.concatenate(u.masks)
    masks = [flat[t[:, -1]] for t in sdk.tables]
    return UpSet(sdk, masks, validate=False)


# ---------------------------------------------------------------------------
# order complex models


def order_complex_model(k: Complex, u: UpSet):
    """Order complex Δ(u) plus the composite last-vertex map Δ(u) → k.

    Δ(u) has one vertex per member (labelled by member position in flat
    order) and a simplex per chain of members under the face relation.
    The map sends a member to the last vertex of that simplex of ``k``;
    along a chain these labels are non-decreasing, so the map is
    simplicial and order-compatible with cup products.
    """
    if u.owner != k:
        raise OwnerMismatch("up-set does not live on this complex")
    if u.is_empty:
        raise EmptyUpSet("order complex of an empty up-set")
    flats = []
    for d in range(k.dim + 1):
        o = k._offsets[d]
        flats.extend((o + r) for r in np.nonzero(u.masks[d])[0])
    pos_of = {f: i for i, f in enumerate(flats)}
    by_len: list[list[tuple]] = [[]]
    chains_at: dict[int, list[tuple]] = {}
    for f in flats:
        d, r = k.dim_row_of_flat(f)
        row = k.simplex(d, r)
        mine = [(pos_of[f],)]
        seen = set()
        for size in range(1, d + 1):
            rm = k.row_map(size - 1)
            for face in itertools.combinations(row, size):
                ff = k.flat_of(size - 1, rm[face])
                if ff in chains_at:
                    for ch in chains_at[ff]:
                        if ch not in seen:
                            seen.add(ch)
                            mine.append(ch + (pos_of[f],))
        chains_at[f] = mine
        for ch in mine:
            while len(by_len) < len(ch):
                by_len.append([])
            by_len[len(ch) - 1].append(ch)
    tables = [
        np.array(sorted(chains), np.int64).reshape(len(chains), ln + 1)
        for ln, chains in enumerate(by_len)
    ]
    delta = Complex(tables)
    vm = np.empty(len(flats), np.int64)
    for i, f in enumerate(flats):
        d, r = k.dim_row_of_flat(f)
        vm[i] = k.tables[d][r, -1]
    return delta, SimplicialMap(delta, k, vm)


# ---------------------------------------------------------------------------
# components and induced subcomplexes


def vertex_components(k: Complex) -> np.ndarray:
    """Component label per vertex position (labels are 0..c-1, by first
    occurrence in vertex order)."""
    n = len(k.verts)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if k.dim >= 1:
        lookup = np.full(max(k.verts) + 1, -1, np.int64)
        for i, v in enumerate(k.verts):
            lookup[v] = i
        for a, b in lookup[k.tables[1]].tolist():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    labels = np.empty(n, np.int64)
    remap = {}
    for i in range(n):
        r = find(i)
        if r not in remap:
            remap[r] = len(remap)
        labels[i] = remap[r]
    return labels


def induced_subcomplex(k: Complex, vert_mask: np.ndarray):
    """Full subcomplex on the masked vertex positions.

    Returns (sub, embed) where embed maps sub's vertices (relabelled to
    0..m-1 in the original order) back into ``k``.
    """
    keep = np.asarray(vert_mask, bool)
    if not keep.any():
        raise InputError("empty vertex selection")
    kept = [v for v, flag in zip(k.verts, keep) if flag]
    new_label = {v: i for i, v in enumerate(kept)}
    lookup = np.full(max(k.verts) + 1, -1, np.int64)
    for i, v in enumerate(k.verts):
        lookup[v] = i
    tables = []
    for d, t in enumerate(k.tables):
        sel = keep[lookup[t]].all(axis=1)
        if not sel.any():
            break
        rows = t[sel]
        relab = np.vectorize(new_label.__getitem__, otypes=[np.int64])(rows)
        order = np.lexsort(relab.T[::-1])
        tables.append(relab[order])
    sub = Complex(tables)
    embed = SimplicialMap(sub, k, np.array(kept, np.int64))
    return sub, embed
