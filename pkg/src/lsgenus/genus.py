"""Free simplicial involutions, their quotients, and genus estimates.

A free involution on a complex has T(sigma) disjoint from sigma for
every simplex.  When the orbit map is strictly 2-to-1 on simplices the
quotient is again a complex; a spanning-forest choice of lifts produces
the degree-1 cocycle that classifies the double cover, and powers of
that class give computable lower bounds for the genus of the pieces of
the quotient.  Upper bounds come from dimension, or from an explicit
section when the restricted cover splits.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .category import CategoryFunction, _generators_kappa
from .cohomology import (
    GF2,
    CohomologyClass,
    hl_with_generators,
    is_coboundary,
    pullback_cochain,
)
from .complexes import (
    Complex,
    SimplicialMap,
    UpSet,
    full_upset,
    identity_map,
    preimage_upset,
    subdivide_map,
    subdivision,
    upset_union,
)
from .errors import (
    EmptyUpSet,
    HypothesisViolation,
    InputError,
    InvariantViolation,
    NonFreeAction,
    NonRegularAction,
    OwnerMismatch,
)
from .localize import LocalizationCertificate, localize

__all__ = [
    "Z2Complex",
    "QuotientData",
    "quotient",
    "reconstruct_double_cover",
    "equivariant_isomorphism",
    "genus_bounds",
    "genus_kappa",
    "IndexMonotonicityReport",
    "index_monotonicity_check",
    "CoveringSumReport",
    "covering_sum_check",
    "borsuk_ulam_demo",
]


def _label_lookup(k: Complex, images: dict) -> np.ndarray:
    lut = np.full(max(k.verts) + 1, -1, np.int64)
    for v in k.verts:
        lut[v] = images[v]
    return lut


@dataclass(frozen=True)
class Z2Complex:
    """A complex with a free simplicial involution."""

    complex: Complex
    involution: SimplicialMap

    def __post_init__(self):
        k, t = self.complex, self.involution
        if t.source != k or t.target != k:
            raise OwnerMismatch("involution must map the complex to itself")
        if t.compose(t) != identity_map(k):
            raise InputError("involution squared is not the identity")
        lut = _label_lookup(k, {v: t.apply_vertex(v) for v in k.verts})
        for d in range(k.dim + 1):
            rows = k.tables[d]
            mapped = lut[rows]
            meets = (rows[:, :, None] == mapped[:, None, :]).any(axis=(1, 2))
            if meets.any():
                r = int(np.argmax(meets))
                raise NonFreeAction(
                    f"simplex {tuple(map(int, rows[r]))} meets its image "
                    f"{tuple(sorted(map(int, mapped[r])))}: the action is not free"
                )

    def subdivided(self) -> "Z2Complex":
        """The induced involution on the barycentric subdivision."""
        sdk, _ = subdivision(self.complex)
        return Z2Complex(sdk, subdivide_map(self.involution))

    def orbit_of(self, v: int) -> tuple:
        return tuple(sorted((v, self.involution.apply_vertex(v))))


@dataclass(frozen=True)
class QuotientData:
    """Quotient complex of a free involution plus its classifying data."""

    z2: Z2Complex
    complex: Complex
    projection: SimplicialMap
    w: CohomologyClass


def quotient(z: Z2Complex) -> QuotientData:
    """Orbit complex and classifying cocycle of a free involution.

    Requires the orbit map to be strictly 2-to-1 simplex by simplex;
    otherwise the orbits do not form a complex and the fix is to
    subdivide once first.
    """
    k, t = z.complex, z.involution
    timg = {v: t.apply_vertex(v) for v in k.verts}
    rep = {v: min(v, timg[v]) for v in k.verts}
    replut = _label_lookup(k, rep)

    qtables = []
    for d in range(k.dim + 1):
        rows = k.tables[d]
        prows = np.sort(replut[rows], axis=1)
        if d > 0:
            collapsed = (np.diff(prows, axis=1) == 0).any(axis=1)
            if collapsed.any():
                r = int(np.argmax(collapsed))
                raise NonRegularAction(
                    f"simplex {tuple(map(int, rows[r]))} collapses under the orbit "
                    "map; subdivide before taking the quotient"
                )
        uniq, counts = np.unique(prows, axis=0, return_counts=True)
        if (counts != 2).any():
            r = int(np.argmax(counts != 2))
            raise NonRegularAction(
                f"{int(counts[r])} simplices project onto {tuple(map(int, uniq[r]))} "
                "instead of 2; subdivide before taking the quotient"
            )
        qtables.append(np.ascontiguousarray(uniq))
    q = Complex(tuple(qtables))
    projection = SimplicialMap(k, q, rep)

    lift: dict = {}
    if q.dim >= 1:
        nbrs: dict = {v: [] for v in q.verts}
        for a, b in q.tables[1].tolist():
            nbrs[a].append(b)
            nbrs[b].append(a)
    else:
        nbrs = {v: [] for v in q.verts}
    for root in q.verts:
        if root in lift:
            continue
        lift[root] = root
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for b in nbrs[a]:
                if b in lift:
                    continue
                la = lift[a]
                if k.has_simplex(tuple(sorted((la, b)))):
                    lift[b] = b
                elif k.has_simplex(tuple(sorted((la, timg[b])))):
                    lift[b] = timg[b]
                else:
                    raise InvariantViolation(
                        f"no lift of edge {(a, b)} exists in the double cover"
                    )
                queue.append(b)

    if q.dim >= 1:
        wv = np.zeros(q.f_vector[1], np.uint8)
        for r, (a, b) in enumerate(q.tables[1].tolist()):
            if not k.has_simplex(tuple(sorted((lift[a], lift[b])))):
                wv[r] = 1
    else:
        wv = np.zeros(0, np.uint8)
    w = CohomologyClass(q, GF2, 1, wv)
    return QuotientData(z2=z, complex=q, projection=projection, w=w)


def reconstruct_double_cover(q: QuotientData) -> Z2Complex:
    """Rebuild a double cover from the quotient and its cocycle alone.

    Vertex 2i of the result is sheet 0 over the i-th quotient vertex and
    2i+1 is sheet 1; the involution swaps sheets.  Which concrete sheet
    pattern a simplex gets is fixed by propagating the cocycle along
    consecutive vertices, which is consistent because w is a cocycle.
    """
    qc = q.complex
    wv = q.w.vector
    pos = {v: i for i, v in enumerate(qc.verts)}
    erow = qc.row_map(1) if qc.dim >= 1 else {}
    tables = []
    for d in range(qc.dim + 1):
        lifted = []
        for row in qc.tables[d].tolist():
            s = [0]
            for i in range(len(row) - 1):
                s.append(s[-1] ^ int(wv[erow[(row[i], row[i + 1])]]))
            for flip in (0, 1):
                lifted.append(
                    sorted(2 * pos[v] + (si ^ flip) for v, si in zip(row, s))
                )
        tables.append(np.array(sorted(lifted), np.int64))
    cover = Complex(tuple(tables))
    inv = SimplicialMap(cover, cover, {lb: lb ^ 1 for lb in cover.verts})
    return Z2Complex(cover, inv)


def equivariant_isomorphism(z1: Z2Complex, z2: Z2Complex):
    """A vertex bijection matching simplices and involutions, or None.

    Backtracking over vertices in breadth-first order; assigning v also
    forces T(v), and adjacency to already-placed vertices prunes the
    branching.  Meant for modest sizes (round-trip checks in tests).
    """
    k1, k2 = z1.complex, z2.complex
    if k1.f_vector != k2.f_vector:
        return None
    t1 = {v: z1.involution.apply_vertex(v) for v in k1.verts}
    t2 = {v: z2.involution.apply_vertex(v) for v in k2.verts}

    def neighbors(k):
        nb = {v: set() for v in k.verts}
        if k.dim >= 1:
            for a, b in k.tables[1].tolist():
                nb[a].add(b)
                nb[b].add(a)
        return nb

    nb1, nb2 = neighbors(k1), neighbors(k2)
    order = []
    seen = set()
    for start in k1.verts:
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            order.append(v)
            for u in sorted(nb1[v]):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)

    mapping: dict = {}
    used: set = set()

    def consistent(v, w):
        if len(nb1[v]) != len(nb2[w]):
            return False
        for u, mu in mapping.items():
            if (u in nb1[v]) != (mu in nb2[w]):
                return False
        return True

    def assign(v, w):
        pairs = [(v, w), (t1[v], t2[w])]
        added = []
        for a, b in pairs:
            if a in mapping:
                if mapping[a] != b:
                    for x in added:
                        used.discard(mapping.pop(x))
                    return None
                continue
            if b in used or not consistent(a, b):
                for x in added:
                    used.discard(mapping.pop(x))
                return None
            mapping[a] = b
            used.add(b)
            added.append(a)
        return added

    def solve(i):
        while i < len(order) and order[i] in mapping:
            i += 1
        if i == len(order):
            return all(
                k2.has_simplex(tuple(sorted(mapping[v] for v in row)))
                for d in range(2, k1.dim + 1)
                for row in k1.tables[d].tolist()
            )
        v = order[i]
        anchored = [u for u in nb1[v] if u in mapping]
        if anchored:
            candidates = sorted(
                set.intersection(*(nb2[mapping[u]] for u in anchored)) - used
            )
        else:
            candidates = [w for w in k2.verts if w not in used]
        for w in candidates:
            added = assign(v, w)
            if added is None:
                continue
            if solve(i + 1):
                return True
            for x in added:
                used.discard(mapping.pop(x))
        return False

    return dict(mapping) if solve(0) else None


# ---------------------------------------------------------------------------
# genus bounds


def _w_generators(q: QuotientData) -> dict:
    wv = q.w.vector
    if wv.size == 0 or not wv.any():
        return {}
    return {1: wv.reshape(1, -1)}


def _flat_involution(z: Z2Complex) -> np.ndarray:
    """Involution on flat simplex indices of the double cover."""
    k, t = z.complex, z.involution
    out = np.empty(k.nsimplices, np.int64)
    for d in range(k.dim + 1):
        tdim, trow = t.image_rows(d)
        if not (tdim == d).all():
            raise InvariantViolation("involution degenerates a simplex")
        first = k.flat_of(d, 0)
        out[first : first + k.f_vector[d]] = trow + first
    return out


def _cover_splits(q: QuotientData, pre: UpSet) -> bool:
    """True when the restricted double cover admits a section.

    The preimage up-set is T-invariant; the cover over the downstairs
    piece splits exactly when no connectivity component of the preimage
    meets its own image, and then picking one component per T-pair is a
    section.  Components are taken in the order-complex sense, which for
    an up-set is generated by the facet relations inside it.
    """
    k = q.z2.complex
    flat = np.concatenate([m for m in pre.masks])
    idx = np.nonzero(flat)[0]
    where = {int(fl): i for i, fl in enumerate(idx)}
    parent = list(range(idx.size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for d in range(1, k.dim + 1):
        mask = pre.masks[d]
        if not mask.any():
            continue
        first = k.flat_of(d, 0)
        below = k.flat_of(d - 1, 0)
        fr = k.facet_rows(d)
        for r in np.nonzero(mask)[0]:
            me = where[first + int(r)]
            for s in fr[r]:
                fl = below + int(s)
                if flat[fl]:
                    union(me, where[fl])

    tf = _flat_involution(q.z2)
    return all(find(where[int(fl)]) != find(where[int(tf[fl])]) for fl in idx)


def genus_bounds(q: QuotientData, u: UpSet) -> tuple:
    """(lower, upper) for the genus of an open piece of the quotient.

    Lower: one plus the height of the classifying class restricted to
    the piece.  Upper: one when the restricted double cover splits, else
    one plus the dimension of the preimage.
    """
    qc = q.complex
    if u.owner != qc:
        raise OwnerMismatch("up-set does not live on the quotient complex")
    if u.is_empty:
        raise EmptyUpSet("genus of an empty piece")
    lower = hl_with_generators(qc, u, GF2, _w_generators(q)) + 1
    pre = preimage_upset(q.projection, u)
    if _cover_splits(q, pre):
        upper = 1
    else:
        dim_pre = max(d for d in range(qc.dim + 1) if pre.masks[d].any())
        upper = dim_pre + 1
    if lower > upper:
        raise InvariantViolation(
            f"genus bounds crossed: lower {lower} > upper {upper}"
        )
    return lower, upper


def genus_kappa(q: QuotientData) -> CategoryFunction:
    """The genus lower bound as a category function on the quotient."""
    return _generators_kappa("genus_kappa", q.complex, GF2, _w_generators(q))


# ---------------------------------------------------------------------------
# comparison results


@dataclass(frozen=True)
class IndexMonotonicityReport:
    equivariant: bool
    quotient_map_ok: bool
    pullback_cohomologous: bool
    height_source: int
    height_target: int

    @property
    def monotone(self) -> bool:
        return self.height_source <= self.height_target

    @property
    def passed(self) -> bool:
        return (
            self.equivariant
            and self.quotient_map_ok
            and self.pullback_cohomologous
            and self.monotone
        )

    def to_text(self) -> str:
        return "\n".join(
            [
                f"equivariant: {self.equivariant}",
                f"quotient map simplicial: {self.quotient_map_ok}",
                f"pullback of classifying class matches: "
                f"{self.pullback_cohomologous}",
                f"height source={self.height_source} "
                f"target={self.height_target} "
                f"monotone={self.monotone}",
                "result: " + ("PASS" if self.passed else "FAIL"),
            ]
        )


def index_monotonicity_check(
    src: QuotientData, dst: QuotientData, phi: SimplicialMap
) -> IndexMonotonicityReport:
    """Check an equivariant map respects the classifying classes.

    ``phi`` maps the double cover of ``src`` to the double cover of
    ``dst``.  The induced quotient map must pull the target class back
    to the source class up to coboundary, and heights cannot drop.
    """
    if phi.source != src.z2.complex or phi.target != dst.z2.complex:
        raise OwnerMismatch("map does not connect the two double covers")
    equivariant = phi.compose(src.z2.involution) == dst.z2.involution.compose(
        phi
    )
    rep_dst = {
        v: min(v, dst.z2.involution.apply_vertex(v))
        for v in dst.z2.complex.verts
    }
    images = {
        v: rep_dst[phi.apply_vertex(v)] for v in src.complex.verts
    }
    try:
        phibar = SimplicialMap(src.complex, dst.complex, images)
        quotient_map_ok = True
    except InputError:
        phibar = None
        quotient_map_ok = False
    if phibar is not None:
        pulled = pullback_cochain(phibar, GF2, dst.w.vector, 1)
        diff = (pulled.astype(np.int64) + src.w.vector) % 2
        cohomologous = is_coboundary(src.complex, GF2, diff, 1)
    else:
        cohomologous = False
    h_src = hl_with_generators(
        src.complex, full_upset(src.complex), GF2, _w_generators(src)
    )
    h_dst = hl_with_generators(
        dst.complex, full_upset(dst.complex), GF2, _w_generators(dst)
    )
    return IndexMonotonicityReport(
        equivariant=equivariant,
        quotient_map_ok=quotient_map_ok,
        pullback_cohomologous=cohomologous,
        height_source=h_src,
        height_target=h_dst,
    )


@dataclass(frozen=True)
class CoveringSumReport:
    status: str  # "ok" or "inconclusive"
    reason: str
    genus_full: int
    piece_genus: tuple
    witnesses: tuple

    def to_text(self) -> str:
        lines = [f"status: {self.status}"]
        if self.reason:
            lines.append(f"reason: {self.reason}")
        if self.status == "ok":
            lines.append(f"genus of the whole quotient: {self.genus_full}")
            lines.append(
                "piece genus: "
                + " ".join(str(g) for g in self.piece_genus)
            )
            lines.append(f"witnesses: {len(self.witnesses)}")
            for s in self.witnesses:
                lines.append("  " + ".".join(str(v) for v in s))
        return "\n".join(lines)


def covering_sum_check(q: QuotientData, pieces) -> CoveringSumReport:
    """Search for points where the summed piece genus reaches the total.

    Only meaningful when every piece and the whole quotient have exact
    genus (matching bounds); anything less is reported inconclusive.
    """
    pieces = list(pieces)
    if not pieces:
        return CoveringSumReport("inconclusive", "no pieces given", 0, (), ())
    qc = q.complex
    for i, p in enumerate(pieces):
        if p.owner != qc:
            raise OwnerMismatch(f"piece {i} does not live on the quotient")
    if not upset_union(pieces).is_full:
        return CoveringSumReport(
            "inconclusive", "the pieces do not cover the quotient", 0,
            (), (),
        )
    bounds = [genus_bounds(q, p) for p in pieces]
    loose = [i for i, (lo, hi) in enumerate(bounds) if lo != hi]
    flo, fhi = genus_bounds(q, full_upset(qc))
    if loose or flo != fhi:
        what = [f"piece {i} in [{bounds[i][0]}, {bounds[i][1]}]" for i in loose]
        if flo != fhi:
            what.append(f"whole quotient in [{flo}, {fhi}]")
        return CoveringSumReport(
            "inconclusive",
            "genus not exactly determined: " + "; ".join(what),
            0,
            (),
            (),
        )
    piece_genus = tuple(lo for lo, _ in bounds)
    witnesses = []
    for s in qc.simplices():
        total = sum(g for g, p in zip(piece_genus, pieces) if s in p)
        if total >= flo:
            witnesses.append(s)
    return CoveringSumReport(
        "ok", "", flo, piece_genus, tuple(witnesses)
    )


def borsuk_ulam_demo(
    q: QuotientData, n: int, f: SimplicialMap, k: int, rounds: int
) -> LocalizationCertificate:
    """Localize a map on a genus-(n+1) quotient against its own kappa.

    For f defined on the quotient of a free sphere-like action of
    height n, any target of dimension l with k(l+1) <= n admits a
    localization certificate at threshold k.
    """
    if f.source != q.complex:
        raise OwnerMismatch("the map must start on the quotient complex")
    ell = f.target.dim
    if k * (ell + 1) > n:
        raise HypothesisViolation(
            f"requires k(l+1) <= n: {k}*({ell}+1) = {k * (ell + 1)} > {n}"
        )
    h = hl_with_generators(
        q.complex, full_upset(q.complex), GF2, _w_generators(q)
    )
    if h != n:
        raise InputError(
            f"classifying class has height {h}, not the claimed {n}"
        )
    return localize(f, genus_kappa(q), n=k, rounds=rounds)
