"""Ready-made complexes, involutions, and maps used by the CLI and tests.

Everything here is deterministic: fixed vertex labellings, fixed face
lists (the icosahedron is generated from coordinates, then canonically
relabelled so antipodal pairs are (2k, 2k+1)).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .complexes import Complex, SimplicialMap, build_complex, up_closure, upset_union
from .genus import QuotientData, Z2Complex, quotient

__all__ = [
    "triangle_circle",
    "path",
    "triangulated_square",
    "octahedron",
    "torus",
    "cross_polytope_sphere",
    "icosahedron",
    "circle_double_cover",
    "torus_double_cover",
    "octahedron_double_cover",
    "antipodal_sphere",
    "icosahedron_double_cover",
    "projective_plane",
    "projective_space",
    "torus_to_circle",
    "even_height_map",
    "constant_map",
    "three_piece_cover",
]


@lru_cache(maxsize=None)
def triangle_circle() -> Complex:
    """The circle as a hollow triangle."""
    return build_complex([(0, 1), (1, 2), (0, 2)])


@lru_cache(maxsize=None)
def path(m: int) -> Complex:
    """A path with m edges on vertices 0..m."""
    return build_complex([(i, i + 1) for i in range(m)])


@lru_cache(maxsize=None)
def triangulated_square() -> Complex:
    return build_complex([(0, 1, 2), (0, 2, 3)])


@lru_cache(maxsize=None)
def octahedron() -> Complex:
    """The 2-sphere as the boundary of the octahedron."""
    return cross_polytope_sphere(2)


@lru_cache(maxsize=None)
def torus(ni: int = 3, nj: int = 3) -> Complex:
    """Grid torus on ni*nj vertices, each square cut into two triangles."""
    tris = []
    for i in range(ni):
        for j in range(nj):
            a = nj * i + j
            b = nj * i + (j + 1) % nj
            c = nj * ((i + 1) % ni) + j
            d = nj * ((i + 1) % ni) + (j + 1) % nj
            tris += [(a, b, d), (a, c, d)]
    return build_complex(tris)


@lru_cache(maxsize=None)
def cross_polytope_sphere(d: int) -> Complex:
    """The d-sphere as a cross-polytope boundary; vertex 2i+1 = -(2i)."""
    if d < 1:
        raise ValueError("need d >= 1")
    tops = []
    for signs in range(1 << (d + 1)):
        tops.append(tuple(2 * i + ((signs >> i) & 1) for i in range(d + 1)))
    return build_complex(tops)


@lru_cache(maxsize=None)
def icosahedron() -> Complex:
    """The icosahedron, relabelled so vertex 2k+1 is the antipode of 2k."""
    phi = (1 + 5**0.5) / 2
    pts = []
    for s1 in (1.0, -1.0):
        for s2 in (phi, -phi):
            pts += [(0.0, s1, s2), (s1, s2, 0.0), (s2, 0.0, s1)]
    pts = sorted(pts)
    label = {}
    k = 0
    for p in pts:
        if p in label:
            continue
        label[p] = 2 * k
        label[tuple(-x for x in p)] = 2 * k + 1
        k += 1

    def d2(p, q):
        return sum((a - b) ** 2 for a, b in zip(p, q))

    faces = [
        tuple(sorted(label[p] for p in tri))
        for tri in combinations(pts, 3)
        if all(d2(a, b) < 5.0 for a, b in combinations(tri, 2))
    ]
    assert len(faces) == 20
    return build_complex(faces)


@lru_cache(maxsize=None)
def circle_double_cover() -> Z2Complex:
    """Hexagon with the half-turn, covering the triangle circle."""
    hexa = build_complex([(i, (i + 1) % 6) for i in range(6)])
    rot = SimplicialMap(hexa, hexa, {i: (i + 3) % 6 for i in range(6)})
    return Z2Complex(hexa, rot)


@lru_cache(maxsize=None)
def torus_double_cover() -> Z2Complex:
    """6x3 grid torus with the half shift in the long direction."""
    t = torus(6, 3)
    shift = SimplicialMap(
        t, t, {3 * i + j: 3 * ((i + 3) % 6) + j for i in range(6) for j in range(3)}
    )
    return Z2Complex(t, shift)


@lru_cache(maxsize=None)
def octahedron_double_cover() -> Z2Complex:
    """Two disjoint octahedra swapped wholesale: a split double cover."""
    tops = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    pair = build_complex(tops + [tuple(v + 6 for v in t) for t in tops])
    swap = SimplicialMap(pair, pair, {v: (v + 6) % 12 for v in range(12)})
    return Z2Complex(pair, swap)


@lru_cache(maxsize=None)
def antipodal_sphere(d: int) -> Z2Complex:
    """Cross-polytope d-sphere with the antipodal involution."""
    k = cross_polytope_sphere(d)
    return Z2Complex(k, SimplicialMap(k, k, {v: v ^ 1 for v in k.verts}))


@lru_cache(maxsize=None)
def icosahedron_double_cover() -> Z2Complex:
    k = icosahedron()
    return Z2Complex(k, SimplicialMap(k, k, {v: v ^ 1 for v in k.verts}))


@lru_cache(maxsize=None)
def projective_plane() -> QuotientData:
    """The 6-vertex projective plane as the icosahedron quotient."""
    return quotient(icosahedron_double_cover())


@lru_cache(maxsize=None)
def projective_space(d: int) -> QuotientData:
    """Real projective d-space from the subdivided cross-polytope sphere."""
    return quotient(antipodal_sphere(d).subdivided())


@lru_cache(maxsize=None)
def torus_to_circle() -> SimplicialMap:
    """Project the 3x3 torus onto the triangle circle along one direction."""
    return SimplicialMap(torus(3, 3), triangle_circle(), {v: v % 3 for v in range(9)})


def even_height_map(q: QuotientData) -> SimplicialMap:
    """Distance-from-a-vertex map, capped at 1, onto a single edge.

    On a quotient whose 1-skeleton is complete this is simplicial, and
    it factors through the orbit map by construction, so it serves as
    the even test map of the demo.
    """
    verts = q.complex.verts
    base = verts[0]
    return SimplicialMap(
        q.complex, path(1), {v: 0 if v == base else 1 for v in verts}
    )


def constant_map(k: Complex, target: Complex, at: int) -> SimplicialMap:
    return SimplicialMap(k, target, {v: at for v in k.verts})


def three_piece_cover(q: QuotientData) -> list:
    """Cover of a 6-vertex quotient by three pairs of vertex stars."""
    verts = q.complex.verts
    if len(verts) != 6:
        raise ValueError("expected a 6-vertex quotient")
    out = []
    for a, b in zip(verts[0::2], verts[1::2]):
        out.append(
            upset_union(
                [up_closure(q.complex, [(a,)]), up_closure(q.complex, [(b,)])]
            )
        )
    return out
