"""Colored star covers of the barycentric subdivision.

Subdividing once and taking open stars of the new vertices gives a cover
of the subdivision indexed by the dimension of the original simplex each
vertex subdivides.  Sets of one color have pairwise disjoint closures,
which is the whole point: a category function can be summed color by
color.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import (
    Complex,
    Geometry,
    SimplicialMap,
    UpSet,
    _closure_masks,
    barycentric_subdivide,
    open_star,
)
from .errors import InvariantViolation

__all__ = ["ColoredCover", "colored_star_cover", "mesh"]


@dataclass(frozen=True)
class ColoredCover:
    """Open stars of barycenters, grouped by original dimension.

    ``families[i]`` lists one up-set on ``owner`` (the subdivision) per
    i-simplex of ``base``; ``centers[i]`` holds the matching owner vertex
    labels, which by construction are the flat indices of ``base``.
    ``star_diameters`` mirrors the family layout with the diameter of
    each closed star under ``geometry``.
    """

    base: Complex
    owner: Complex
    projection: SimplicialMap
    families: tuple
    centers: tuple
    star_diameters: tuple
    geometry: Geometry

    @property
    def ncolors(self) -> int:
        return len(self.families)

    def all_sets(self):
        for fam in self.families:
            yield from fam


def _flat_members(u: UpSet) -> np.ndarray:
    return np.concatenate([m for m in u.masks])


def _flat_closure(u: UpSet) -> np.ndarray:
    return np.concatenate([m for m in _closure_masks(u)])


def _check_family_disjoint(color: int, fam, centers) -> None:
    members = [_flat_members(u) for u in fam]
    closures = [_flat_closure(u) for u in fam]
    for a in range(len(fam)):
        for b in range(a + 1, len(fam)):
            if (closures[a] & members[b]).any() or (members[a] & closures[b]).any():
                raise InvariantViolation(
                    f"stars of color {color} at centers {centers[a]} and "
                    f"{centers[b]} have meeting closures"
                )


def _star_diameter(owner: Complex, u: UpSet, coords: np.ndarray) -> float:
    pts = coords[np.nonzero(_closure_masks(u)[0])[0]]
    if pts.shape[0] < 2:
        return 0.0
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diff * diff).sum(axis=2)).max())


def colored_star_cover(k: Complex, g: Geometry | None = None) -> ColoredCover:
    """Build the cover and verify its structure before returning it."""
    sdk, sd_geom, proj = barycentric_subdivide(k, g)
    coords = sd_geom.for_complex(sdk)
    families, centers, diams = [], [], []
    for d in range(k.dim + 1):
        first = k.flat_of(d, 0)
        labels = list(range(first, first + k.f_vector[d]))
        fam = tuple(open_star(sdk, lb) for lb in labels)
        families.append(fam)
        centers.append(tuple(labels))
        diams.append(tuple(_star_diameter(sdk, u, coords) for u in fam))

    covered = np.zeros(sdk.nsimplices, bool)
    for fam in families:
        for u in fam:
            covered |= _flat_members(u)
    if not covered.all():
        raise InvariantViolation("colored star cover misses part of the complex")
    if len(families) != k.dim + 1:
        raise InvariantViolation("colored star cover has a wrong number of colors")
    for d, fam in enumerate(families):
        _check_family_disjoint(d, fam, centers[d])

    return ColoredCover(
        base=k,
        owner=sdk,
        projection=proj,
        families=tuple(families),
        centers=tuple(centers),
        star_diameters=tuple(diams),
        geometry=sd_geom,
    )


def mesh(c: ColoredCover) -> float:
    """Largest closed-star diameter over every set of the cover."""
    return max(max(ds) if ds else 0.0 for ds in c.star_diameters)
