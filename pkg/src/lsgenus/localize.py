"""Iterated localization of a map against a category function.

Given f: X -> Y and a category function kappa on X with kappa(X) large
compared to dim Y, each round subdivides, covers the refined target by
colored stars, and picks a star whose preimage still carries kappa above
the threshold.  One color must work by subadditivity, one of its stars
by disjointness of closures; failures of either selection are axiom
failures upstream, not bad luck.

The certificate records the chosen stars round by round together with
their centers in barycentric coordinates; the star diameters shrink with
the mesh, so the record pins down a small region of Y whose preimage
stays kappa-large at every recorded scale.
"""

from __future__ import annotations

from dataclasses import dataclass

from .category import CategoryFunction
from .complexes import (
    SimplicialMap,
    full_upset,
    open_star,
    preimage_upset,
    standard_geometry,
    subdivide_map,
    subdivision,
    upset_union,
)
from .cover import colored_star_cover
from .errors import AxiomViolation, HypothesisViolation, InputError

__all__ = [
    "RoundRecord",
    "LocalizationCertificate",
    "localize",
    "verify_certificate",
    "certificate_to_text",
    "certificate_from_text",
]


@dataclass(frozen=True)
class RoundRecord:
    """One localization round: the star that kept kappa above n."""

    index: int
    color: int
    center: int
    star: object  # UpSet on the round's subdivided target
    kappa: int
    barycenter: tuple
    diameter: float


@dataclass(frozen=True)
class LocalizationCertificate:
    n: int
    kappa_total: int
    rounds: tuple
    c: tuple

    def diameters(self) -> tuple:
        return tuple(r.diameter for r in self.rounds)


def _center_coords(cover, center: int) -> tuple:
    pos = cover.owner.vertex_position(center)
    return tuple(float(x) for x in cover.geometry.coords[pos])


def localize(
    f: SimplicialMap, kappa: CategoryFunction, n: int, rounds: int
) -> LocalizationCertificate:
    if rounds < 1:
        raise InputError("localize needs at least one round")
    if kappa.owner != f.source:
        raise InputError("kappa is not defined on the source of the map")
    kt = kappa.evaluate(full_upset(f.source))
    bound = n * (f.target.dim + 1)
    if kt <= bound:
        raise HypothesisViolation(
            f"hypothesis kappa(X) > n(d+1) violated: {kt} <= {bound}"
        )

    cur_f, cur_kappa = f, kappa
    cur_g = standard_geometry(f.target)
    records = []
    for r in range(1, rounds + 1):
        cover = colored_star_cover(cur_f.target, cur_g)
        sd_f = subdivide_map(cur_f)
        _, proj_x = subdivision(cur_f.source)
        sd_kappa = cur_kappa.refine(proj_x)

        def kappa_of_preimage(v) -> int:
            pre = preimage_upset(sd_f, v)
            return 0 if pre.is_empty else sd_kappa.evaluate(pre)

        color = None
        for i in range(cover.ncolors):
            if kappa_of_preimage(upset_union(list(cover.families[i]))) > n:
                color = i
                break
        if color is None:
            raise AxiomViolation(
                f"round {r}: no color keeps the preimage above {n}; "
                "kappa is not subadditive over the colors"
            )

        pick = None
        for center, star, diam in zip(
            cover.centers[color],
            cover.families[color],
            cover.star_diameters[color],
        ):
            kv = kappa_of_preimage(star)
            if kv > n:
                pick = (center, star, diam, kv)
                break
        if pick is None:
            raise AxiomViolation(
                f"round {r}: color {color} exceeds {n} but no single star "
                "does; kappa ignores disjointness of closures"
            )
        center, star, diam, kv = pick
        records.append(
            RoundRecord(
                index=r,
                color=color,
                center=int(center),
                star=star,
                kappa=kv,
                barycenter=_center_coords(cover, int(center)),
                diameter=float(diam),
            )
        )
        cur_f, cur_kappa, cur_g = sd_f, sd_kappa, cover.geometry

    return LocalizationCertificate(
        n=n,
        kappa_total=kt,
        rounds=tuple(records),
        c=records[-1].barycenter,
    )


def verify_certificate(
    cert: LocalizationCertificate, f: SimplicialMap, kappa: CategoryFunction
) -> bool:
    """Recompute every recorded quantity and revalidate the invariants.

    Returns False on any value mismatch or invariant failure; raises
    InputError when the certificate does not even fit the map shape.
    """
    if not cert.rounds:
        raise InputError("certificate has no rounds")
    kt = kappa.evaluate(full_upset(f.source))
    if kt != cert.kappa_total:
        return False
    if kt <= cert.n * (f.target.dim + 1):
        return False

    cur_f, cur_kappa = f, kappa
    cur_g = standard_geometry(f.target)
    prev_diam = None
    for rec in cert.rounds:
        cover = colored_star_cover(cur_f.target, cur_g)
        sd_f = subdivide_map(cur_f)
        _, proj_x = subdivision(cur_f.source)
        sd_kappa = cur_kappa.refine(proj_x)

        if rec.star.owner != cover.owner:
            raise InputError(
                f"certificate shape mismatch at round {rec.index}: star "
                "does not live on the expected subdivision"
            )
        if not (0 <= rec.color < cover.ncolors) or rec.center not in cover.centers[rec.color]:
            raise InputError(
                f"certificate shape mismatch at round {rec.index}: center "
                f"{rec.center} is not a color-{rec.color} barycenter"
            )
        if rec.star != open_star(cover.owner, rec.center):
            raise InputError(
                f"certificate shape mismatch at round {rec.index}: star is "
                "not the open star of its center"
            )

        pre = preimage_upset(sd_f, rec.star)
        kv = 0 if pre.is_empty else sd_kappa.evaluate(pre)
        if kv != rec.kappa or kv <= cert.n:
            return False
        at = cover.centers[rec.color].index(rec.center)
        diam = cover.star_diameters[rec.color][at]
        if abs(diam - rec.diameter) > 1e-9:
            return False
        if _center_coords(cover, rec.center) != rec.barycenter:
            return False
        if prev_diam is not None and not rec.diameter < prev_diam:
            return False
        prev_diam = rec.diameter
        cur_f, cur_kappa, cur_g = sd_f, sd_kappa, cover.geometry

    return cert.c == cert.rounds[-1].barycenter


# ---------------------------------------------------------------------------
# plain-text serialization


def certificate_to_text(cert: LocalizationCertificate) -> str:
    lines = [
        "lsgenus localization certificate v1",
        f"n={cert.n}",
        f"kappa_total={cert.kappa_total}",
        f"rounds={len(cert.rounds)}",
    ]
    for rec in cert.rounds:
        lines.append(
            f"round index={rec.index} color={rec.color} center={rec.center} "
            f"kappa={rec.kappa} members={rec.star.nmembers} "
            f"diameter={rec.diameter!r}"
        )
        lines.append("barycenter=" + ",".join(repr(x) for x in rec.barycenter))
    lines.append("c=" + ",".join(repr(x) for x in cert.c))
    return "\n".join(lines) + "\n"


def _parse_kv(tok: str, key: str):
    if not tok.startswith(key + "="):
        raise InputError(f"certificate text: expected {key}=..., got {tok!r}")
    return tok[len(key) + 1 :]


def certificate_from_text(text: str, f: SimplicialMap) -> LocalizationCertificate:
    """Rebuild a certificate against the map it was produced from."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "lsgenus localization certificate v1":
        raise InputError("certificate text: unknown header")
    n = int(_parse_kv(lines[1], "n"))
    kappa_total = int(_parse_kv(lines[2], "kappa_total"))
    nrounds = int(_parse_kv(lines[3], "rounds"))
    if len(lines) != 4 + 2 * nrounds + 1:
        raise InputError("certificate text: wrong number of lines")

    target = f.target
    records = []
    for r in range(nrounds):
        head = lines[4 + 2 * r].split()
        if head[0] != "round":
            raise InputError("certificate text: expected a round line")
        idx = int(_parse_kv(head[1], "index"))
        color = int(_parse_kv(head[2], "color"))
        center = int(_parse_kv(head[3], "center"))
        kv = int(_parse_kv(head[4], "kappa"))
        members = int(_parse_kv(head[5], "members"))
        diam = float(_parse_kv(head[6], "diameter"))
        bary = tuple(
            float(x)
            for x in _parse_kv(lines[5 + 2 * r], "barycenter").split(",")
        )
        owner, _ = subdivision(target)
        star = open_star(owner, center)
        if star.nmembers != members:
            raise InputError(
                f"certificate text: round {idx} star has {star.nmembers} "
                f"members, text says {members}"
            )
        records.append(
            RoundRecord(
                index=idx,
                color=color,
                center=center,
                star=star,
                kappa=kv,
                barycenter=bary,
                diameter=diam,
            )
        )
        target = owner
    c = tuple(float(x) for x in _parse_kv(lines[-1], "c").split(","))
    return LocalizationCertificate(
        n=n, kappa_total=kappa_total, rounds=tuple(records), c=c
    )
