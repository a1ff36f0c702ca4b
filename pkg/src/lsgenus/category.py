"""Category-type set functions on open pieces and their axiom checks.

A :class:`CategoryFunction` assigns a positive integer to every nonempty
open piece (up-set) of a fixed complex.  The interesting ones here are
built from restriction lengths, but the axiom harness accepts anything
with the right signature, including deliberately broken examples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .complexes import (
    Complex,
    SimplicialMap,
    UpSet,
    closures_disjoint,
    full_upset,
    star_of_simplex,
    up_closure,
    upset_union,
)
from .cohomology import GF2, Field, hl_with_generators, pullback_cochain
from .cohomology import _positive_generators
from .errors import EmptyUpSet, InputError, OwnerMismatch

__all__ = [
    "CategoryFunction",
    "kappa_hl",
    "AxiomFailure",
    "AxiomReport",
    "check_axioms",
    "sample_upset",
    "sample_cover",
]


class CategoryFunction:
    """A named integer-valued function on nonempty up-sets of one complex.

    ``refine`` transports the function along a subdivision projection so
    that values on pieces of the subdivided complex are comparable with
    values upstairs; functions that cannot be transported leave it None.
    """

    __slots__ = ("label", "owner", "_eval", "_refiner", "_cache")

    def __init__(self, label: str, owner: Complex, evaluate, refiner=None):
        self.label = label
        self.owner = owner
        self._eval = evaluate
        self._refiner = refiner
        self._cache: dict = {}

    def evaluate(self, u: UpSet) -> int:
        if u.owner != self.owner:
            raise OwnerMismatch(f"{self.label}: up-set lives on a different complex")
        if u.is_empty:
            raise EmptyUpSet(f"{self.label} is undefined on the empty piece")
        got = self._cache.get(u)
        if got is None:
            got = int(self._eval(u))
            self._cache[u] = got
        return got

    __call__ = evaluate

    def refine(self, proj: SimplicialMap) -> "CategoryFunction":
        """The same function seen on the source of a subdivision projection."""
        if proj.target != self.owner:
            raise OwnerMismatch("projection does not land on this owner")
        if self._refiner is None:
            raise InputError(f"{self.label} does not support refinement")
        return self._refiner(proj)


def _generators_kappa(label: str, owner: Complex, f: Field, gens: dict):
    def ev(u: UpSet) -> int:
        return hl_with_generators(owner, u, f, gens) + 1

    def refine(proj: SimplicialMap):
        pulled = {
            d: _stack_nonzero(
                [pullback_cochain(proj, f, row, d) for row in rows]
            )
            for d, rows in gens.items()
        }
        pulled = {d: m for d, m in pulled.items() if m is not None}
        return _generators_kappa(label, proj.source, f, pulled)

    return CategoryFunction(label, owner, ev, refine)


def _stack_nonzero(rows):
    if not rows:
        return None
    m = np.stack(rows)
    m = m[m.any(axis=1)]
    return m if m.shape[0] else None


def kappa_hl(k: Complex, f: Field = GF2) -> CategoryFunction:
    """One plus the restriction length of the ambient cohomology ring."""
    return _generators_kappa(
        f"kappa_hl[GF({f.p})]", k, f, _positive_generators(k, f)
    )


# ---------------------------------------------------------------------------
# sampling


def sample_upset(k: Complex, rng: random.Random) -> UpSet:
    """A random nonempty up-set: mostly up-closures of a few simplices."""
    roll = rng.random()
    if roll < 0.60:
        m = rng.randint(1, 4)
        flats = [rng.randrange(k.nsimplices) for _ in range(m)]
        return up_closure(k, [k.simplex_of_flat(fl) for fl in flats])
    if roll < 0.85:
        v = k.verts[rng.randrange(len(k.verts))]
        return up_closure(k, [(v,)])
    if roll < 0.95:
        vs = [k.verts[rng.randrange(len(k.verts))] for _ in range(2)]
        return upset_union([up_closure(k, [(v,)]) for v in vs])
    return full_upset(k)


def sample_cover(k: Complex, rng: random.Random, npieces: int) -> list:
    """Random up-sets covering the complex: a partition of all simplices,
    each part up-closed.  Empty parts are resampled into singletons."""
    parts = [[] for _ in range(npieces)]
    for fl in range(k.nsimplices):
        parts[rng.randrange(npieces)].append(fl)
    for part in parts:
        if not part:
            part.append(rng.randrange(k.nsimplices))
    return [
        up_closure(k, [k.simplex_of_flat(fl) for fl in part]) for part in parts
    ]


# ---------------------------------------------------------------------------
# axiom harness


@dataclass(frozen=True)
class AxiomFailure:
    axiom: str
    detail: str


@dataclass(frozen=True)
class AxiomReport:
    label: str
    seed: int
    samples: int
    checks: tuple  # ((axiom, count), ...) in fixed order
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_text(self) -> str:
        lines = [
            f"axiom check: {self.label}",
            f"samples={self.samples} seed={self.seed}",
        ]
        for axiom, count in self.checks:
            bad = sum(1 for fl in self.failures if fl.axiom == axiom)
            lines.append(f"{axiom}: {count} comparisons, {bad} failures")
        for fl in self.failures:
            lines.append(f"  FAIL {fl.axiom}: {fl.detail}")
        lines.append("result: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def _describe(u: UpSet, limit: int = 6) -> str:
    names = []
    for s in u.members():
        names.append(".".join(str(v) for v in s))
        if len(names) > limit:
            names[-1] = "..."
            break
    return "{" + ",".join(names) + "}"


def check_axioms(
    kappa: CategoryFunction, k: Complex, samples: int = 100, seed: int = 0
) -> AxiomReport:
    """Probe the three category axioms on randomly drawn pieces.

    Violations end up in the report rather than raising: a failing
    function is a legitimate input, the report is the product.
    """
    if kappa.owner != k:
        raise OwnerMismatch("kappa is not defined on this complex")
    rng = random.Random(seed)
    counts = {"positivity": 0, "monotonicity": 0, "subadditivity": 0,
              "disjoint_max": 0}
    failures = []

    def fail(axiom, detail):
        failures.append(AxiomFailure(axiom, detail))

    for _ in range(samples):
        u = sample_upset(k, rng)
        v = sample_upset(k, rng)
        ku = kappa.evaluate(u)
        counts["positivity"] += 1
        if ku < 1:
            fail("positivity", f"kappa{_describe(u)}={ku} < 1")

        w = u | v
        kw = kappa.evaluate(w)
        counts["monotonicity"] += 2
        if ku > kw:
            fail(
                "monotonicity",
                f"kappa{_describe(u)}={ku} > kappa(union)={kw}",
            )
        kv = kappa.evaluate(v)
        if kv > kw:
            fail(
                "monotonicity",
                f"kappa{_describe(v)}={kv} > kappa(union)={kw}",
            )

        pieces = sample_cover(k, rng, rng.randint(2, 3))
        total = sum(kappa.evaluate(p) for p in pieces)
        kfull = kappa.evaluate(upset_union(pieces))
        counts["subadditivity"] += 1
        if kfull > total:
            fail(
                "subadditivity",
                f"kappa(union)={kfull} > sum of parts={total} "
                f"over {len(pieces)} pieces",
            )

        kept = []
        for _ in range(6):
            fl = rng.randrange(k.nsimplices)
            s = star_of_simplex(k, k.simplex_of_flat(fl))
            if all(closures_disjoint(s, t) for t in kept):
                kept.append(s)
            if len(kept) == 3:
                break
        if len(kept) >= 2:
            counts["disjoint_max"] += 1
            top = max(kappa.evaluate(s) for s in kept)
            ku2 = kappa.evaluate(upset_union(kept))
            if ku2 > top:
                fail(
                    "disjoint_max",
                    f"kappa(disjoint union)={ku2} > max of parts={top} "
                    f"over {len(kept)} stars",
                )

    order = ("positivity", "monotonicity", "subadditivity", "disjoint_max")
    return AxiomReport(
        label=kappa.label,
        seed=seed,
        samples=samples,
        checks=tuple((a, counts[a]) for a in order),
        failures=tuple(failures),
    )
