"""Command line interface.

Eight subcommands over the text formats of :mod:`lsgenus.io`.  Reports
are deterministic given the same inputs and flags, so two runs can be
compared byte for byte; ``--out`` writes atomically.

Exit codes: 0 on success, 1 when a hypothesis guard trips or a check
reports FAIL, 2 on unusable input (including argparse errors).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from . import __version__
from .category import CategoryFunction, check_axioms, kappa_hl
from .cohomology import (
    Field,
    brute_force_hl_oracle,
    cohomology_basis,
    cup_length,
    hl,
)
from .complexes import barycentric_subdivide, full_upset
from .cover import colored_star_cover, mesh
from .errors import (
    AxiomViolation,
    HypothesisViolation,
    InputError,
    LsgenusError,
    NonRegularAction,
)
from .genus import Z2Complex, borsuk_ulam_demo, genus_bounds, genus_kappa, quotient
from .io import (
    atomic_write_text,
    read_complex,
    read_involution,
    read_map,
    read_seed_upset,
)
from .localize import (
    certificate_from_text,
    certificate_to_text,
    localize,
    verify_certificate,
)
from .spaces import even_height_map, projective_plane, projective_space

__all__ = ["RunConfig", "parse_args", "main"]

COMMANDS = ("info", "hl", "axioms", "cover", "localize", "genus", "bu-demo", "verify")


@dataclass
class RunConfig:
    command: str
    complex_path: str | None = None
    source_path: str | None = None
    target_path: str | None = None
    map_path: str | None = None
    involution_path: str | None = None
    cert_path: str | None = None
    seeds_path: str | None = None
    kappa: str = "hl"
    field: int = 2
    n: int = 1
    k: int = 1
    rounds: int = 2
    seed: int = 0
    samples: int = 100
    levels: int = 2
    strict: bool = False
    cross_check: bool = False
    out: str | None = None


def parse_args(argv) -> RunConfig:
    import argparse

    top = argparse.ArgumentParser(prog="lsgenus")
    top.add_argument("--version", action="version", version=f"lsgenus {__version__}")
    sub = top.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_, *opts):
        p = sub.add_parser(name, help=help_)
        for args, kw in opts:
            p.add_argument(*args, **kw)
        return p

    c = (["--complex"], {"dest": "complex_path", "required": True})
    fld = (["--field"], {"type": int, "default": 2})
    out = (["--out"], {"default": None})
    add("info", "f-vector, betti numbers, cup length", c, fld, out)
    add(
        "hl",
        "restriction length of an up-set (default: the whole complex)",
        c,
        fld,
        out,
        (["--seeds"], {"dest": "seeds_path", "default": None}),
        (["--cross-check"], {"action": "store_true", "dest": "cross_check"}),
    )
    add(
        "axioms",
        "sample the category axioms for a kappa",
        c,
        fld,
        out,
        (["--kappa"], {"choices": ("hl", "genus", "count"), "default": "hl"}),
        (["--involution"], {"dest": "involution_path", "default": None}),
        (["--samples"], {"type": int, "default": 100}),
        (["--seed"], {"type": int, "default": 0}),
    )
    add(
        "cover",
        "colored star covers at successive subdivision levels",
        c,
        out,
        (["--levels"], {"type": int, "default": 2}),
    )
    add(
        "localize",
        "produce a localization certificate for a map",
        (["--source"], {"dest": "source_path", "required": True}),
        (["--target"], {"dest": "target_path", "required": True}),
        (["--map"], {"dest": "map_path", "required": True}),
        fld,
        out,
        (["--n"], {"type": int, "default": 1}),
        (["--rounds"], {"type": int, "default": 2}),
    )
    add(
        "genus",
        "quotient of a free involution and its genus bounds",
        c,
        out,
        (["--involution"], {"dest": "involution_path", "required": True}),
        (["--strict"], {"action": "store_true"}),
    )
    add(
        "bu-demo",
        "localization on a projective space against its own kappa",
        out,
        (["--n"], {"type": int, "default": 2}),
        (["--k"], {"type": int, "default": 1}),
        (["--rounds"], {"type": int, "default": 2}),
    )
    add(
        "verify",
        "recheck a localization certificate from scratch",
        (["--source"], {"dest": "source_path", "required": True}),
        (["--target"], {"dest": "target_path", "required": True}),
        (["--map"], {"dest": "map_path", "required": True}),
        (["--cert"], {"dest": "cert_path", "required": True}),
        fld,
    )

    ns = top.parse_args(argv)
    cfg = RunConfig(command=ns.command)
    for name in vars(cfg):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    return cfg


def _stamp() -> list:
    return [f"lsgenus {__version__}"]


def _fmt_f(k) -> str:
    return "(" + ", ".join(str(x) for x in k.f_vector) + ")"


def _run_info(cfg: RunConfig) -> tuple:
    k = read_complex(cfg.complex_path)
    f = Field(cfg.field)
    basis = cohomology_basis(k, f)
    lines = _stamp() + [
        f"complex: {cfg.complex_path}",
        f"dimension: {k.dim}",
        f"f-vector: {_fmt_f(k)}",
        f"euler characteristic: {k.euler}",
        f"betti over GF({f.p}): "
        + "(" + ", ".join(str(b) for b in basis.betti) + ")",
        f"cup length over GF({f.p}): {cup_length(k, f)}",
    ]
    return 0, lines


def _run_hl(cfg: RunConfig) -> tuple:
    k = read_complex(cfg.complex_path)
    f = Field(cfg.field)
    u = read_seed_upset(cfg.seeds_path, k) if cfg.seeds_path else full_upset(k)
    val = hl(k, u, f)
    lines = _stamp() + [
        f"complex: {cfg.complex_path}",
        f"up-set: {cfg.seeds_path or 'full complex'} "
        f"({u.nmembers} simplices)",
        f"hl over GF({f.p}): {val}",
    ]
    if cfg.cross_check:
        orc = brute_force_hl_oracle(k, u, f)
        lines.append(f"oracle: {orc} ({'match' if orc == val else 'MISMATCH'})")
        if orc != val:
            return 1, lines
    return 0, lines


def _axioms_kappa(cfg: RunConfig, k):
    if cfg.kappa == "hl":
        return kappa_hl(k, Field(cfg.field)), k, []
    if cfg.kappa == "count":
        return CategoryFunction("count", k, lambda u: u.nmembers), k, []
    if not cfg.involution_path:
        raise InputError("--kappa genus needs --involution")
    t = read_involution(cfg.involution_path, k)
    z = Z2Complex(k, t)
    notes = []
    try:
        q = quotient(z)
    except NonRegularAction:
        q = quotient(z.subdivided())
        notes.append("note: action not regular as given; subdivided once")
    notes.append(f"quotient f-vector: {_fmt_f(q.complex)}")
    return genus_kappa(q), q.complex, notes


def _run_axioms(cfg: RunConfig) -> tuple:
    k = read_complex(cfg.complex_path)
    kappa, owner, notes = _axioms_kappa(cfg, k)
    rep = check_axioms(kappa, owner, samples=cfg.samples, seed=cfg.seed)
    lines = _stamp() + [f"complex: {cfg.complex_path}"] + notes
    lines += rep.to_text().splitlines()
    return (0 if rep.passed else 1), lines


def _run_cover(cfg: RunConfig) -> tuple:
    k = read_complex(cfg.complex_path)
    lines = _stamp() + [f"complex: {cfg.complex_path}"]
    g = None
    prev = None
    for lvl in range(cfg.levels):
        c = colored_star_cover(k, g)
        m = mesh(c)
        sizes = ", ".join(str(len(fam)) for fam in c.families)
        line = f"level {lvl}: families ({sizes}) mesh {m!r}"
        if prev is not None:
            line += f" ratio {m / prev!r}"
        lines.append(line)
        prev = m
        k, g = c.owner, c.geometry
    return 0, lines


def _run_localize(cfg: RunConfig) -> tuple:
    src = read_complex(cfg.source_path)
    tgt = read_complex(cfg.target_path)
    f = read_map(cfg.map_path, src, tgt)
    kappa = kappa_hl(src, Field(cfg.field))
    cert = localize(f, kappa, n=cfg.n, rounds=cfg.rounds)
    lines = _stamp() + [
        f"map: {cfg.map_path} ({cfg.source_path} -> {cfg.target_path})",
        f"kappa total: {cert.kappa_total}  threshold n={cert.n}",
    ]
    for r in cert.rounds:
        lines.append(
            f"round {r.index}: color {r.color} center {r.center} "
            f"kappa {r.kappa} diameter {r.diameter!r}"
        )
    lines.append("c = " + ", ".join(repr(x) for x in cert.c))
    if cfg.out:
        atomic_write_text(cfg.out, certificate_to_text(cert))
        lines.append(f"certificate written to {cfg.out}")
    return 0, lines


def _run_genus(cfg: RunConfig) -> tuple:
    k = read_complex(cfg.complex_path)
    t = read_involution(cfg.involution_path, k)
    z = Z2Complex(k, t)
    lines = _stamp() + [f"double cover: {cfg.complex_path} {_fmt_f(k)}"]
    try:
        q = quotient(z)
    except NonRegularAction:
        if cfg.strict:
            raise
        z = z.subdivided()
        q = quotient(z)
        lines.append("note: action not regular as given; subdivided once")
    lines.append(f"quotient f-vector: {_fmt_f(q.complex)}")
    lines.append(
        "classifying class: "
        + ("nontrivial" if not q.w.is_zero_class() else "trivial")
    )
    lo, hi = genus_bounds(q, full_upset(q.complex))
    lines.append(f"genus bounds of the whole quotient: [{lo}, {hi}]")
    return 0, lines


def _run_bu_demo(cfg: RunConfig) -> tuple:
    q = projective_plane() if cfg.n == 2 else projective_space(cfg.n)
    f = even_height_map(q)
    cert = borsuk_ulam_demo(q, cfg.n, f, cfg.k, cfg.rounds)
    ok = verify_certificate(cert, f, genus_kappa(q))
    lines = _stamp() + [
        f"sphere dimension n={cfg.n}, threshold k={cfg.k}, "
        f"target dimension l={f.target.dim}",
        f"quotient f-vector: {_fmt_f(q.complex)}",
    ]
    for r in cert.rounds:
        lines.append(
            f"round {r.index}: color {r.color} center {r.center} "
            f"kappa {r.kappa} diameter {r.diameter!r}"
        )
    lines.append(f"certificate verifies: {ok}")
    if cfg.out:
        atomic_write_text(cfg.out, certificate_to_text(cert))
        lines.append(f"certificate written to {cfg.out}")
    return (0 if ok else 1), lines


def _run_verify(cfg: RunConfig) -> tuple:
    src = read_complex(cfg.source_path)
    tgt = read_complex(cfg.target_path)
    f = read_map(cfg.map_path, src, tgt)
    with open(cfg.cert_path, "r", encoding="utf-8") as fh:
        cert = certificate_from_text(fh.read(), f)
    kappa = kappa_hl(src, Field(cfg.field))
    ok = verify_certificate(cert, f, kappa)
    lines = _stamp() + [
        f"certificate: {cfg.cert_path}",
        f"rounds: {len(cert.rounds)}  n={cert.n}",
        f"certificate valid: {ok}",
    ]
    return (0 if ok else 1), lines


_RUNNERS = {
    "info": _run_info,
    "hl": _run_hl,
    "axioms": _run_axioms,
    "cover": _run_cover,
    "localize": _run_localize,
    "genus": _run_genus,
    "bu-demo": _run_bu_demo,
    "verify": _run_verify,
}


def main(argv=None) -> int:
    cfg = parse_args(sys.argv[1:] if argv is None else argv)
    try:
        code, lines = _RUNNERS[cfg.command](cfg)
    except (HypothesisViolation, AxiomViolation) as e:
        print("\n".join(_stamp() + [f"error: {e}"]))
        return 1
    except LsgenusError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if cfg.out and cfg.command not in ("localize", "bu-demo"):
        atomic_write_text(cfg.out, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
