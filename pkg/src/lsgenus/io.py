"""Plain-text file formats for complexes, vertex maps, and involutions.

Complex files list one simplex per line as whitespace-separated integer
vertex labels; the closure is taken on read, so listing the maximal
simplices is enough.  Map and involution files list one ``source image``
pair per line.  ``#`` starts a comment anywhere, blank lines are
skipped.  Parsers are strict: anything else is an InputError naming the
line.
"""

from __future__ import annotations

import os
import tempfile

from .complexes import Complex, SimplicialMap, build_complex
from .errors import InputError

__all__ = [
    "read_complex",
    "write_complex",
    "read_pairs",
    "read_map",
    "read_involution",
    "read_seed_upset",
    "atomic_write_text",
]


def _data_lines(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    for no, line in enumerate(raw.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            yield no, body


def _ints(path: str, no: int, body: str) -> list:
    out = []
    for tok in body.split():
        try:
            out.append(int(tok))
        except ValueError:
            raise InputError(
                f"{path}:{no}: expected an integer vertex label, got {tok!r}"
            ) from None
    return out


def read_complex(path: str) -> Complex:
    simplices = []
    for no, body in _data_lines(path):
        vs = _ints(path, no, body)
        if len(set(vs)) != len(vs):
            raise InputError(f"{path}:{no}: repeated vertex in simplex")
        simplices.append(tuple(vs))
    if not simplices:
        raise InputError(f"{path}: no simplices")
    return build_complex(simplices)


def _maximal_simplices(k: Complex):
    for d in range(k.dim, -1, -1):
        covered = set()
        if d < k.dim:
            fr = k.facet_rows(d + 1)
            covered = set(int(x) for x in fr.ravel())
        for r in range(k.f_vector[d]):
            if r not in covered:
                yield tuple(int(v) for v in k.tables[d][r])


def write_complex(path: str, k: Complex) -> None:
    lines = sorted(_maximal_simplices(k), key=lambda s: (len(s), s))
    text = "".join(" ".join(str(v) for v in s) + "\n" for s in lines)
    atomic_write_text(path, text)


def read_pairs(path: str) -> dict:
    out = {}
    for no, body in _data_lines(path):
        vs = _ints(path, no, body)
        if len(vs) != 2:
            raise InputError(f"{path}:{no}: expected a 'vertex image' pair")
        if vs[0] in out and out[vs[0]] != vs[1]:
            raise InputError(f"{path}:{no}: vertex {vs[0]} mapped twice")
        out[vs[0]] = vs[1]
    if not out:
        raise InputError(f"{path}: no pairs")
    return out


def read_map(path: str, source: Complex, target: Complex) -> SimplicialMap:
    pairs = read_pairs(path)
    for v in source.verts:
        if v not in pairs:
            raise InputError(f"{path}: vertex {v} of the source is not mapped")
    return SimplicialMap(source, target, pairs)


def read_involution(path: str, k: Complex) -> SimplicialMap:
    """Vertex pairs of an involution; each orbit may be listed once."""
    pairs = read_pairs(path)
    full = dict(pairs)
    for v, w in pairs.items():
        if w in full and full[w] != v:
            raise InputError(f"{path}: {w} maps to {full[w]}, not back to {v}")
        full.setdefault(w, v)
    for v in k.verts:
        if v not in full:
            raise InputError(f"{path}: vertex {v} has no involution image")
    return SimplicialMap(k, k, full)


def read_seed_upset(path: str, k: Complex):
    """Up-closure of the simplices listed in a file."""
    from .complexes import up_closure

    seeds = []
    for no, body in _data_lines(path):
        seeds.append(tuple(_ints(path, no, body)))
    if not seeds:
        raise InputError(f"{path}: no simplices")
    for s in seeds:
        if not k.has_simplex(tuple(sorted(s))):
            raise InputError(f"{path}: {s} is not a simplex of the complex")
    return up_closure(k, seeds)


def atomic_write_text(path: str, text: str) -> None:
    """Write via a temp file and rename, so readers never see halves."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".lsgenus-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
