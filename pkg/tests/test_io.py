"""File formats: complexes, vertex maps, involutions, seeds, atomic writes."""

import os
from importlib import resources

import pytest

from lsgenus.complexes import up_closure
from lsgenus.errors import InputError
from lsgenus.io import (
    atomic_write_text,
    read_complex,
    read_involution,
    read_map,
    read_pairs,
    read_seed_upset,
    write_complex,
)
from lsgenus.spaces import octahedron, torus, torus_to_circle, triangle_circle


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


@pytest.mark.parametrize("k", [torus(3, 3), octahedron(), triangle_circle()])
def test_complex_round_trip(tmp_path, k):
    p = str(tmp_path / "k.cplx")
    write_complex(p, k)
    assert read_complex(p) == k


def test_written_files_list_maximal_simplices_only(tmp_path):
    p = str(tmp_path / "o.cplx")
    write_complex(p, octahedron())
    lines = [ln for ln in open(p).read().splitlines() if ln.strip()]
    assert len(lines) == 8
    assert all(len(ln.split()) == 3 for ln in lines)


def test_comments_and_blanks_are_skipped(tmp_path):
    p = _write(
        tmp_path,
        "c.cplx",
        "# a hollow triangle\n\n0 1  # first edge\n1 2\n0 2\n",
    )
    assert read_complex(p) == triangle_circle()


def test_read_complex_errors_name_the_line(tmp_path):
    p = _write(tmp_path, "bad.cplx", "0 1\n1 x\n")
    with pytest.raises(InputError, match=r"bad\.cplx:2: expected an integer"):
        read_complex(p)
    p = _write(tmp_path, "rep.cplx", "0 1\n2 2\n")
    with pytest.raises(InputError, match=r"rep\.cplx:2: repeated vertex"):
        read_complex(p)
    p = _write(tmp_path, "empty.cplx", "# nothing\n")
    with pytest.raises(InputError, match="no simplices"):
        read_complex(p)
    with pytest.raises(InputError, match="cannot read"):
        read_complex(str(tmp_path / "missing.cplx"))


def test_read_pairs(tmp_path):
    p = _write(tmp_path, "m.map", "0 1\n1 0\n0 1\n")
    assert read_pairs(p) == {0: 1, 1: 0}
    p = _write(tmp_path, "tri.map", "0 1 2\n")
    with pytest.raises(InputError, match="expected a 'vertex image' pair"):
        read_pairs(p)
    p = _write(tmp_path, "dup.map", "0 1\n0 2\n")
    with pytest.raises(InputError, match="vertex 0 mapped twice"):
        read_pairs(p)


def test_read_map_requires_every_source_vertex(tmp_path):
    p = _write(tmp_path, "part.map", "0 0\n1 1\n")
    with pytest.raises(InputError, match="vertex 2 of the source is not mapped"):
        read_map(p, triangle_circle(), triangle_circle())


def test_read_involution_completes_half_orbits(tmp_path):
    k = octahedron()
    p = _write(tmp_path, "a.inv", "0 1\n2 3\n4 5\n")
    t = read_involution(p, k)
    assert all(t.apply_vertex(t.apply_vertex(v)) == v for v in k.verts)
    assert t.apply_vertex(1) == 0
    p = _write(tmp_path, "asym.inv", "0 1\n1 2\n2 0\n4 5\n")
    with pytest.raises(InputError, match="1 maps to 2, not back to 0"):
        read_involution(p, k)
    p = _write(tmp_path, "short.inv", "0 1\n2 3\n")
    with pytest.raises(InputError, match="vertex 4 has no involution image"):
        read_involution(p, k)


def test_read_seed_upset(tmp_path):
    k = torus(3, 3)
    p = _write(tmp_path, "s.seed", "0 1\n4\n")
    assert read_seed_upset(p, k) == up_closure(k, [(0, 1), (4,)])
    p = _write(tmp_path, "bad.seed", "0 5\n")
    with pytest.raises(InputError, match="is not a simplex of the complex"):
        read_seed_upset(p, k)


def test_atomic_write(tmp_path):
    p = str(tmp_path / "out.txt")
    atomic_write_text(p, "one\n")
    atomic_write_text(p, "two\n")
    assert open(p).read() == "two\n"
    leftovers = [n for n in os.listdir(tmp_path) if n.startswith(".lsgenus-")]
    assert leftovers == []


def test_shipped_data_files_match_the_constructors(tmp_path):
    base = resources.files("lsgenus") / "data"
    with resources.as_file(base) as d:
        assert read_complex(str(d / "circle.cplx")) == triangle_circle()
        assert read_complex(str(d / "octahedron.cplx")) == octahedron()
        tor = read_complex(str(d / "torus_3x3.cplx"))
        assert tor == torus(3, 3)
        m = read_map(str(d / "torus_to_circle.map"), tor, triangle_circle())
        assert m == torus_to_circle()
        t = read_involution(str(d / "antipodal.inv"), octahedron())
        assert all(t.apply_vertex(v) == v ^ 1 for v in octahedron().verts)
