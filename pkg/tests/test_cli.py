"""End-to-end CLI behavior: output shape, exit codes, determinism."""

import os
import re
import subprocess
import sys
from pathlib import Path

import pytest

import lsgenus
from lsgenus import __version__
from lsgenus.cli import main

DATA = Path(lsgenus.__file__).parent / "data"
CIRCLE = str(DATA / "circle.cplx")
OCTA = str(DATA / "octahedron.cplx")
TORUS = str(DATA / "torus_3x3.cplx")
T2S1 = str(DATA / "torus_to_circle.map")
ANTIPODAL = str(DATA / "antipodal.inv")


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_info(capsys):
    code, out, err = run(capsys, "info", "--complex", CIRCLE)
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == f"lsgenus {__version__}"
    assert "f-vector: (3, 3)" in lines
    assert "betti over GF(2): (1, 1)" in lines
    assert "cup length over GF(2): 1" in lines


def test_info_odd_field(capsys):
    code, out, _ = run(capsys, "info", "--complex", TORUS, "--field", "3")
    assert code == 0
    assert "betti over GF(3): (1, 2, 1)" in out
    assert "cup length over GF(3): 2" in out


def test_hl_with_cross_check(capsys):
    code, out, _ = run(capsys, "hl", "--complex", CIRCLE, "--cross-check")
    assert code == 0
    assert "hl over GF(2): 1" in out
    assert "oracle: 1 (match)" in out


def test_hl_with_seed_file(capsys, tmp_path):
    seeds = tmp_path / "star.seed"
    seeds.write_text("0\n")
    code, out, _ = run(capsys, "hl", "--complex", CIRCLE, "--seeds", str(seeds))
    assert code == 0
    assert "hl over GF(2): 0" in out


def test_axioms_pass_for_hl(capsys):
    code, out, _ = run(
        capsys, "axioms", "--complex", CIRCLE, "--samples", "25"
    )
    assert code == 0
    assert out.splitlines()[-1] == "result: PASS"


def test_axioms_fail_exits_one(capsys):
    code, out, _ = run(
        capsys,
        "axioms", "--complex", TORUS, "--kappa", "count", "--samples", "25",
    )
    assert code == 1
    assert out.splitlines()[-1] == "result: FAIL"
    assert "FAIL disjoint_max" in out


def test_axioms_genus_kappa_subdivides_when_needed(capsys):
    code, out, _ = run(
        capsys,
        "axioms", "--complex", OCTA, "--kappa", "genus",
        "--involution", ANTIPODAL, "--samples", "8",
    )
    assert code == 0
    assert "note: action not regular as given; subdivided once" in out
    assert "quotient f-vector: (13, 36, 24)" in out
    assert out.splitlines()[-1] == "result: PASS"


def test_axioms_genus_kappa_needs_involution(capsys):
    code, _, err = run(capsys, "axioms", "--complex", OCTA, "--kappa", "genus")
    assert code == 2
    assert "--kappa genus needs --involution" in err


def test_cover_levels_shrink(capsys):
    code, out, _ = run(capsys, "cover", "--complex", OCTA, "--levels", "3")
    assert code == 0
    lines = out.splitlines()
    assert any(ln.startswith("level 0: families (6, 12, 8) mesh") for ln in lines)
    ratios = [float(m.group(1)) for m in
              (re.search(r"ratio (\S+)", ln) for ln in lines) if m]
    assert len(ratios) == 2
    assert all(r < 1.0 for r in ratios)


def test_localize_and_verify_round_trip(capsys, tmp_path):
    cert = str(tmp_path / "t2s1.cert")
    code, out, _ = run(
        capsys,
        "localize", "--source", TORUS, "--target", CIRCLE, "--map", T2S1,
        "--out", cert,
    )
    assert code == 0
    assert "kappa total: 3  threshold n=1" in out
    assert os.path.exists(cert)

    code, out, _ = run(
        capsys,
        "verify", "--source", TORUS, "--target", CIRCLE, "--map", T2S1,
        "--cert", cert,
    )
    assert code == 0
    assert "certificate valid: True" in out


def test_verify_rejects_tampered_certificate(capsys, tmp_path):
    cert = str(tmp_path / "t2s1.cert")
    run(
        capsys,
        "localize", "--source", TORUS, "--target", CIRCLE, "--map", T2S1,
        "--out", cert,
    )
    text = open(cert).read()
    tampered = re.sub(
        r"kappa=(\d+)", lambda m: f"kappa={int(m.group(1)) + 1}", text, count=1
    )
    open(cert, "w").write(tampered)
    code, out, _ = run(
        capsys,
        "verify", "--source", TORUS, "--target", CIRCLE, "--map", T2S1,
        "--cert", cert,
    )
    assert code == 1
    assert "certificate valid: False" in out


def test_verify_corrupt_header_is_unusable_input(capsys, tmp_path):
    cert = tmp_path / "junk.cert"
    cert.write_text("not a certificate\n")
    code, out, err = run(
        capsys,
        "verify", "--source", TORUS, "--target", CIRCLE, "--map", T2S1,
        "--cert", str(cert),
    )
    assert code == 2
    assert out == ""
    assert "unknown header" in err


def test_localize_hypothesis_violation_exits_one(capsys):
    code, out, err = run(
        capsys,
        "localize", "--source", TORUS, "--target", CIRCLE, "--map", T2S1,
        "--n", "2",
    )
    assert code == 1
    assert err == ""
    lines = out.splitlines()
    assert lines[0] == f"lsgenus {__version__}"
    assert lines[1] == (
        "error: hypothesis kappa(X) > n(d+1) violated: 3 <= 4"
    )


def test_genus_command(capsys):
    code, out, _ = run(
        capsys, "genus", "--complex", OCTA, "--involution", ANTIPODAL
    )
    assert code == 0
    assert "note: action not regular as given; subdivided once" in out
    assert "classifying class: nontrivial" in out
    assert "genus bounds of the whole quotient: [3, 3]" in out


def test_genus_strict_refuses_irregular_input(capsys):
    code, out, err = run(
        capsys,
        "genus", "--complex", OCTA, "--involution", ANTIPODAL, "--strict",
    )
    assert code == 2
    assert out == ""
    assert "subdivide before taking the quotient" in err


def test_bu_demo(capsys):
    code, out, _ = run(capsys, "bu-demo", "--rounds", "2")
    assert code == 0
    assert "sphere dimension n=2, threshold k=1, target dimension l=1" in out
    assert "certificate verifies: True" in out


def test_out_file_copies_stdout(capsys, tmp_path):
    dest = tmp_path / "info.txt"
    code, out, _ = run(
        capsys, "info", "--complex", CIRCLE, "--out", str(dest)
    )
    assert code == 0
    assert dest.read_text() == out


@pytest.mark.parametrize(
    "argv",
    [
        ("info", "--complex", TORUS),
        ("hl", "--complex", TORUS, "--cross-check"),
        ("axioms", "--complex", CIRCLE, "--samples", "20", "--seed", "4"),
        ("cover", "--complex", OCTA, "--levels", "2"),
        (
            "localize", "--source", TORUS, "--target", CIRCLE,
            "--map", T2S1, "--rounds", "2",
        ),
        ("genus", "--complex", OCTA, "--involution", ANTIPODAL),
    ],
    ids=["info", "hl", "axioms", "cover", "localize", "genus"],
)
def test_runs_are_deterministic(capsys, argv):
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_localize_out_files_are_byte_identical(capsys, tmp_path):
    a, b = str(tmp_path / "a.cert"), str(tmp_path / "b.cert")
    for dest in (a, b):
        run(
            capsys,
            "localize", "--source", TORUS, "--target", CIRCLE, "--map", T2S1,
            "--out", dest,
        )
    assert open(a, "rb").read() == open(b, "rb").read()


def test_argparse_behavior(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert f"lsgenus {__version__}" in capsys.readouterr().out


def test_missing_file_is_unusable_input(capsys):
    code, _, err = run(capsys, "info", "--complex", "/no/such/file.cplx")
    assert code == 2
    assert "cannot read" in err


def test_backends_agree_in_subprocesses():
    outs = []
    for flag in ("0", "1"):
        env = dict(os.environ, LSGENUS_NUMBA=flag)
        r = subprocess.run(
            [sys.executable, "-m", "lsgenus.cli", "info", "--complex", TORUS],
            capture_output=True, text=True, env=env, timeout=300,
        )
        assert r.returncode == 0, r.stderr
        outs.append(r.stdout)
    assert outs[0] == outs[1]
