"""The localization loop, its certificates, and the text round trip."""

import dataclasses
import re

import pytest

from lsgenus.category import CategoryFunction, kappa_hl
from lsgenus.complexes import open_star, subdivision
from lsgenus.errors import AxiomViolation, HypothesisViolation, InputError
from lsgenus.localize import (
    LocalizationCertificate,
    certificate_from_text,
    certificate_to_text,
    localize,
    verify_certificate,
)
from lsgenus.spaces import torus, torus_to_circle, triangle_circle


@pytest.fixture(scope="module")
def cert_and_map():
    f = torus_to_circle()
    kp = kappa_hl(f.source)
    return localize(f, kp, n=1, rounds=2), f, kp


def test_localize_certificate_contents(cert_and_map):
    cert, f, kp = cert_and_map
    assert cert.n == 1
    assert cert.kappa_total == 3
    assert len(cert.rounds) == 2
    for rec in cert.rounds:
        assert rec.kappa >= 2
    d1, d2 = cert.diameters()
    assert d2 < d1
    assert cert.c == cert.rounds[-1].barycenter
    assert verify_certificate(cert, f, kp)


def test_hypothesis_guard_message():
    f = torus_to_circle()
    kp = kappa_hl(f.source)
    with pytest.raises(HypothesisViolation) as exc:
        localize(f, kp, n=2, rounds=1)
    assert str(exc.value) == "hypothesis kappa(X) > n(d+1) violated: 3 <= 4"


def test_localize_input_guards():
    f = torus_to_circle()
    with pytest.raises(InputError):
        localize(f, kappa_hl(f.source), n=1, rounds=0)
    with pytest.raises(InputError):
        localize(f, kappa_hl(triangle_circle()), n=1, rounds=1)


def test_verify_rejects_tampered_values(cert_and_map):
    cert, f, kp = cert_and_map
    bumped = dataclasses.replace(
        cert,
        rounds=(
            dataclasses.replace(cert.rounds[0], kappa=cert.rounds[0].kappa + 1),
        )
        + cert.rounds[1:],
    )
    assert not verify_certificate(bumped, f, kp)

    wider = dataclasses.replace(
        cert,
        rounds=cert.rounds[:1]
        + (
            dataclasses.replace(
                cert.rounds[1], diameter=cert.rounds[1].diameter * 2
            ),
        ),
    )
    assert not verify_certificate(wider, f, kp)

    assert not verify_certificate(
        dataclasses.replace(cert, kappa_total=cert.kappa_total + 1), f, kp
    )
    # n pushed past the hypothesis also fails cleanly
    assert not verify_certificate(dataclasses.replace(cert, n=2), f, kp)


def test_verify_rejects_shape_mismatches(cert_and_map):
    cert, f, kp = cert_and_map
    swapped = dataclasses.replace(cert, rounds=cert.rounds[::-1])
    with pytest.raises(InputError, match="expected subdivision"):
        verify_certificate(swapped, f, kp)

    rec = cert.rounds[0]
    foreign = 3 if rec.center in (0, 1, 2) else 0
    moved = dataclasses.replace(
        cert, rounds=(dataclasses.replace(rec, center=foreign),) + cert.rounds[1:]
    )
    with pytest.raises(InputError, match=r"is not a color-\d barycenter"):
        verify_certificate(moved, f, kp)

    sd_circle, _ = subdivision(f.target)
    same_color = [c for c in (0, 1, 2) if c != rec.center] + [
        c for c in (3, 4, 5) if c != rec.center
    ]
    other = (
        same_color[0]
        if rec.center in (0, 1, 2)
        else [c for c in (3, 4, 5) if c != rec.center][0]
    )
    wrong_star = dataclasses.replace(
        cert,
        rounds=(dataclasses.replace(rec, star=open_star(sd_circle, other)),)
        + cert.rounds[1:],
    )
    with pytest.raises(InputError, match="not the open star of its center"):
        verify_certificate(wrong_star, f, kp)


def test_verify_rejects_empty_certificate(cert_and_map):
    _, f, kp = cert_and_map
    empty = LocalizationCertificate(n=1, kappa_total=3, rounds=(), c=())
    with pytest.raises(InputError, match="no rounds"):
        verify_certificate(empty, f, kp)


def test_certificate_text_round_trip(cert_and_map):
    cert, f, kp = cert_and_map
    text = certificate_to_text(cert)
    assert text.startswith("lsgenus localization certificate v1\n")
    back = certificate_from_text(text, f)
    assert back == cert
    assert verify_certificate(back, f, kp)


def test_certificate_text_rejects_corruption(cert_and_map):
    cert, f, _ = cert_and_map
    text = certificate_to_text(cert)

    with pytest.raises(InputError, match="unknown header"):
        certificate_from_text("bogus\n" + text.split("\n", 1)[1], f)

    lines = text.splitlines()
    with pytest.raises(InputError, match="wrong number of lines"):
        certificate_from_text("\n".join(lines[:-2]) + "\n", f)

    tampered = re.sub(r"members=(\d+)", lambda m: f"members={int(m.group(1)) + 1}",
                      text, count=1)
    with pytest.raises(InputError, match="members"):
        certificate_from_text(tampered, f)


def _recursive_kappa(owner, label, rule):
    def refi(proj):
        return _recursive_kappa(proj.source, label, rule)

    return CategoryFunction(label, owner, rule, refi)


def test_subadditivity_failure_is_reported():
    f = torus_to_circle()
    kp = _recursive_kappa(
        f.source, "full-only", lambda u: 5 if u.is_full else 1
    )
    with pytest.raises(AxiomViolation, match="not subadditive over the colors"):
        localize(f, kp, n=1, rounds=1)


def test_disjointness_failure_is_reported():
    f = torus_to_circle()
    kp = _recursive_kappa(
        f.source,
        "bulk",
        lambda u: 3 if 2 * u.nmembers >= u.owner.nsimplices else 1,
    )
    with pytest.raises(AxiomViolation, match="ignores disjointness"):
        localize(f, kp, n=1, rounds=1)
