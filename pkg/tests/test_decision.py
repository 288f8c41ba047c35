import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_prs_exists
from twocomplex.bruteforce import rotation_count
from twocomplex.catalog import gen
from twocomplex.decision import (HypothesisViolation, Obstruction, PreconditionError, RotationFramework,
                                 build_rotation_framework, decide, find_obstruction, generalized_prs_check,
                                 is_locally_3_connected, verify_obstruction)
from twocomplex.minors import DeleteFace
from twocomplex.randomgen import random_3_bounded, random_simplicial
from twocomplex.rotation import is_planar_rotation_system

FOUND = ["tetrahedron", "octahedron", "icosahedron", "torus", "torus-meridian", "annulus", "disc", "delta2",
         "delta-plus"]
NONE = {
    "cone-k5": ("ConeOverKuratowski", {"kind": "K5"}),
    "cone-k6": ("ConeOverKuratowski", {"kind": "K5"}),
    "cone-k33": ("ConeOverKuratowski", {"kind": "K33"}),
    "cone-petersen": ("ConeOverKuratowski", {"kind": "K33"}),
    "octahedron-obstruction": ("Moebius", {}),
    "moebius-555": ("Moebius", {"variant": "555"}),
    "moebius-5454": ("Moebius", {"variant": "5454"}),
    "torus-crossing": ("TorusCrossing", {}),
}


@pytest.mark.parametrize("name", FOUND)
def test_catalog_found(name):
    C = gen(name)
    v = decide(C, general=True)
    assert v.status == "Found" and is_planar_rotation_system(C, v.sigma).planar


@pytest.mark.parametrize("name", sorted(NONE))
def test_catalog_none_with_verified_obstruction(name):
    C = gen(name)
    kind, detail = NONE[name]
    v = decide(C, general=True)
    assert v.status == "None" and v.obstruction.kind == kind
    for k, x in detail.items():
        assert v.obstruction.detail[k] == x
    assert verify_obstruction(C, v.obstruction).ok
    assert not brute_prs_exists(C, limit=10 ** 7) if rotation_count(C) <= 10 ** 6 else True


@pytest.mark.parametrize("family", [1, 2, 3, 4, 5])
def test_combined_cones(family):
    C = gen("combined-cone", family=family)
    v = decide(C, general=True)
    assert v.status == "None" and v.obstruction.kind == "CombinedCone"
    assert v.obstruction.detail["family"] == family


def test_tampered_obstruction_fails_verification():
    C = gen("cone-k5")
    obs = find_obstruction(C)
    bad = Obstruction(obs.kind, [DeleteFace(C.faces[0].id)] + list(obs.script), dict(obs.detail))
    assert not verify_obstruction(C, bad).ok
    assert not verify_obstruction(C, Obstruction("Nonsense", [], {})).ok


def test_locally_3_connected_route_and_frameworks():
    C = gen("octahedron-obstruction", squares=3)
    assert is_locally_3_connected(C)
    F = build_rotation_framework(C)
    assert isinstance(F, RotationFramework)
    v = decide(C)
    assert v.route == "locally-3-connected" and v.status == "None" and v.obstruction.kind == "Moebius"
    rep = generalized_prs_check(C)
    assert rep.framework and not rep.even and rep.odd_faces
    assert generalized_prs_check(gen("octahedron")).even
    with pytest.raises(PreconditionError):
        build_rotation_framework(gen("tetrahedron"))


def test_assume_simply_connected_violation():
    with pytest.raises(HypothesisViolation):
        decide(gen("torus"), assume_sc=True)
    assert decide(gen("tetrahedron"), assume_sc=True).interpretation == "EmbedsInS3IfSimplyConnected"


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        decide(gen("tetrahedron"), p=6)


def _random(seed):
    return random_simplicial(seed, 6, 8 + seed % 6, 4) if seed % 2 else random_3_bounded(seed)


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_decide_agrees_with_brute_oracle(seed):
    C = _random(seed)
    if not C.is_reasonable or rotation_count(C) > 10 ** 5:
        return
    v = decide(C, general=True)
    assert (v.status == "Found") == brute_prs_exists(C)
    if v.obstruction is not None:
        assert verify_obstruction(C, v.obstruction).ok
