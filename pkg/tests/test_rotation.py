from collections import Counter

import pytest
from hypothesis import given, strategies as st

from oracles import brute_prs_exists, h1_trivial_f2
from twocomplex.bruteforce import all_planar_rotation_systems, rotation_count
from twocomplex.catalog import gen, moebius_central_face
from twocomplex.minors import contract_edge, delete_face
from twocomplex.randomgen import random_3_bounded, random_simplicial
from twocomplex.rotation import (RotationError, RotationSystem, classify_bounded_surface, dual_complex,
                                 euler_identity_report, induced_link_rotation, is_planar_rotation_system,
                                 link_complex, local_surfaces)
from twocomplex.search import find_planar_rotation_system


def unique_sigma(C):
    return RotationSystem.complete(C, {})


@pytest.mark.parametrize("name", ["tetrahedron", "octahedron", "icosahedron"])
def test_spheres_have_two_sphere_local_surfaces(name):
    C = gen(name)
    S = unique_sigma(C)
    assert is_planar_rotation_system(C, S).planar
    surfs = local_surfaces(C, S)
    assert len(surfs) == 2 and all(s.genus == 0 and s.connected for s in surfs)
    assert euler_identity_report(C, S).lhs == 0


def test_tetrahedron_dual_counts():
    C = gen("tetrahedron")
    D = dual_complex(C, unique_sigma(C)).complex
    assert (len(D.vertices), len(D.edges), len(D.faces)) == (2, 4, 6)


def test_single_local_surface_gives_loop_dual():
    C = gen("moebius-555")
    C = delete_face(C, moebius_central_face(C))
    S = unique_sigma(C)
    D = dual_complex(C, S).complex
    assert len(D.vertices) == 1 and all(e.is_loop for e in D.edges)


def test_torus_euler_negative_branch():
    C = gen("torus")
    S = unique_sigma(C)
    r = euler_identity_report(C, S)
    assert r.lhs < 0 and not r.nullhomologous


def test_euler_report_needs_planar_sigma():
    C = gen("cone-k5")
    S = RotationSystem.complete(C, {e: C.faces_at_edge[e] for e in C.faces_at_edge})
    with pytest.raises(RotationError):
        euler_identity_report(C, S)


def test_octahedron_obstruction_every_sigma_fails():
    C = gen("octahedron-obstruction", squares=3)
    assert all_planar_rotation_systems(C) == []


def test_cone_k5_every_sigma_fails():
    assert all_planar_rotation_systems(gen("cone-k5")) == []


def test_classify_bounded_surface_examples():
    M = gen("moebius-555")
    assert classify_bounded_surface(delete_face(M, moebius_central_face(M))).kind == "MoebiusStrip"
    assert classify_bounded_surface(gen("annulus")).kind == "Annulus"
    assert classify_bounded_surface(gen("disc")).kind == "other"


def test_reversing_sigma_reverses_both_copies():
    C = gen("octahedron-obstruction", squares=1)
    S = find_planar_rotation_system(C)
    e = next(x.id for x in C.edges if C.face_degree(x.id) >= 3)
    flipped = RotationSystem({**S.sigma, e: tuple(reversed(S[e]))})
    for v, end in ((C.edge[e].tail, "t"), (C.edge[e].head, "h")):
        a = induced_link_rotation(C, S, v)[(e, end)]
        b = induced_link_rotation(C, flipped, v)[(e, end)]
        assert tuple(reversed(a)) in {b[k:] + b[:k] for k in range(len(b))}


def _prs_complexes():
    seeds = st.integers(0, 10 ** 6)
    return st.one_of(seeds.map(lambda s: random_simplicial(s, 6, 7, 3)), seeds.map(random_3_bounded))


@given(_prs_complexes())
def test_iota_bijection_cardinality(C):
    S = find_planar_rotation_system(C)
    if S is None:
        return
    per_vertex = Counter()
    for s in local_surfaces(C, S):
        for v, _ in s.vertex_clones.values():
            per_vertex[v] += 1
    for v in C.vertices:
        if C.edges_at_vertex[v]:
            assert per_vertex[v] == len(link_complex(C, S, v).faces)


@given(_prs_complexes())
def test_local_surfaces_of_prs_are_connected(C):
    S = find_planar_rotation_system(C)
    if S is None:
        return
    surfs = local_surfaces(C, S)
    assert all(s.connected for s in surfs)
    assert sum(len(s.orientations) for s in surfs) == 2 * len(C.faces)


def test_nullhomologous_catalog_local_surfaces_are_spheres():
    for name in ("tetrahedron", "octahedron", "icosahedron", "delta2", "delta-plus", "disc",
                 "octahedron-obstruction-0", "octahedron-obstruction-1"):
        C = gen(name)
        if not h1_trivial_f2(C) or not C.is_locally_connected:
            continue
        S = find_planar_rotation_system(C)
        assert S is not None
        assert all(s.genus == 0 for s in local_surfaces(C, S)), name


@given(st.integers(0, 10 ** 6))
def test_contraction_preserves_planarity_of_sigma(seed):
    C = random_simplicial(seed, 6, 7, 3)
    S = find_planar_rotation_system(C)
    if S is None:
        return
    for e in C.edges:
        try:
            D = contract_edge(C, e.id)
        except ValueError:
            continue
        Se = RotationSystem.complete(D, {x.id: S[x.id] for x in D.edges if D.face_degree(x.id) > 2})
        assert is_planar_rotation_system(D, Se).planar


@given(_prs_complexes())
def test_prs_check_agrees_with_independent_oracle(C):
    if rotation_count(C) > 20000:
        return
    assert (find_planar_rotation_system(C) is not None) == brute_prs_exists(C)
