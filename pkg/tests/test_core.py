import json

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from twocomplex.catalog import gen
from twocomplex.core import (Complex2, ComplexError, Edge, Face, Traversal, complex_to_json, dumps, empty_complex,
                             measures, simplicial_complex, validate_complex)
from twocomplex.randomgen import random_3_bounded, random_simplicial


def tetra():
    return simplicial_complex([("a", "b", "c"), ("a", "d", "b"), ("b", "d", "c"), ("a", "c", "d")])


def test_tetrahedron_valid_simplicial():
    C = tetra()
    assert (len(C.vertices), len(C.edges), len(C.faces)) == (4, 6, 4)
    assert C.is_simplicial and C.is_reasonable


def test_open_trail_diagnostic():
    raw = {"vertices": ["a", "b", "c"],
           "edges": [{"id": "e1", "tail": "a", "head": "b"}, {"id": "e2", "tail": "c", "head": "a"}],
           "faces": [{"id": "f", "trail": [{"edge": "e1", "forward": True}, {"edge": "e2", "forward": True}]}]}
    with pytest.raises(ComplexError) as exc:
        validate_complex(raw)
    assert any(d.kind == "open trail" for d in exc.value.diagnostics)


def test_repeated_edge_in_trail_rejected():
    raw = {"vertices": ["a"], "edges": [{"id": "l", "tail": "a", "head": "a"}],
           "faces": [{"id": "f", "trail": [{"edge": "l", "forward": True}, {"edge": "l", "forward": True}]}]}
    with pytest.raises(ComplexError):
        validate_complex(raw)


def test_octahedron_obstruction_not_simplicial():
    C = gen("octahedron-obstruction", squares=3)
    sizes = sorted({len(f.trail) for f in C.faces})
    assert sizes == [3, 4]
    assert not C.is_simplicial


def test_link_examples():
    top = gen("cone-k5").links["top"]
    H = nx.Graph(list(top.edges.values()))
    assert nx.is_isomorphic(H, nx.complete_graph(5))
    L = tetra().links["a"]
    assert len(L.nodes) == 3 and len(L.edges) == 3 and L.is_connected()
    for v in gen("octahedron-obstruction").vertices:
        Lv = gen("octahedron-obstruction").links[v]
        assert nx.is_isomorphic(nx.MultiGraph(list(Lv.edges.values())), nx.complete_graph(4))


def test_measures_examples():
    m = measures(tetra())
    assert (m.S, m.degree_parameter) == (12, 0)
    m = measures(gen("cone-k5"))
    assert (m.S, m.degree_parameter) == (30, 10)
    assert measures(empty_complex()).S == 0


def test_json_round_trip():
    for name in ("tetrahedron", "octahedron-obstruction", "torus-crossing"):
        C = gen(name)
        D = validate_complex(json.loads(dumps(C)))
        assert complex_to_json(D) == complex_to_json(C)


def _complexes():
    seeds = st.integers(0, 10 ** 6)
    return st.one_of(seeds.map(lambda s: random_simplicial(s, 6, 8)), seeds.map(random_3_bounded))


@given(_complexes())
def test_link_count_equals_trail_length(C):
    assert sum(len(C.links[v].edges) for v in C.vertices) == sum(len(f.trail) for f in C.faces)


@given(_complexes())
def test_measure_S_is_corner_count(C):
    assert measures(C).S == sum(C.face_degree(e.id) for e in C.edges)


@given(st.integers(0, 10 ** 6))
def test_links_functorial_under_relabeling(seed):
    C = random_simplicial(seed, 6, 9)
    ren = {v: f"x{v}" for v in C.vertices}
    D = Complex2.build([ren[v] for v in C.vertices],
                       [Edge("E" + e.id, ren[e.tail], ren[e.head]) for e in C.edges],
                       [Face("F" + f.id, tuple(Traversal("E" + t.edge, t.forward) for t in f.trail)) for f in C.faces])
    for v in C.vertices:
        a = nx.MultiGraph(list(C.links[v].edges.values()))
        a.add_nodes_from(C.links[v].nodes)
        b = nx.MultiGraph(list(D.links[ren[v]].edges.values()))
        b.add_nodes_from(D.links[ren[v]].nodes)
        assert nx.is_isomorphic(a, b)


def test_simplicial_catalog_links_simple():
    for name in ("tetrahedron", "octahedron", "icosahedron", "torus", "cone-k5", "moebius-555"):
        C = gen(name)
        for v in C.vertices:
            assert C.links[v].is_simple()
