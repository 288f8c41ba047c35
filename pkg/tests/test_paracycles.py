import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from oracles import brute_cycle_planar
from twocomplex.catalog import gen, moebius_from_sequence, torus_crossing
from twocomplex.multigraph import MultiGraph
from twocomplex.paracycles import (HelicopterError, HelicopterGraph, helicopter_oracle, helicopter_planar,
                                   is_chordless, mega_faces, para_cycle_planar, para_cycle_sigma, para_cycles,
                                   propagate, windings_at)

CASES = [gen("torus-meridian"), gen("moebius-555"), gen("moebius-5454"),
         torus_crossing(1, 2), torus_crossing(1, 3), torus_crossing(2, 3), torus_crossing(1, 2, n=3),
         moebius_from_sequence([3, 3, 3]), moebius_from_sequence([2, 2, 2, 2, 2, 2])]


@pytest.mark.parametrize("i", range(len(CASES)))
def test_para_cycle_planarity_matches_enumeration(i):
    C = CASES[i]
    cycles = para_cycles(C)
    assert cycles
    for o in cycles:
        planar, s0 = para_cycle_planar(C, o)
        assert planar == brute_cycle_planar(C, o.vertices)
        if planar:
            assert propagate(C, o, s0) in {s0[k:] + s0[:k] for k in range(len(s0))}
            sig = para_cycle_sigma(C, o, s0)
            assert set(sig) == set(o.edges)


def test_torus_crossing_mega_faces():
    C = torus_crossing(1, 2)
    (o,) = para_cycles(C)
    assert is_chordless(C, o)
    ms = mega_faces(C, o)
    assert sorted(m.winding for m in ms) == [1, 2]
    for m in ms:
        assert len(set(windings_at(C, o, m))) == 1
    assert not para_cycle_planar(C, o)[0]


def test_no_para_cycles_on_spheres():
    for name in ("tetrahedron", "octahedron", "torus", "annulus"):
        assert para_cycles(gen(name)) == []


def _theta(k):
    """Two marked nodes joined by k subdivided paths."""
    pairs = []
    for i in range(k):
        pairs += [("v", ("p", i)), (("p", i), "w")]
    return MultiGraph.from_pairs(pairs)


def _hel(G, pairs_fn):
    hv = {}
    for h in G.halves("v"):
        hv.setdefault(h[0], h)
    hw = {}
    for h in G.halves("w"):
        hw.setdefault(h[0], h)
    return HelicopterGraph(G, "v", "w", pairs_fn(sorted(hv), sorted(hw)))


@given(st.integers(2, 4), st.integers(0, 10 ** 6))
def test_helicopter_matches_oracle_on_thetas(k, seed):
    G = _theta(k)
    rng = random.Random(seed)

    def pairs(a, b):
        # pair the edges at v and w with a random bijection
        b = list(b)
        rng.shuffle(b)
        return tuple(zip(a, b))

    H = _hel(G, pairs)
    assert helicopter_planar(H) == helicopter_oracle(H)


def test_helicopter_examples():
    G = _theta(3)
    # edge into path i at v paired with edge out of path i at w: a planar theta graph realises it
    by_path = lambda a, b: tuple(zip(a, b))
    H = _hel(G, by_path)
    assert helicopter_planar(H) and helicopter_oracle(H)
    with pytest.raises(HelicopterError):
        helicopter_planar(HelicopterGraph(MultiGraph.from_networkx(nx.complete_graph(5)), 0, 1, ()))
