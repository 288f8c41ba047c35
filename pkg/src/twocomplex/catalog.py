"""Named complexes used by tests, the acceptance suite and the CLI."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

import networkx as nx

from .core import Complex2, simplicial_complex


class CatalogError(KeyError):
    pass


def polygon_complex(polys: Iterable[Iterable[str]]) -> Complex2:
    """Faces given by vertex cycles of any length; edges inferred."""
    return simplicial_complex(polys)


def tetrahedron() -> Complex2:
    v = ["v0", "v1", "v2", "v3"]
    return simplicial_complex(itertools.combinations(v, 3))


def octahedron_triangles() -> list[tuple[str, str, str]]:
    return [(x, y, z) for x in ("px", "nx") for y in ("py", "ny") for z in ("pz", "nz")]


def octahedron() -> Complex2:
    return simplicial_complex(octahedron_triangles())


def octahedron_obstruction(squares: int = 3) -> Complex2:
    if not 0 <= squares <= 3:
        raise CatalogError("squares must be between 0 and 3")
    sq = [("px", "py", "nx", "ny"), ("px", "pz", "nx", "nz"), ("py", "pz", "ny", "nz")]
    return polygon_complex(octahedron_triangles() + sq[:squares])


def icosahedron() -> Complex2:
    tris = []
    for i in range(5):
        j = (i + 1) % 5
        tris += [("t", f"u{i}", f"u{j}"), (f"u{i}", f"u{j}", f"l{i}"),
                 (f"u{j}", f"l{j}", f"l{i}"), ("b", f"l{i}", f"l{j}")]
    return simplicial_complex(tris)


def torus(n: int = 3) -> Complex2:
    """n x n grid triangulation of the torus (n >= 3)."""
    t = lambda i, j: f"t{i % n}{j % n}"
    tris = []
    for i in range(n):
        for j in range(n):
            tris += [(t(i, j), t(i + 1, j), t(i + 1, j + 1)), (t(i, j), t(i, j + 1), t(i + 1, j + 1))]
    return simplicial_complex(tris)


def torus_meridian() -> Complex2:
    """Grid torus with a disc glued along a meridian."""
    t = lambda i, j: f"t{i % 3}{j % 3}"
    tris = []
    for i in range(3):
        for j in range(3):
            tris += [(t(i, j), t(i + 1, j), t(i + 1, j + 1)), (t(i, j), t(i, j + 1), t(i + 1, j + 1))]
    tris.append(("t00", "t10", "t20"))
    return simplicial_complex(tris)


def annulus() -> Complex2:
    tris = []
    for i in range(3):
        j = (i + 1) % 3
        tris += [(f"a{i}", f"a{j}", f"b{i}"), (f"a{j}", f"b{j}", f"b{i}")]
    return simplicial_complex(tris)


def disc(k: int = 4) -> Complex2:
    return simplicial_complex([("c", f"r{i}", f"r{(i + 1) % k}") for i in range(k)])


def delta2() -> Complex2:
    return simplicial_complex([("x", "y", "z"), ("x", "y", "zz")])


def delta_plus(n: int = 3) -> Complex2:
    tris = []
    for i in range(n):
        tris += [("v", "wa", f"q{i}"), ("v", "wb", f"q{i}")]
    return simplicial_complex(tris)


# graphs ---------------------------------------------------------------------

def base_graph(name: str) -> nx.Graph:
    name = name.lower().replace(",", "")
    if name == "k5":
        g = nx.complete_graph(5)
    elif name == "k6":
        g = nx.complete_graph(6)
    elif name in ("k33", "k3,3"):
        g = nx.complete_bipartite_graph(3, 3)
    elif name == "petersen":
        g = nx.petersen_graph()
    elif name == "k4":
        g = nx.complete_graph(4)
    elif name.startswith("c") and name[1:].isdigit():
        g = nx.cycle_graph(int(name[1:]))
    else:
        raise CatalogError(f"unknown base graph {name}")
    return nx.relabel_nodes(g, {x: f"g{x}" for x in g.nodes})


def cone(G: nx.Graph | Iterable[tuple], apex: str = "top") -> Complex2:
    edges = G.edges() if isinstance(G, nx.Graph) else G
    return simplicial_complex([(apex, str(u), str(v)) for u, v in edges])


def subdivide(G: nx.Graph, times: int = 1) -> nx.Graph:
    """Subdivide every edge `times` times."""
    H = nx.Graph()
    H.add_nodes_from(G.nodes)
    for k, (u, v) in enumerate(sorted(G.edges(), key=lambda e: (str(e[0]), str(e[1])))):
        path = [u] + [f"s{k}_{i}" for i in range(times)] + [v]
        nx.add_path(H, path)
    return H


# combined cones ----------------------------------------------------------------

K33_A = ("g0", "g1", "g2")
K33_B = ("g3", "g4", "g5")

COMBINED_FAMILIES = {
    1: ("K5", ("g0", "g1")),
    2: ("K33", ("g0", "g1")),
    3: ("K33", ("g0", "g3")),
    4: ("K33", ("g0", "g1", "g2")),
    5: ("K33", ("g0", "g1", "g3")),
}


def combined_cone_from_cut(G: nx.Graph, side: Iterable[str], apex_v: str = "v", apex_w: str = "w") -> Complex2:
    """Simplicial combined cone over G with cut between `side` and the rest.

    Cut edges are subdivided twice first so that the cut is a matching.
    """
    side = set(side)
    H = nx.Graph()
    H.add_nodes_from(G.nodes)
    sideof = {x: (x in side) for x in G.nodes}
    cut = []
    for k, (x, y) in enumerate(sorted(G.edges(), key=lambda e: tuple(sorted(map(str, e))))):
        if sideof[x] == sideof[y]:
            H.add_edge(x, y)
            continue
        if not sideof[x]:
            x, y = y, x
        p, q = f"p{k}", f"q{k}"
        sideof[p], sideof[q] = True, False
        nx.add_path(H, [x, p, q, y])
        cut.append((p, q, f"z{k}"))
    cls = {x: x for x in H.nodes}
    for p, q, z in cut:
        cls[p] = cls[q] = z
    tris = []
    for a, b in H.edges():
        if cls[a] == cls[b]:
            tris.append((apex_v, apex_w, cls[a]))
        else:
            apex = apex_v if sideof[a] else apex_w
            tris.append((apex, cls[a], cls[b]))
    return simplicial_complex(tris)


def combined_cone(family: int) -> Complex2:
    if family not in COMBINED_FAMILIES:
        raise CatalogError("combined cone family must be 1..5")
    kind, side = COMBINED_FAMILIES[family]
    return combined_cone_from_cut(base_graph(kind), side)


def combined_family_of(kind: str, side: Iterable, other: Iterable, sides: tuple = ()) -> int:
    """Family index from a Kuratowski witness and a bipartition of its branch vertices."""
    side, other = set(side), set(other)
    if kind == "K5":
        return 1
    small = side if len(side) <= len(other) else other
    A = set(sides[0]) if sides else set()
    mono = small <= A or not (small & A)
    if len(small) == 2:
        return 2 if mono else 3
    return 4 if mono else 5


# Moebius obstructions -------------------------------------------------------

def moebius_from_sequence(ks: Iterable[int]) -> Complex2:
    """Moebius strip around the central cycle a0 a1 a2, plus the central face.

    b-vertex j covers k_j consecutive positions of the 6-cycle double covering
    the central cycle; the b-vertices form the boundary cycle.
    """
    ks = list(ks)
    if sum(k - 1 for k in ks) != 6 or any(k < 1 for k in ks):
        raise CatalogError("sequence must satisfy sum(k - 1) = 6")
    m = len(ks)
    c = lambda t: f"a{t % 3}"
    tris = [("a0", "a1", "a2")]
    s = 0
    for j, k in enumerate(ks):
        for t in range(s, s + k - 1):
            tris.append((f"b{j}", c(t), c(t + 1)))
        s += k - 1
        tris.append((f"b{j}", f"b{(j + 1) % m}", c(s)))
    return simplicial_complex(tris)


MOEBIUS_MIN = {"555": (3, 3, 3), "5454": (3, 2, 3, 2)}


def moebius_min(variant: str = "555") -> Complex2:
    variant = str(variant).replace(",", "")
    if variant not in MOEBIUS_MIN:
        raise CatalogError("variant must be 555 or 5454")
    return moebius_from_sequence(MOEBIUS_MIN[variant])


def moebius_central_face(C: Complex2) -> str:
    for f in C.faces:
        if set(C.face_vertices(f.id)) == {"a0", "a1", "a2"}:
            return f.id
    raise CatalogError("no central face")


# torus crossings ---------------------------------------------------------------

def torus_crossing(w1: int = 1, w2: int = 2, n: int = 4) -> Complex2:
    """Base cycle o_0..o_{n-1} bounding two annular mega faces with windings w1 and w2."""
    tris = []
    for tag, W in (("x", w1), ("y", w2)):
        m = W * n
        o = lambda t: f"o{t % n}"
        x = lambda t: f"{tag}{t % m}"
        for t in range(m):
            tris += [(o(t), o(t + 1), x(t)), (o(t + 1), x(t), x(t + 1))]
    return simplicial_complex(tris)


# registry ---------------------------------------------------------------------

@dataclass
class CatalogEntry:
    name: str
    build: Callable[..., Complex2]
    params: dict = field(default_factory=dict)
    expect: dict = field(default_factory=dict)


ENTRIES: dict[str, CatalogEntry] = {}


def _entry(name, build, params=None, **expect):
    ENTRIES[name] = CatalogEntry(name, build, params or {}, expect)


_entry("tetrahedron", tetrahedron, simplicial=True, prs=True, h1=True)
_entry("octahedron", octahedron, simplicial=True, prs=True, h1=True)
_entry("icosahedron", icosahedron, simplicial=True, prs=True, h1=True)
_entry("torus", torus, {"n": 3}, simplicial=True, prs=True, h1=False)
_entry("torus-meridian", torus_meridian, simplicial=True, prs=True)
_entry("annulus", annulus, simplicial=True, prs=True)
_entry("disc", disc, {"k": 4}, simplicial=True, prs=True)
_entry("delta2", delta2, simplicial=True, prs=True)
_entry("delta-plus", delta_plus, {"n": 3}, simplicial=True, prs=True)
_entry("octahedron-obstruction", octahedron_obstruction, {"squares": 3}, simplicial=False)
_entry("cone", lambda base="K5": cone(base_graph(base)), {"base": "K5"}, simplicial=True)
_entry("combined-cone", combined_cone, {"family": 1}, simplicial=True, prs=False)
_entry("moebius-min", moebius_min, {"variant": "555"}, simplicial=True, prs=False)
_entry("torus-crossing", torus_crossing, {"w1": 1, "w2": 2, "n": 4}, simplicial=True, prs=False)

_SHORT = {
    "cone-k5": ("cone", {"base": "K5"}),
    "cone-k33": ("cone", {"base": "K33"}),
    "cone-k3,3": ("cone", {"base": "K33"}),
    "cone-k6": ("cone", {"base": "K6"}),
    "cone-petersen": ("cone", {"base": "petersen"}),
    "moebius-555": ("moebius-min", {"variant": "555"}),
    "moebius-5454": ("moebius-min", {"variant": "5454"}),
}


def _coerce(v: str) -> Any:
    try:
        return int(v)
    except ValueError:
        return v


def resolve(text: str) -> tuple[str, dict]:
    """Parse `name`, `name?k=v&k=v`, or shorthands like `cone-K5`, `combined-cone-3`."""
    name, _, query = text.partition("?")
    params: dict = {}
    for kv in filter(None, query.split("&")):
        k, _, v = kv.partition("=")
        params[k] = _coerce(v)
    low = name.lower()
    if low in _SHORT:
        base, p = _SHORT[low]
        return base, {**p, **params}
    if low in ENTRIES:
        return low, params
    head, _, tail = low.rpartition("-")
    if head in ENTRIES and tail:
        first = next(iter(ENTRIES[head].params), None)
        if first is None:
            raise CatalogError(f"{head} takes no parameters")
        return head, {first: _coerce(tail), **params}
    raise CatalogError(f"unknown catalog entry {text}")


def gen(name: str, **params) -> Complex2:
    base, p = resolve(name)
    p.update(params)
    entry = ENTRIES[base]
    p = {**entry.params, **p}
    try:
        return entry.build(**p)
    except TypeError as exc:
        raise CatalogError(f"bad parameters for {base}: {exc}") from None


def names() -> list[str]:
    return sorted(ENTRIES) + sorted(_SHORT)
