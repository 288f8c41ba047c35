"""Directed 2-complexes: data model, validation, JSON I/O, link graphs, measures."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Mapping

from .multigraph import MultiGraph, sorted_ids


class ComplexError(ValueError):
    """Raised when a description violates the complex invariants."""

    def __init__(self, diagnostics: list["Diagnostic"]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(str(d) for d in diagnostics))


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    cell: str
    message: str = ""

    def __str__(self) -> str:
        return f"{self.kind} at {self.cell}" + (f": {self.message}" if self.message else "")


@dataclass(frozen=True)
class Traversal:
    edge: str
    forward: bool


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class Face:
    id: str
    trail: tuple[Traversal, ...]

    def __len__(self) -> int:
        return len(self.trail)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(t.edge for t in self.trail)


@dataclass(frozen=True)
class Complex2:
    """Immutable directed 2-complex; cells are kept sorted by id."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    faces: tuple[Face, ...]

    # indices -------------------------------------------------------------
    @cached_property
    def edge(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def face(self) -> dict[str, Face]:
        return {f.id: f for f in self.faces}

    @cached_property
    def faces_at_edge(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {e.id: [] for e in self.edges}
        for f in self.faces:
            for t in f.trail:
                inc[t.edge].append(f.id)
        return {k: tuple(v) for k, v in inc.items()}

    @cached_property
    def edges_at_vertex(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.tail].append(e.id)
            if e.head != e.tail:
                inc[e.head].append(e.id)
        return {k: tuple(v) for k, v in inc.items()}

    @cached_property
    def faces_at_vertex(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, set[str]] = {v: set() for v in self.vertices}
        for f in self.faces:
            for x in self.face_vertices(f.id):
                inc[x].add(f.id)
        return {k: tuple(sorted(v)) for k, v in inc.items()}

    def face_degree(self, eid: str) -> int:
        return len(self.faces_at_edge[eid])

    def traversal_start(self, t: Traversal) -> str:
        e = self.edge[t.edge]
        return e.tail if t.forward else e.head

    def traversal_end(self, t: Traversal) -> str:
        e = self.edge[t.edge]
        return e.head if t.forward else e.tail

    def face_vertices(self, fid: str) -> tuple[str, ...]:
        """Vertex sequence of the face boundary, starting at the first traversal."""
        return tuple(self.traversal_start(t) for t in self.face[fid].trail)

    def direction_in(self, fid: str, eid: str) -> bool:
        for t in self.face[fid].trail:
            if t.edge == eid:
                return t.forward
        raise KeyError(f"face {fid} does not contain edge {eid}")

    def edge_between(self, u: str, v: str) -> str | None:
        for eid in self.edges_at_vertex.get(u, ()):
            e = self.edge[eid]
            if {e.tail, e.head} == {u, v} and (u != v or e.is_loop):
                return eid
        return None

    # flags ---------------------------------------------------------------
    @cached_property
    def is_reasonable(self) -> bool:
        on_edge = {x for e in self.edges for x in (e.tail, e.head)}
        if any(v not in on_edge for v in self.vertices):
            return False
        return all(self.faces_at_edge[e.id] for e in self.edges)

    @cached_property
    def is_simplicial(self) -> bool:
        pairs = set()
        for e in self.edges:
            if e.is_loop:
                return False
            k = frozenset((e.tail, e.head))
            if k in pairs:
                return False
            pairs.add(k)
        vsets = set()
        for f in self.faces:
            if len(f.trail) != 3:
                return False
            k = frozenset(self.face_vertices(f.id))
            if len(k) != 3 or k in vsets:
                return False
            vsets.add(k)
        return True

    @cached_property
    def is_three_bounded(self) -> bool:
        return all(len(f.trail) <= 3 for f in self.faces)

    def link(self, v: str) -> "LinkGraph":
        return link_graph(self, v)

    @cached_property
    def links(self) -> dict[str, "LinkGraph"]:
        return {v: link_graph(self, v) for v in self.vertices}

    @cached_property
    def is_locally_connected(self) -> bool:
        return all(self.links[v].is_connected() for v in self.vertices)

    def one_skeleton(self) -> MultiGraph:
        return MultiGraph(self.vertices, {e.id: (e.tail, e.head) for e in self.edges})

    def summary(self) -> dict[str, Any]:
        return {
            "vertices": len(self.vertices),
            "edges": len(self.edges),
            "faces": len(self.faces),
            "reasonable": self.is_reasonable,
            "simplicial": self.is_simplicial,
        }

    # construction --------------------------------------------------------
    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable, faces: Iterable) -> "Complex2":
        """Validated constructor; edges are (id, tail, head), faces are (id, [(edge, forward)])."""
        es = [e if isinstance(e, Edge) else Edge(str(e[0]), str(e[1]), str(e[2])) for e in edges]
        fs = []
        for f in faces:
            if isinstance(f, Face):
                fs.append(f)
            else:
                fid, trail = f
                fs.append(Face(str(fid), tuple(t if isinstance(t, Traversal) else Traversal(str(t[0]), bool(t[1])) for t in trail)))
        diags = check_cells(vertices, es, fs)
        if diags:
            raise ComplexError(diags)
        return cls(tuple(sorted(set(vertices))), tuple(sorted(es, key=lambda e: e.id)),
                   tuple(sorted(fs, key=lambda f: f.id)))

    def replace(self, vertices=None, edges=None, faces=None) -> "Complex2":
        return Complex2.build(self.vertices if vertices is None else vertices,
                              self.edges if edges is None else edges,
                              self.faces if faces is None else faces)


def check_cells(vertices: Iterable[str], edges: list[Edge], faces: list[Face]) -> list[Diagnostic]:
    diags: list[Diagnostic] = []
    vlist = list(vertices)
    vs = set(vlist)
    if len(vs) != len(vlist):
        for v in sorted(vs):
            if vlist.count(v) > 1:
                diags.append(Diagnostic("duplicate id", v, "vertex listed twice"))
    emap: dict[str, Edge] = {}
    for e in edges:
        if e.id in emap:
            diags.append(Diagnostic("duplicate id", e.id, "edge listed twice"))
        emap[e.id] = e
        for x in (e.tail, e.head):
            if x not in vs:
                diags.append(Diagnostic("dangling incidence", e.id, f"unknown vertex {x}"))
    fids = set()
    for f in faces:
        if f.id in fids:
            diags.append(Diagnostic("duplicate id", f.id, "face listed twice"))
        fids.add(f.id)
        if not f.trail:
            diags.append(Diagnostic("empty trail", f.id))
            continue
        seen = set()
        bad = False
        for t in f.trail:
            if t.edge not in emap:
                diags.append(Diagnostic("dangling incidence", f.id, f"unknown edge {t.edge}"))
                bad = True
            if t.edge in seen:
                diags.append(Diagnostic("repeated edge in trail", f.id, f"edge {t.edge}"))
            seen.add(t.edge)
        if bad:
            continue
        n = len(f.trail)
        for i, t in enumerate(f.trail):
            a, b = emap[t.edge], emap[f.trail[(i + 1) % n].edge]
            end = a.head if t.forward else a.tail
            nxt = f.trail[(i + 1) % n]
            start = b.tail if nxt.forward else b.head
            if end != start:
                diags.append(Diagnostic("open trail", f.id, f"traversal {i} ends at {end}, next starts at {start}"))
                break
    return diags


# JSON -----------------------------------------------------------------------

def validate_complex(raw: Mapping[str, Any] | str) -> Complex2:
    """Parse and validate a JSON description; raises ComplexError with diagnostics."""
    if isinstance(raw, str):
        raw = json.loads(raw)
    if not isinstance(raw, Mapping):
        raise ComplexError([Diagnostic("malformed", "<root>", "expected an object")])
    faces_raw = list(raw.get("faces", []))
    if faces_raw and all(isinstance(f, (list, tuple)) for f in faces_raw):
        return simplicial_complex(faces_raw, extra_vertices=raw.get("vertices", ()))
    try:
        vertices = [str(v) for v in raw.get("vertices", [])]
        edges = [Edge(str(e["id"]), str(e["tail"]), str(e["head"])) for e in raw.get("edges", [])]
        faces = []
        for i, f in enumerate(faces_raw):
            trail = tuple(Traversal(str(t["edge"]), bool(t.get("forward", True))) for t in f["trail"])
            faces.append(Face(str(f.get("id", f"f{i}")), trail))
    except (KeyError, TypeError) as exc:
        raise ComplexError([Diagnostic("malformed", "<root>", f"missing field {exc}")]) from None
    return Complex2.build(vertices, edges, faces)


def simplicial_complex(triangles: Iterable[Iterable[str]], extra_vertices: Iterable[str] = ()) -> Complex2:
    """Build a complex from vertex tuples; edges are inferred and directed tail < head."""
    edges: dict[frozenset, Edge] = {}
    faces = []
    vs = set(str(v) for v in extra_vertices)
    tris = [tuple(str(x) for x in t) for t in triangles]
    for t in tris:
        vs.update(t)
    for t in tris:
        for i in range(len(t)):
            a, b = t[i], t[(i + 1) % len(t)]
            k = frozenset((a, b))
            if k not in edges:
                u, w = sorted((a, b))
                edges[k] = Edge(f"{u}~{w}", u, w)
    width = len(str(len(tris)))
    for n, t in enumerate(tris):
        trail = []
        for i in range(len(t)):
            a, b = t[i], t[(i + 1) % len(t)]
            e = edges[frozenset((a, b))]
            trail.append(Traversal(e.id, e.tail == a))
        faces.append(Face(f"f{n:0{width}d}", tuple(trail)))
    return Complex2.build(vs, edges.values(), faces)


def complex_to_json(C: Complex2) -> dict[str, Any]:
    return {
        "vertices": list(C.vertices),
        "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in C.edges],
        "faces": [{"id": f.id, "trail": [{"edge": t.edge, "forward": t.forward} for t in f.trail]}
                  for f in C.faces],
    }


def dumps(C: Complex2) -> str:
    return json.dumps(complex_to_json(C), sort_keys=True, indent=1)


# link graphs -----------------------------------------------------------------

class LinkGraph(MultiGraph):
    """Link graph at a vertex.

    Nodes are edge-ends (edge id, "t"|"h"); links are corners (face id, i) where
    corner i joins the arrival end of traversal i to the departure end of
    traversal i+1.
    """

    __slots__ = ("vertex",)

    def __init__(self, vertex: str, nodes, links):
        super().__init__(nodes, links)
        self.vertex = vertex

    @staticmethod
    def node_edge(node) -> str:
        return node[0]

    @staticmethod
    def link_face(link) -> str:
        return link[0]


def _arrival(t: Traversal) -> str:
    return "h" if t.forward else "t"


def _departure(t: Traversal) -> str:
    return "t" if t.forward else "h"


def link_graph(C: Complex2, v: str) -> LinkGraph:
    if v not in C.edges_at_vertex:
        raise KeyError(f"unknown vertex {v}")
    nodes = []
    for eid in C.edges_at_vertex[v]:
        e = C.edge[eid]
        if e.tail == v:
            nodes.append((eid, "t"))
        if e.head == v:
            nodes.append((eid, "h"))
    links = {}
    for fid in C.faces_at_vertex[v]:
        f = C.face[fid]
        n = len(f.trail)
        for i, t in enumerate(f.trail):
            if C.traversal_end(t) != v:
                continue
            nxt = f.trail[(i + 1) % n]
            links[(fid, i)] = ((t.edge, _arrival(t)), (nxt.edge, _departure(nxt)))
    return LinkGraph(v, nodes, links)


def corner_nodes(C: Complex2, fid: str, i: int) -> tuple[tuple[str, str], tuple[str, str]]:
    f = C.face[fid]
    t, nxt = f.trail[i], f.trail[(i + 1) % len(f.trail)]
    return (t.edge, _arrival(t)), (nxt.edge, _departure(nxt))


# measures ------------------------------------------------------------------

@dataclass(frozen=True)
class Measure:
    S: int
    degree_parameter: int
    degree_sequences: dict

    def to_json(self) -> dict:
        return {"S": self.S, "degreeParameter": self.degree_parameter,
                "degreeSequences": {k: list(v) for k, v in self.degree_sequences.items()}}


def measures(C: Complex2) -> Measure:
    S = sum(len(f.trail) for f in C.faces)
    dp = sum(C.face_degree(e.id) - 2 for e in C.edges if C.face_degree(e.id) >= 3)
    seqs = {}
    for v in C.vertices:
        L = C.links[v]
        seqs[v] = tuple(sorted((L.degree(n) for n in L.nodes if L.degree(n) >= 3), reverse=True))
    return Measure(S, dp, seqs)


def degree_sequence_key(C: Complex2) -> tuple:
    """Multiset of abbreviated link degree sequences, largest first."""
    return tuple(sorted(measures(C).degree_sequences.values(), reverse=True))


def fresh_id(base: str, taken) -> str:
    k = 1
    while f"{base}.{k}" in taken:
        k += 1
    return f"{base}.{k}"


def fresh_ids(base: str, n: int, taken) -> list[str]:
    out = []
    used = set(taken)
    for _ in range(n):
        x = fresh_id(base, used)
        used.add(x)
        out.append(x)
    return out


def empty_complex() -> Complex2:
    return Complex2((), (), ())


def id_sorted(xs):
    return sorted_ids(xs)
