"""Stretching operations and the normalization pipeline.

All three stretchings take a simplicial complex to a simplicial complex; the
new cells get fresh ids and untouched cells keep theirs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import ClassVar

from .core import Complex2, Edge, Face, Traversal, fresh_id, measures
from .embeddings import projected_planar_rotations
from .graphs import (branches_at, classify_graph, cut_nodes, is_para_star, is_planar,
                     is_two_connected, parallel_structure, suppress_degree_two)
from .minors import ContractEdge, MinorError, Op, SplitVertex, cleanup_ops, contract_edge, register, replay
from .multigraph import MultiGraph, sorted_ids


class StretchError(ValueError):
    pass


# triangle-level rebuilding -----------------------------------------------------------

class _Tri:
    """Mutable simplicial view: edges by id with endpoints, faces as oriented vertex triples."""

    def __init__(self, C: Complex2):
        if not C.is_simplicial:
            raise StretchError("stretching needs a simplicial complex")
        self.vertices = set(C.vertices)
        self.edges = {e.id: (e.tail, e.head) for e in C.edges}
        self.faces = {f.id: C.face_vertices(f.id) for f in C.faces}

    def pair(self) -> dict:
        return {frozenset(uv): eid for eid, uv in self.edges.items()}

    def new_vertex(self, base: str) -> str:
        v = fresh_id(base, self.vertices)
        self.vertices.add(v)
        return v

    def new_edge(self, u: str, w: str) -> str:
        base = f"{min(u, w)}~{max(u, w)}"
        eid = base if base not in self.edges else fresh_id(base, self.edges)
        self.edges[eid] = (u, w)
        return eid

    def new_face(self, verts: tuple, base: str) -> str:
        fid = fresh_id(base, self.faces)
        self.faces[fid] = tuple(verts)
        return fid

    def build(self) -> Complex2:
        pm = self.pair()
        faces = []
        for fid, vs in self.faces.items():
            tr = []
            for i in range(len(vs)):
                a, b = vs[i], vs[(i + 1) % len(vs)]
                eid = pm.get(frozenset((a, b)))
                if eid is None:
                    raise StretchError(f"face {fid} has no edge between {a} and {b}")
                tr.append(Traversal(eid, self.edges[eid][0] == a))
            faces.append(Face(fid, tuple(tr)))
        C = Complex2.build(self.vertices, [Edge(e, u, w) for e, (u, w) in self.edges.items()], faces)
        if not C.is_simplicial:
            raise StretchError("stretching produced a non-simplicial complex")
        return C


def _insert_between(vs: tuple, p: str, q: str, m: str) -> tuple:
    """Insert m between the cyclically adjacent vertices p and q."""
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if {a, b} == {p, q}:
            return vs[:i + 1] + (m,) + vs[i + 1:]
    raise StretchError("vertices are not adjacent on the face")


def _split_square(sq: tuple, k: int) -> tuple[tuple, tuple]:
    """Split a 4-cycle along the chord from position k to position k+2."""
    r = sq[k:] + sq[:k]
    return (r[0], r[1], r[2]), (r[0], r[2], r[3])


def _other_end(C: Complex2, eid: str, v: str) -> str:
    e = C.edge[eid]
    return e.head if e.tail == v else e.tail


def _node(C: Complex2, eid: str, v: str) -> tuple:
    return (eid, "t") if C.edge[eid].tail == v else (eid, "h")


# stretching a local branch --------------------------------------------------------------

def branch_nodes(C: Complex2, v: str, cut_edge: str, member: str) -> set:
    """Nodes of the branch of L(v) at the cut node of cut_edge that contains the node of member."""
    L = C.links[v]
    c = _node(C, cut_edge, v)
    if not L.is_connected():
        raise StretchError(f"link at {v} is not connected")
    if c not in cut_nodes(L):
        raise StretchError(f"{cut_edge} is not a cut node of the link at {v}")
    m = _node(C, member, v)
    for comp in L.remove_nodes([c]).components():
        if m in comp:
            return set(comp)
    raise StretchError(f"{member} is not in a branch at {cut_edge}")


def stretch_branch(C: Complex2, v: str, cut_edge: str, member: str) -> Complex2:
    X = branch_nodes(C, v, cut_edge, member)
    L = C.links[v]
    c = _node(C, cut_edge, v)
    T = _Tri(C)
    vb = T.new_vertex(f"{v}.b")
    moved = {n[0] for n in X}
    # faces whose corner at v lies in the branch
    for lid, (p, q) in L.edges.items():
        if p not in X and q not in X:
            continue
        fid = lid[0]
        vs = T.faces[fid]
        if c in (p, q):
            z = q if p == c else p
            zf = _other_end(C, z[0], v)
            sq = _insert_between(vs, v, zf, vb)
            k = sq.index(v)
            f_a, f_b = _split_square(sq, k)
            # the piece through v[B] is new; the piece on e keeps the id
            if vb in f_a:
                T.faces[fid], new = f_b, f_a
            else:
                T.faces[fid], new = f_a, f_b
            T.new_face(new, fid)
        else:
            T.faces[fid] = tuple(vb if x == v else x for x in vs)
    for eid in moved:
        t, h = T.edges[eid]
        T.edges[eid] = (vb if t == v else t, vb if h == v else h)
    T.new_edge(v, vb)
    for lid, (p, q) in L.edges.items():
        if c in (p, q) and (p in X or q in X):
            z = q if p == c else p
            T.new_edge(v, _other_end(C, z[0], v))
    return T.build()


# stretching a local 2-separator -------------------------------------------------------------

def separator_components(L: MultiGraph, a, b) -> list[tuple]:
    return L.remove_nodes([a, b]).components()


def is_proper_separator(L: MultiGraph, a, b) -> bool:
    comps = separator_components(L, a, b)
    if len(comps) < 2:
        return False
    if len(comps) == 2:
        adjacent = any({x, y} == {a, b} for x, y in L.edges.values())
        for comp in comps:
            H = L.induced(comp)
            if _is_path_graph(H) and not adjacent:
                return False
    return True


def _is_path_graph(H: MultiGraph) -> bool:
    if not H.is_connected() or H.has_loops():
        return False
    if len(H.nodes) == 1:
        return not H.edges
    return len(H.edges) == len(H.nodes) - 1 and all(H.degree(n) <= 2 for n in H.nodes)


def stretch_2_separator(C: Complex2, v: str, a_edge: str, b_edge: str) -> Complex2:
    L = C.links[v]
    a, b = _node(C, a_edge, v), _node(C, b_edge, v)
    if not is_two_connected(L):
        raise StretchError(f"link at {v} is not 2-connected")
    comps = separator_components(L, a, b)
    if len(comps) < 2:
        raise StretchError(f"({a_edge}, {b_edge}) is not a 2-separator at {v}")
    wa, wb = _other_end(C, a_edge, v), _other_end(C, b_edge, v)
    T = _Tri(C)
    label = {}
    xs = []
    for comp in comps:
        x = T.new_vertex(f"{v}.x")
        xs.append(x)
        for n in comp:
            label[n] = x
    for lid, (p, q) in L.edges.items():
        if {p, q} <= {a, b}:
            continue
        x = label[p] if p in label else label[q]
        T.faces[lid[0]] = tuple(x if y == v else y for y in T.faces[lid[0]])
    for n, x in label.items():
        t, h = T.edges[n[0]]
        T.edges[n[0]] = (x if t == v else t, x if h == v else h)
    for x in xs:
        T.new_edge(v, x)
        T.new_edge(wa, x)
        T.new_edge(wb, x)
        T.new_face((v, wa, x), f"{v}.d")
        T.new_face((v, x, wb), f"{v}.d")
    return T.build()


# stretching an edge -------------------------------------------------------------------------

def adjacent_in_every_embedding(C: Complex2, v: str, eid: str, f1: str, f2: str) -> bool:
    L = C.links[v]
    n = _node(C, eid, v)
    rots = projected_planar_rotations(L, [n])
    if not rots:
        return False
    for r in rots:
        fs = [h[0][0] for h in r[n]]
        i, j = fs.index(f1), fs.index(f2)
        if (i - j) % len(fs) not in (1, len(fs) - 1):
            return False
    return True


def stretch_edge(C: Complex2, eid: str, f1: str, f2: str) -> Complex2:
    if eid not in C.edge:
        raise StretchError(f"unknown edge {eid}")
    fs = C.faces_at_edge[eid]
    if f1 == f2 or f1 not in fs or f2 not in fs:
        raise StretchError("f1 and f2 must be two distinct faces at the edge")
    if len(fs) < 3:
        raise StretchError("edge must have face-degree at least three")
    e = C.edge[eid]
    if not any(adjacent_in_every_embedding(C, x, eid, f1, f2) for x in (e.tail, e.head)):
        raise StretchError("faces are not adjacent in every planar rotator at an endvertex")
    v, w = e.tail, e.head
    T = _Tri(C)
    m = T.new_vertex(f"{eid}.m")
    T.new_edge(v, m)
    T.new_edge(m, w)
    for fid in fs:
        if fid in (f1, f2):
            continue
        sq = _insert_between(T.faces[fid], v, w, m)
        k = sq.index(m)
        piece1, piece2 = _split_square(sq, k)
        T.faces[fid] = piece1
        T.new_face(piece2, fid)
        T.new_edge(m, piece1[2])
    T.new_face((v, w, m), f"{eid}.g")
    return T.build()


# reversible contraction ------------------------------------------------------------------------

def is_reversible_by_para_stars(C: Complex2, eid: str) -> bool:
    e = C.edge[eid]
    if e.is_loop:
        return False
    for x, end in ((e.tail, "t"), (e.head, "h")):
        L = C.links[x]
        n = (eid, end)
        if not is_para_star(L, center=n):
            return False
        if L.degree(n) < max(L.degree(y) for y in L.nodes):
            return False
    return True


def contract_reversible(C: Complex2, eid: str) -> Complex2:
    if eid not in C.edge:
        raise StretchError(f"unknown edge {eid}")
    if not is_reversible_by_para_stars(C, eid):
        raise StretchError(f"endvertex links of {eid} are not para-stars with it of maximum degree")
    return contract_edge(C, eid)


# op records ------------------------------------------------------------------------------------

@register
@dataclass(frozen=True)
class StretchBranch(Op):
    vertex: str
    edge: str
    member: str
    name: ClassVar[str] = "stretch_branch"

    def apply(self, C):
        return stretch_branch(C, self.vertex, self.edge, self.member)


@register
@dataclass(frozen=True)
class Stretch2Sep(Op):
    vertex: str
    a: str
    b: str
    name: ClassVar[str] = "stretch_2_separator"

    def apply(self, C):
        return stretch_2_separator(C, self.vertex, self.a, self.b)


@register
@dataclass(frozen=True)
class StretchEdge(Op):
    edge: str
    f1: str
    f2: str
    name: ClassVar[str] = "stretch_edge"

    def apply(self, C):
        return stretch_edge(C, self.edge, self.f1, self.f2)


@register
@dataclass(frozen=True)
class ContractReversible(Op):
    edge: str
    name: ClassVar[str] = "contract_reversible"

    def apply(self, C):
        return contract_reversible(C, self.edge)


def applicable_stretch_ops(C: Complex2, limit_pairs: int = 200) -> list[Op]:
    """Every applicable stretching on a small simplicial complex."""
    ops: list[Op] = []
    simp = C.is_simplicial
    for v in C.vertices:
        L = C.links[v]
        if len(L.components()) > 1:
            ops.append(SplitVertex(v))
            continue
        if not simp or not L.edges:
            continue
        if is_two_connected(L):
            ns = list(L.nodes)
            for i in range(len(ns)):
                for j in range(i + 1, len(ns)):
                    if len(separator_components(L, ns[i], ns[j])) >= 2:
                        ops.append(Stretch2Sep(v, ns[i][0], ns[j][0]))
        else:
            for c in sorted_ids(cut_nodes(L)):
                for comp in L.remove_nodes([c]).components():
                    ops.append(StretchBranch(v, c[0], min(n[0] for n in comp)))
    if simp:
        for e in C.edges:
            fs = C.faces_at_edge[e.id]
            if len(fs) < 3:
                continue
            for i in range(len(fs)):
                for j in range(i + 1, len(fs)):
                    if any(is_planar(C.links[x]) and adjacent_in_every_embedding(C, x, e.id, fs[i], fs[j])
                           for x in (e.tail, e.head)):
                        ops.append(StretchEdge(e.id, fs[i], fs[j]))
    for e in C.edges:
        if not e.is_loop and is_reversible_by_para_stars(C, e.id):
            ops.append(ContractReversible(e.id))
    return ops


# normalization ----------------------------------------------------------------------------------

ALLOWED = ("Subdiv3Connected", "ParallelGraph", "FreeGraph")


def star_center(G: MultiGraph):
    """Cut node at which every branch is a parallel graph, for connected G that is not 2-connected."""
    if not G.is_connected() or G.has_loops() or is_two_connected(G):
        return None
    best = None
    for c in sorted_ids(cut_nodes(G)):
        parts = branches_at(G, c)
        if all(_parallel_at(B, c) for B in parts):
            if best is None or G.degree(c) > G.degree(best):
                best = c
    return best


def _parallel_at(B: MultiGraph, c) -> bool:
    ps = parallel_structure(B)
    if ps is None:
        return False
    return not ps[0] or c in ps[0]


def link_allowed(G: MultiGraph) -> bool:
    return classify_graph(G).tag in ALLOWED


def _branch_degree_ok(G: MultiGraph) -> bool:
    """Subdivision of a 3-connected graph, or parallel graph with branch nodes of degree >= 3."""
    cl = classify_graph(G)
    if cl.tag == "Subdiv3Connected":
        return True
    if cl.tag == "ParallelGraph" and cl.branch:
        return G.degree(cl.branch[0]) >= 3
    return False


def edge_stretched_out(C: Complex2, eid: str) -> bool:
    e = C.edge[eid]
    return not (_branch_degree_ok(C.links[e.tail]) and _branch_degree_ok(C.links[e.head]))


def is_stretched_out(C: Complex2) -> bool:
    return all(edge_stretched_out(C, e.id) for e in C.edges if C.face_degree(e.id) == 2)


def is_locally_almost_3_connected(C: Complex2) -> bool:
    return all(link_allowed(C.links[v]) for v in C.vertices)


@dataclass
class Normalization:
    complex: Complex2
    script: list
    complete: bool
    nonplanar_vertex: str | None = None
    reason: str = ""
    counters: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from .minors import script_to_json

        d = {"complete": self.complete, "script": script_to_json(self.script), "counters": self.counters}
        if self.nonplanar_vertex is not None:
            d["nonPlanarLink"] = self.nonplanar_vertex
        if self.reason:
            d["reason"] = self.reason
        return d


class _Pipe:
    def __init__(self, C: Complex2, budget: int):
        self.C = C
        self.ops: list[Op] = []
        self.budget = budget
        self.counters = {"ops": 0, "linkChecks": 0}

    def run(self, op: Op) -> None:
        if self.budget <= 0:
            raise StretchError("step budget exhausted")
        self.budget -= 1
        self.C = op.apply(self.C)
        self.ops.append(op)
        self.counters["ops"] += 1

    def nonplanar(self):
        for v in self.C.vertices:
            self.counters["linkChecks"] += 1
            if not is_planar(self.C.links[v]):
                return v
        return None

    def split_all(self) -> None:
        while True:
            vs = [v for v in self.C.vertices if len(self.C.links[v].components()) != 1]
            if not vs:
                return
            for v in sorted(vs):
                self.run(SplitVertex(v))
            for op in cleanup_ops(self.C):
                self.run(op)


def _cut_count(G: MultiGraph) -> int:
    return len(cut_nodes(G)) if G.is_connected() else 0


def _stretch_branches(P: _Pipe) -> None:
    """Make every link 2-connected or a star of parallel graphs."""
    while True:
        P.split_all()
        target = None
        for v in P.C.vertices:
            L = P.C.links[v]
            if not L.edges or is_two_connected(L) or not cut_nodes(L) or star_center(L) is not None:
                continue
            target = v
            break
        if target is None:
            return
        L = P.C.links[target]
        e1, comp = _non_parallel_branch(L)
        P.run(StretchBranch(target, e1[0], min(n[0] for n in comp)))


def _non_parallel_branch(L: MultiGraph):
    """First cut node with a branch that is not parallel at it; stretching that branch makes it parallel."""
    for c in sorted_ids(cut_nodes(L)):
        for comp in L.remove_nodes([c]).components():
            if not _parallel_at(L.induced(set(comp) | {c}), c):
                return c, comp
    raise StretchError("link is already a star of parallel graphs")


def _cutvertex_degree(C: Complex2) -> int:
    best = 0
    for v in C.vertices:
        L = C.links[v]
        if L.is_connected():
            for c in cut_nodes(L):
                best = max(best, L.degree(c))
    return best


def _proper_separator_with(L: MultiGraph, n):
    for m in sorted_ids(L.nodes):
        if m != n and is_proper_separator(L, n, m):
            return m
    return None


def _be_nice(P: _Pipe, a: int) -> bool:
    """Case analysis on 2-connected non-parallel links with a node of degree >= a; False on a non-planar link."""
    while True:
        if P.nonplanar() is not None:
            return False
        target = None
        for v in P.C.vertices:
            L = P.C.links[v]
            if not is_two_connected(L) or parallel_structure(L) is not None:
                continue
            big = [n for n in sorted_ids(L.nodes) if L.degree(n) >= a]
            if big:
                target = (v, big[0])
                break
        if target is None:
            return True
        v, n = target
        L = P.C.links[v]
        x = _proper_separator_with(L, n)
        if x is not None:
            P.run(Stretch2Sep(v, n[0], x[0]))
            continue
        rots = projected_planar_rotations(L, [n])
        fs = [h[0][0] for h in rots[0][n]]
        P.run(StretchEdge(n[0], fs[0], fs[1]))


def _path_from(C: Complex2, v: str, e: str) -> list | None:
    """Edges of a path from v starting with e through parallel-graph links to a star-of-parallel link."""
    path = [e]
    seen = {v}
    cur, edge = v, e
    while True:
        nxt = _other_end(C, edge, cur)
        if nxt in seen:
            return None
        seen.add(nxt)
        L = C.links[nxt]
        if star_center(L) is not None:
            return path
        ps = parallel_structure(L)
        if ps is None or not ps[0]:
            return None
        a, b = ps[0]
        here = _node(C, edge, nxt)
        if here not in (a, b):
            return None
        other = b if here == a else a
        path.append(other[0])
        cur, edge = nxt, other[0]


def _reduce_cutvertex_degree(P: _Pipe, a: int) -> bool:
    """Contract a para-path leaving a star whose cut node has degree a; False if none is contractible."""
    C = P.C
    for v in C.vertices:
        L = C.links[v]
        c = star_center(L)
        if c is None or L.degree(c) != a:
            continue
        path = _path_from(C, v, c[0])
        if path is None:
            continue
        verts = [v]
        cur = v
        for eid in path:
            cur = _other_end(C, eid, cur)
            verts.append(cur)
        for i, x in enumerate(verts[1:-1], start=1):
            ps = parallel_structure(P.C.links[x])
            if ps is not None and any(len(pp) > 2 for pp in ps[1]):
                P.run(Stretch2Sep(x, path[i - 1], path[i]))
        for eid in path:
            if eid in P.C.edge and is_reversible_by_para_stars(P.C, eid):
                if not contract_edge(P.C, eid).is_simplicial:
                    continue
                P.run(ContractReversible(eid))
                return True
    return False


def _stretch_local_2_separators(P: _Pipe) -> bool:
    while True:
        target = None
        for v in P.C.vertices:
            L = P.C.links[v]
            if link_allowed(L) or not is_two_connected(L):
                continue
            ns = sorted_ids(L.nodes)
            for i in range(len(ns)):
                for j in range(i + 1, len(ns)):
                    if is_proper_separator(L, ns[i], ns[j]):
                        target = (v, ns[i], ns[j])
                        break
                if target:
                    break
            if target:
                break
        if target is None:
            return True
        v, a, b = target
        P.run(Stretch2Sep(v, a[0], b[0]))


def _stretch_out(P: _Pipe) -> None:
    while True:
        bad = [e.id for e in P.C.edges if P.C.face_degree(e.id) == 2 and not edge_stretched_out(P.C, e.id)]
        if not bad:
            return
        eid = bad[0]
        e = P.C.edge[eid]
        v = e.tail
        L = P.C.links[v]
        cl = classify_graph(L)
        n = _node(P.C, eid, v)
        if cl.tag == "ParallelGraph":
            x1, x2 = cl.branch
        else:
            K, chains = suppress_degree_two(L)
            x1 = x2 = None
            for kid, halves in chains.items():
                inner = {L.endpoint(h) for h in halves} | {L.neighbor(h) for h in halves}
                if n in inner and n not in K.nodes:
                    x1, x2 = K.edges[kid]
                    break
            if x1 is None:
                raise StretchError(f"edge {eid} is not on a subdivided kernel edge")
        P.run(Stretch2Sep(v, x1[0], x2[0]))


def normalize(C: Complex2, budget: int | None = None) -> Normalization:
    """Stretch to a locally almost 3-connected, stretched-out complex, or stop at a non-planar link."""
    if not C.is_simplicial:
        raise StretchError("normalize needs a simplicial complex")
    budget = budget if budget is not None else 10 * (len(C.edges) + len(C.faces)) + 50
    P = _Pipe(C, budget)
    try:
        v = P.nonplanar()
        if v is not None:
            return Normalization(P.C, P.ops, False, v, counters=P.counters)
        while True:
            _stretch_branches(P)
            a = _cutvertex_degree(P.C)
            if a <= 3:
                break
            if not _be_nice(P, a):
                v = P.nonplanar()
                return Normalization(P.C, P.ops, False, v, counters=P.counters)
            _stretch_branches(P)
            if _cutvertex_degree(P.C) < a:
                continue
            if not _reduce_cutvertex_degree(P, a):
                return Normalization(P.C, P.ops, False, reason="no reversible contraction keeps the complex simplicial",
                                     counters=P.counters)
            P.split_all()
        v = P.nonplanar()
        if v is not None:
            return Normalization(P.C, P.ops, False, v, counters=P.counters)
        _stretch_local_2_separators(P)
        _stretch_out(P)
        v = P.nonplanar()
        if v is not None:
            return Normalization(P.C, P.ops, False, v, counters=P.counters)
    except (StretchError, MinorError, ValueError) as exc:
        return Normalization(P.C, P.ops, False, reason=str(exc), counters=P.counters)
    ok = is_locally_almost_3_connected(P.C) and is_stretched_out(P.C)
    reason = "" if ok else "postcondition failed"
    return Normalization(P.C, P.ops, ok, reason=reason, counters=P.counters)


def measure_trace(C: Complex2, script: list) -> list:
    """Degree parameter after each step."""
    out = [measures(C).degree_parameter]
    cur = C
    for op in script:
        cur = op.apply(cur)
        out.append(measures(cur).degree_parameter)
    return out
