"""Para-cycles, mega faces and helicopter graphs."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .core import Complex2
from .embeddings import projected_planar_rotations
from .graphs import GraphError, is_planar, parallel_structure
from .multigraph import MultiGraph, canonical_cycle


# para-cycles -------------------------------------------------------------------

@dataclass(frozen=True)
class ParaVertex:
    vertex: str
    nodes: tuple  # the two branch nodes (edge id, end)
    pairing: dict = field(compare=False)  # face at nodes[0] -> face at nodes[1] along a path


def para_vertex(C: Complex2, v: str) -> ParaVertex | None:
    """Branch data if L(v) is a parallel graph with two branch nodes of degree >= 3."""
    L = C.links[v]
    ps = parallel_structure(L)
    if ps is None or not ps[0]:
        return None
    a, b = ps[0]
    if a[0] == b[0] or L.degree(a) < 3:
        return None
    pairing = {}
    for path in ps[1]:
        lids = {h[0] for h in path}
        fa = [lid[0] for lid in lids if a in L.edges[lid]]
        fb = [lid[0] for lid in lids if b in L.edges[lid]]
        if len(fa) != 1 or len(fb) != 1:
            return None
        pairing[fa[0]] = fb[0]
    return ParaVertex(v, (a, b), pairing)


@dataclass(frozen=True)
class ParaCycle:
    vertices: tuple  # x_0 .. x_{n-1}
    edges: tuple  # e_i joins x_i and x_{i+1}


def para_cycles(C: Complex2) -> list[ParaCycle]:
    """Cycles whose vertices have parallel-graph links with branch nodes on the cycle edges."""
    pv = {v: para_vertex(C, v) for v in C.vertices}
    pv = {v: p for v, p in pv.items() if p is not None}
    cand = {}
    for v, p in pv.items():
        for eid, _ in p.nodes:
            e = C.edge[eid]
            u = e.head if e.tail == v else e.tail
            if u in pv and any(n[0] == eid for n in pv[u].nodes):
                cand.setdefault(v, set()).add(eid)
    out = []
    seen: set = set()
    for s in sorted(cand):
        if s in seen or len(cand[s]) != 2:
            continue
        verts, edges = [s], []
        cur, prev_e = s, None
        ok = True
        while True:
            nxt_e = sorted(x for x in cand.get(cur, ()) if x != prev_e)
            if len(cand.get(cur, ())) != 2 or not nxt_e:
                ok = False
                break
            eid = nxt_e[0]
            e = C.edge[eid]
            nxt = e.head if e.tail == cur else e.tail
            edges.append(eid)
            if nxt == s:
                break
            if nxt in verts:
                ok = False
                break
            verts.append(nxt)
            cur, prev_e = nxt, eid
        seen.update(verts)
        if ok:
            out.append(ParaCycle(tuple(verts), tuple(edges)))
    return out


def _node_at(C: Complex2, eid: str, v: str) -> tuple:
    return (eid, "t") if C.edge[eid].tail == v else (eid, "h")


def _sigma_from_node(order: tuple, node: tuple) -> tuple:
    return tuple(order) if node[1] == "h" else tuple(reversed(order))


def _across(p: ParaVertex, node: tuple, rot: tuple) -> tuple:
    """Rotator at the other branch node of a planar embedding, given the rotator at `node`."""
    if node == p.nodes[0]:
        m = p.pairing
    else:
        m = {b: a for a, b in p.pairing.items()}
    return tuple(reversed([m[f] for f in rot]))


def propagate(C: Complex2, o: ParaCycle, sigma0: tuple) -> tuple:
    """Push sigma(e_0) once around o through the forced link embeddings; returns the new sigma(e_0)."""
    pv = {v: para_vertex(C, v) for v in o.vertices}
    n = len(o.vertices)
    sig = tuple(sigma0)
    for i in range(n):
        x = o.vertices[(i + 1) % n]
        e_in, e_out = o.edges[i], o.edges[(i + 1) % n]
        a = _node_at(C, e_in, x)
        b = _node_at(C, e_out, x)
        rot_a = _sigma_from_node(sig, a)
        rot_b = _across(pv[x], a, rot_a)
        sig = _sigma_from_node(rot_b, b)
    return sig


def para_cycle_planar(C: Complex2, o: ParaCycle) -> tuple[bool, tuple | None]:
    """Decide planarity of a para-cycle; returns (planar, sigma(e_0) witnessing it)."""
    e0 = o.edges[0]
    faces = tuple(sorted(C.faces_at_edge[e0]))
    first, rest = faces[0], faces[1:]
    for perm in permutations(rest):
        s = (first,) + perm
        if canonical_cycle(propagate(C, o, s)) == canonical_cycle(s):
            return True, s
    return False, None


def para_cycle_sigma(C: Complex2, o: ParaCycle, sigma0: tuple) -> dict:
    """Rotators on every edge of o induced by sigma(e_0)."""
    pv = {v: para_vertex(C, v) for v in o.vertices}
    n = len(o.vertices)
    out = {o.edges[0]: tuple(sigma0)}
    sig = tuple(sigma0)
    for i in range(n - 1):
        x = o.vertices[i + 1]
        a = _node_at(C, o.edges[i], x)
        b = _node_at(C, o.edges[i + 1], x)
        sig = _sigma_from_node(_across(pv[x], a, _sigma_from_node(sig, a)), b)
        out[o.edges[i + 1]] = sig
    return out


# mega faces ---------------------------------------------------------------------

@dataclass(frozen=True)
class MegaFace:
    faces: tuple
    winding: int


def is_chordless(C: Complex2, o: ParaCycle) -> bool:
    vs = set(o.vertices)
    on = set(o.edges)
    return not any(e.id not in on and e.tail in vs and e.head in vs for e in C.edges)


def mega_faces(C: Complex2, o: ParaCycle) -> list[MegaFace]:
    """Faces meeting o, grouped through shared edges off o that have an endvertex on o."""
    vs = set(o.vertices)
    on = set(o.edges)
    faces = [f.id for f in C.faces if vs & set(C.face_vertices(f.id))]
    fset = set(faces)
    parent = {f: f for f in faces}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in C.edges:
        if e.id in on or not ({e.tail, e.head} & vs):
            continue
        fs = [g for g in C.faces_at_edge[e.id] if g in fset]
        for g in fs[1:]:
            parent[find(g)] = find(fs[0])
    groups: dict = {}
    for f in faces:
        groups.setdefault(find(f), []).append(f)
    e0 = o.edges[0]
    out = []
    for fs in groups.values():
        w = sum(1 for f in fs if e0 in C.face[f].edge_ids)
        out.append(MegaFace(tuple(sorted(fs)), w))
    out.sort(key=lambda m: m.faces)
    return out


def windings_at(C: Complex2, o: ParaCycle, m: MegaFace) -> list[int]:
    return [sum(1 for f in m.faces if e in C.face[f].edge_ids) for e in o.edges]


# helicopter graphs --------------------------------------------------------------

class HelicopterError(ValueError):
    pass


@dataclass(frozen=True)
class HelicopterGraph:
    graph: MultiGraph
    v: object
    w: object
    pairs: tuple  # ((a_i, b_i), ...), a_i at v, b_i at w


def helicopter_planar(H: HelicopterGraph) -> bool:
    """Some planar rotation has the rotator at v, restricted to the a_i, reverse to the one at w on the b_i."""
    G = H.graph
    if not is_planar(G):
        raise HelicopterError("graph is not planar")
    half_v, half_w = {}, {}
    for h in G.halves(H.v):
        half_v.setdefault(h[0], h)
    for h in G.halves(H.w):
        half_w.setdefault(h[0], h)
    for a, b in H.pairs:
        if a not in half_v or b not in half_w:
            raise HelicopterError("pair edges are not incident with the marked vertices")
    # an edge joining v and w has one half at each; use the half at the marked vertex
    if H.v == H.w:
        raise HelicopterError("marked vertices must differ")
    idx_a = {half_v[a]: i for i, (a, _) in enumerate(H.pairs)}
    idx_b = {half_w[b]: i for i, (_, b) in enumerate(H.pairs)}
    for proj in projected_planar_rotations(G, [H.v, H.w]):
        ra = [idx_a[h] for h in proj[H.v] if h in idx_a]
        rb = [idx_b[h] for h in proj[H.w] if h in idx_b]
        if canonical_cycle(ra) == canonical_cycle(tuple(reversed(rb))):
            return True
    return False


def loop_helicopter(C: Complex2, eid: str) -> HelicopterGraph:
    """Helicopter graph of the link at the vertex of a loop edge; pairs are its faces."""
    e = C.edge[eid]
    if not e.is_loop:
        raise GraphError(f"edge {eid} is not a loop")
    L = C.links[e.tail]
    v, w = (eid, "t"), (eid, "h")
    at = {v: {}, w: {}}
    for lid, (a, b) in L.edges.items():
        for n in (a, b):
            if n in at:
                at[n][lid[0]] = lid
    pairs = tuple((at[v][f], at[w][f]) for f in sorted(C.faces_at_edge[eid]))
    return HelicopterGraph(L, v, w, pairs)


def helicopter_oracle(H: HelicopterGraph) -> bool:
    """Brute force over all rotations of the graph (tiny inputs only)."""
    from .graphs import GraphRotation, trace_faces

    G = H.graph
    nodes = list(G.nodes)
    choices = []
    for n in nodes:
        hs = tuple(G.halves(n))
        if len(hs) <= 2:
            choices.append([hs])
        else:
            choices.append([(hs[0],) + p for p in permutations(hs[1:])])
    half_v = {h[0]: h for h in G.halves(H.v)}
    half_w = {h[0]: h for h in G.halves(H.w)}
    ia = {half_v[a]: i for i, (a, _) in enumerate(H.pairs)}
    ib = {half_w[b]: i for i, (_, b) in enumerate(H.pairs)}

    def rec(i, rot):
        if i == len(nodes):
            ra = [ia[h] for h in rot[H.v] if h in ia]
            rb = [ib[h] for h in rot[H.w] if h in ib]
            if canonical_cycle(ra) != canonical_cycle(tuple(reversed(rb))):
                return False
            return trace_faces(G, GraphRotation(rot)).is_planar
        for c in choices[i]:
            rot[nodes[i]] = c
            if rec(i + 1, rot):
                return True
        return False

    return rec(0, {})
