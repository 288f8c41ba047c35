"""Graph rotations, face tracing, planarity, Kuratowski witnesses, classification, vertex sums."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Mapping

import networkx as nx

from .multigraph import MultiGraph, canonical_cycle, sort_key, sorted_ids


class GraphError(ValueError):
    pass


class GraphRotation:
    """Per-node cyclic order of incident half-edges."""

    __slots__ = ("rot", "_succ")

    def __init__(self, rot: Mapping[Any, Iterable]):
        self.rot = {n: tuple(r) for n, r in rot.items()}
        self._succ = None

    def __getitem__(self, n):
        return self.rot[n]

    def __eq__(self, other) -> bool:
        return isinstance(other, GraphRotation) and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def __repr__(self) -> str:
        return f"GraphRotation({self.rot!r})"

    def canonical(self) -> tuple:
        return tuple((n, canonical_cycle(self.rot[n])) for n in sorted_ids(self.rot))

    def succ(self, h):
        if self._succ is None:
            s = {}
            for r in self.rot.values():
                for i, x in enumerate(r):
                    s[x] = r[(i + 1) % len(r)]
            self._succ = s
        return self._succ[h]

    def reversed(self) -> "GraphRotation":
        return GraphRotation({n: tuple(reversed(r)) for n, r in self.rot.items()})


@dataclass
class TracedSurface:
    faces: list
    euler_char: int
    components: list  # (nodes, euler char)
    orientable: bool = True

    @property
    def genera(self) -> list[int]:
        return [(2 - chi) // 2 for _, chi in self.components]

    @property
    def genus(self) -> int:
        return sum(self.genera)

    @property
    def is_planar(self) -> bool:
        return all(chi == 2 for _, chi in self.components)


def check_rotation(G: MultiGraph, R: GraphRotation) -> None:
    for n in G.nodes:
        r = R.rot.get(n, ())
        hs = G.halves(n)
        if len(r) != len(hs) or set(r) != set(hs):
            raise GraphError(f"rotator at {n!r} does not match its incident half-edges")


def trace_faces(G: MultiGraph, R: GraphRotation) -> TracedSurface:
    """Trace the faces of the embedding given by R; darts are half-edges leaving their node."""
    check_rotation(G, R)
    succ = {}
    for r in R.rot.values():
        k = len(r)
        for i, x in enumerate(r):
            succ[x] = r[(i + 1) % k]
    seen = set()
    faces = []
    for n in G.nodes:
        for h0 in G.halves(n):
            if h0 in seen:
                continue
            walk = []
            h = h0
            while h not in seen:
                seen.add(h)
                walk.append(h)
                h = succ[(h[0], 1 - h[1])]
            faces.append(tuple(walk))
    comp_of = {}
    comps = G.components()
    for i, c in enumerate(comps):
        for x in c:
            comp_of[x] = i
    nf = [0] * len(comps)
    for w in faces:
        nf[comp_of[G.endpoint(w[0])]] += 1
    ne = [0] * len(comps)
    for u, _ in G.edges.values():
        ne[comp_of[u]] += 1
    out = []
    for i, c in enumerate(comps):
        f = nf[i] if ne[i] else 1
        out.append((c, len(c) - ne[i] + f))
    return TracedSurface(faces, sum(chi for _, chi in out), out)


def is_planar_rotation(G: MultiGraph, R: GraphRotation) -> bool:
    return trace_faces(G, R).is_planar


# planarity --------------------------------------------------------------------

def _subdivided_nx(G: MultiGraph) -> nx.Graph:
    g = nx.Graph()
    for n in G.nodes:
        g.add_node(("n", n))
    for e, (u, v) in G.edges.items():
        if u == v:
            g.add_edge(("n", u), ("a", e))
            g.add_edge(("a", e), ("b", e))
            g.add_edge(("b", e), ("n", u))
        else:
            g.add_edge(("n", u), ("a", e))
            g.add_edge(("a", e), ("n", v))
    return g


def planar_rotation_of_graph(G: MultiGraph) -> GraphRotation | None:
    """A planar rotation of G or None when G is non-planar."""
    ok, emb = nx.check_planarity(_subdivided_nx(G))
    if not ok:
        return None
    rot = {}
    for n in G.nodes:
        r = []
        for m in emb.neighbors_cw_order(("n", n)):
            tag, e = m
            u, v = G.edges[e]
            if u != v:
                r.append((e, 0 if u == n else 1))
            else:
                r.append((e, 0 if tag == "a" else 1))
        rot[n] = tuple(r)
    R = GraphRotation(rot)
    if not trace_faces(G, R).is_planar:
        raise AssertionError("planarity embedding failed its trace self-check")
    return R


def is_planar(G: MultiGraph) -> bool:
    return nx.check_planarity(_subdivided_nx(G))[0]


def _simple_planar(edges: Iterable[tuple]) -> bool:
    g = nx.Graph()
    g.add_edges_from(edges)
    return nx.check_planarity(g)[0]


@dataclass(frozen=True)
class KuratowskiWitness:
    kind: str  # "K5" | "K33"
    edges: tuple
    branch: tuple
    sides: tuple = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, "edges": [repr(e) if not isinstance(e, str) else e for e in self.edges],
                "branch": [repr(b) if not isinstance(b, str) else b for b in self.branch]}


def _greedy_witness(G: MultiGraph, cur: dict, reverse: bool) -> dict:
    cur = dict(cur)
    for e in sorted(cur, key=sort_key, reverse=reverse):
        uv = cur.pop(e)
        if _simple_planar(cur.values()):
            cur[e] = uv
    return cur


def kuratowski_witness(G: MultiGraph) -> KuratowskiWitness:
    """Greedy edge deletion while non-planarity persists.

    Both id orders are tried and a K5 subdivision is preferred; ties go to the
    descending order.
    """
    keep = {}
    for e in sorted_ids(G.edges):
        u, v = G.edges[e]
        if u == v:
            continue
        k = frozenset((u, v))
        if k not in keep:
            keep[k] = e
    cur = {e: G.edges[e] for e in keep.values()}
    if _simple_planar(cur.values()):
        raise GraphError("kuratowski_witness called on a planar graph")
    found = []
    for rev in (True, False):
        sub = _greedy_witness(G, cur, rev)
        w = subdivision_type(G.subgraph_edges(sub))
        if w is None:
            raise AssertionError("greedy Kuratowski extraction produced an unexpected graph")
        found.append((sub, w))
    sub, (kind, branch, sides) = next((x for x in found if x[1][0] == "K5"), found[0])
    return KuratowskiWitness(kind, tuple(sorted_ids(sub)), branch, sides)


def subdivision_type(H: MultiGraph):
    """Return (kind, branch nodes, sides) if H is a subdivision of K5 or K3,3, else None."""
    if H.has_loops() or not H.edges:
        return None
    if any(H.degree(n) == 0 for n in H.nodes):
        return None
    K, _ = suppress_degree_two(H)
    if any(K.degree(n) == 2 for n in K.nodes) or not K.is_simple() or not K.is_connected():
        return None
    degs = sorted(K.degree(n) for n in K.nodes)
    if degs == [4] * 5 and len(K.edges) == 10:
        return "K5", tuple(sorted_ids(K.nodes)), ()
    if degs == [3] * 6 and len(K.edges) == 9:
        a = K.nodes[0]
        side_b = K.neighbors(a)
        side_a = set(K.nodes) - side_b
        if len(side_a) != 3:
            return None
        for u, v in K.edges.values():
            if (u in side_a) == (v in side_a):
                return None
        return "K33", tuple(sorted_ids(K.nodes)), (tuple(sorted_ids(side_a)), tuple(sorted_ids(side_b)))
    return None


# structure ----------------------------------------------------------------------

def suppress_degree_two(G: MultiGraph):
    """Suppress degree-2 nodes.

    Returns (kernel, chains) where chains maps a kernel edge id to the list of
    half-edges walked from its first endpoint to its second. Components that
    are cycles keep their smallest node as a kernel node carrying a loop.
    """
    branch = {n for n in G.nodes if G.degree(n) != 2}
    for comp in G.components():
        if not any(n in branch for n in comp):
            branch.add(comp[0])
    used = set()
    chains = {}
    kedges = {}
    for s in sorted_ids(branch):
        for h in G.halves(s):
            if h[0] in used:
                continue
            path = [h]
            used.add(h[0])
            x = G.neighbor(h)
            back = (h[0], 1 - h[1])
            while x not in branch:
                a, b = G.halves(x)
                nh = b if a == back else a
                used.add(nh[0])
                path.append(nh)
                back = (nh[0], 1 - nh[1])
                x = G.neighbor(nh)
            kid = h[0]
            kedges[kid] = (s, x)
            chains[kid] = path
    return MultiGraph(branch, kedges), chains


def blocks(G: MultiGraph):
    """Blocks (edge-id sets) and cut nodes of a loopless multigraph."""
    index = {}
    low = {}
    out_blocks = []
    cuts = set()
    counter = 0
    for root in G.nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        children = 0
        stack = [(root, None, iter(G.halves(root)))]
        estack = []
        while stack:
            x, pe, it = stack[-1]
            adv = False
            for h in it:
                if h[0] == pe:
                    continue
                y = G.neighbor(h)
                if y == x:
                    continue
                if y not in index:
                    index[y] = low[y] = counter
                    counter += 1
                    estack.append(h[0])
                    stack.append((y, h[0], iter(G.halves(y))))
                    if x == root:
                        children += 1
                    adv = True
                    break
                elif index[y] < index[x]:
                    estack.append(h[0])
                    low[x] = min(low[x], index[y])
            if adv:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[x])
                if low[x] >= index[p]:
                    blk = set()
                    while True:
                        e = estack.pop()
                        blk.add(e)
                        if e == pe:
                            break
                    out_blocks.append(frozenset(blk))
                    if p != root:
                        cuts.add(p)
        if children >= 2:
            cuts.add(root)
    return out_blocks, cuts


def cut_nodes(G: MultiGraph) -> set:
    return blocks(G)[1]


def is_two_connected(G: MultiGraph) -> bool:
    """Connected, loopless, at least two edges and no cut node (two-node bonds count)."""
    if len(G.nodes) < 2 or G.has_loops() or len(G.edges) < 2:
        return False
    if any(G.degree(n) == 0 for n in G.nodes) or not G.is_connected():
        return False
    bl, cuts = blocks(G)
    return not cuts and len(bl) == 1


def is_three_connected(K: MultiGraph) -> bool:
    if len(K.nodes) < 4 or not K.is_simple() or not K.is_connected():
        return False
    for x in K.nodes:
        H = K.remove_nodes([x])
        if not H.is_connected() or cut_nodes(H):
            return False
    return True


def parallel_structure(G: MultiGraph):
    """If G is a parallel graph return (branch pair, list of paths as half-edge lists), else None.

    A path counts with one path; a cycle is reported with branch pair () and its one loop chain.
    """
    if not G.nodes or not G.is_connected() or G.has_loops() and len(G.nodes) > 1:
        return None
    K, chains = suppress_degree_two(G)
    if len(K.nodes) == 1 and len(K.edges) == 1 and all(G.degree(n) == 2 for n in G.nodes):
        return (), list(chains.values())
    if len(K.nodes) != 2 or K.has_loops() or not K.edges:
        return None
    a, b = K.nodes
    paths = []
    for kid, (u, v) in K.edges.items():
        path = chains[kid]
        if u != a:
            path = [(e, 1 - end) for e, end in reversed(path)]
        paths.append(path)
    return (a, b), paths


@dataclass(frozen=True)
class GraphClass:
    tag: str
    branch: tuple = ()
    cut: Any = None
    kernel: MultiGraph | None = field(default=None, compare=False)
    parts: tuple = ()


def is_free_graph(G: MultiGraph) -> bool:
    if not G.nodes or not G.is_connected():
        return False
    K, _ = suppress_degree_two(G)
    degs = sorted(K.degree(n) for n in K.nodes)
    if degs in ([0], [1, 1]):
        return True
    if degs == [1, 1, 1, 3] and K.is_simple():
        return True
    if degs == [1, 3] and len(K.edges) == 2 and K.has_loops():
        return True
    return False


def branches_at(G: MultiGraph, c) -> list[MultiGraph]:
    """Subgraphs induced by c plus each component of G - c."""
    rest = G.remove_nodes([c])
    out = []
    for comp in rest.components():
        out.append(G.induced(set(comp) | {c}))
    return out


def _is_parallel_branch(B: MultiGraph, c) -> bool:
    """B is a parallel graph with c as a branch node; a cycle through c counts."""
    ps = parallel_structure(B)
    if ps is None:
        return False
    return not ps[0] or c in ps[0]


def classify_graph(G: MultiGraph) -> GraphClass:
    if not G.nodes:
        return GraphClass("Other")
    connected = G.is_connected()
    if connected and not G.has_loops():
        K, _ = suppress_degree_two(G)
        if is_three_connected(K):
            return GraphClass("Subdiv3Connected", tuple(K.nodes), kernel=K)
        ps = parallel_structure(G)
        if ps is not None and (not ps[0] or len(ps[1]) >= 2):
            return GraphClass("ParallelGraph", ps[0], kernel=K)
    if connected and is_free_graph(G):
        K, _ = suppress_degree_two(G)
        return GraphClass("FreeGraph", tuple(n for n in K.nodes if K.degree(n) != 2), kernel=K)
    if connected and not G.has_loops():
        for c in sorted_ids(cut_nodes(G)):
            parts = branches_at(G, c)
            if len(parts) >= 2 and all(_is_parallel_branch(B, c) for B in parts):
                return GraphClass("StarOfParallel", (c,), cut=c, parts=tuple(parts))
        if is_para_star(G):
            return GraphClass("ParaStar")
    return GraphClass("Other")


def is_parallel_graph(G: MultiGraph, allow_path: bool = False) -> bool:
    ps = parallel_structure(G)
    if ps is None:
        return False
    return allow_path or not ps[0] or len(ps[1]) >= 2


def is_para_star(G: MultiGraph, center=None) -> bool:
    """Parallel graphs glued at one common branch node (a single parallel graph qualifies)."""
    if not G.is_connected() or G.has_loops():
        return False
    ps = parallel_structure(G)
    if ps is not None and ps[0] and (center is None or center in ps[0]):
        return True
    cands = [center] if center is not None else sorted_ids(cut_nodes(G))
    for c in cands:
        if c is None or c not in G:
            continue
        parts = branches_at(G, c)
        if parts and all(_is_parallel_branch(B, c) for B in parts):
            return True
    return False


# vertex sums --------------------------------------------------------------------

def vertex_sum(H1: MultiGraph, H2: MultiGraph, v, psi: Mapping, v2=None) -> MultiGraph:
    """Vertex sum at v (called v2 in H2 when the names differ).

    psi maps half-edges at v in H1 to half-edges at v2 in H2. Nodes become
    (1, x) and (2, y); the new edges are ("s", e1) for each pair.
    """
    v2 = v if v2 is None else v2
    if v not in H1 or v2 not in H2:
        raise GraphError("vertex missing from a summand")
    hs1, hs2 = set(H1.halves(v)), set(H2.halves(v2))
    if set(psi) != hs1 or set(psi.values()) != hs2 or len(set(psi.values())) != len(psi):
        raise GraphError("psi is not a bijection between the half-edges at v")
    if any(H1.is_loop(h[0]) for h in hs1) or any(H2.is_loop(h[0]) for h in hs2):
        raise GraphError("loops at the summed vertex are not supported")
    nodes = [(1, x) for x in H1.nodes if x != v] + [(2, y) for y in H2.nodes if y != v2]
    edges = {}
    for e, (a, b) in H1.edges.items():
        if v not in (a, b):
            edges[(1, e)] = ((1, a), (1, b))
    for e, (a, b) in H2.edges.items():
        if v2 not in (a, b):
            edges[(2, e)] = ((2, a), (2, b))
    for h1, h2 in psi.items():
        edges[("s", h1[0])] = ((1, H1.neighbor(h1)), (2, H2.neighbor(h2)))
    return MultiGraph(nodes, edges)


def vertex_sum_rotation(H1: MultiGraph, R1: GraphRotation, H2: MultiGraph, R2: GraphRotation,
                        v, psi: Mapping, v2=None) -> GraphRotation:
    """Rotation on the vertex sum induced by rotations of the summands."""
    v2 = v if v2 is None else v2
    psi_inv = {h2: h1 for h1, h2 in psi.items()}
    at1 = {h[0]: h for h in H1.halves(v)}
    at2 = {h[0]: h for h in H2.halves(v2)}
    rot = {}
    for x in H1.nodes:
        if x == v:
            continue
        r = []
        for (e, end) in R1[x]:
            if e in at1:
                r.append((("s", e), 0))
            else:
                r.append(((1, e), end))
        rot[(1, x)] = tuple(r)
    for y in H2.nodes:
        if y == v2:
            continue
        r = []
        for (e, end) in R2[y]:
            if e in at2:
                r.append((("s", psi_inv[at2[e]][0]), 1))
            else:
                r.append(((2, e), end))
        rot[(2, y)] = tuple(r)
    return GraphRotation(rot)
