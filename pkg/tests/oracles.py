"""Independent brute-force oracles used by the tests.

None of these reuse the search or decision code: planarity goes through
networkx, ranks through plain bit-vector elimination, and rotation systems
through full enumeration of cyclic orders with face tracing written here.
"""
from __future__ import annotations

from itertools import permutations, product

import networkx as nx


def small_planar(G) -> bool:
    """Planarity for at most six nodes by Wagner: no K5 minor and no K3,3 minor.

    On six nodes a K5 minor is a K5 subgraph or a K5 after one contraction,
    and a K3,3 minor is a K3,3 subgraph.
    """
    from itertools import combinations

    adj = {n: set() for n in G.nodes}
    for u, v in G.edges.values():
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    nodes = list(adj)
    if len(nodes) > 6:
        raise ValueError("oracle limited to six nodes")

    def complete(vs, a):
        return all(y in a[x] for x, y in combinations(vs, 2))

    for five in combinations(nodes, 5):
        if complete(five, adj):
            return False
    for u in nodes:
        for w in adj[u]:
            merged = {n: {m if m != w else u for m in adj[n] if n != w} - {n} for n in nodes if n != w}
            merged[u] |= {m for m in adj[w] if m != u}
            if len(merged) == 5 and complete(list(merged), merged):
                return False
    if len(nodes) == 6:
        for side in combinations(nodes, 3):
            other = [n for n in nodes if n not in side]
            if all(b in adj[a] for a in side for b in other):
                return False
    return True


def f2_rank(rows: list[int]) -> int:
    """Rank of bitmask rows over F_2."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def h1_trivial_f2(C) -> bool:
    """H1 over F_2 vanishes iff the face boundaries span the cycle space."""
    eidx = {e.id: i for i, e in enumerate(C.edges)}
    rows = []
    for f in C.faces:
        m = 0
        for t in f.trail:
            m ^= 1 << eidx[t.edge]
        rows.append(m)
    G = nx.MultiGraph()
    G.add_nodes_from(C.vertices)
    for e in C.edges:
        G.add_edge(e.tail, e.head)
    cyc = len(C.edges) - len(C.vertices) + nx.number_connected_components(G)
    return f2_rank(rows) == cyc


def _cyclic_orders(items):
    items = tuple(items)
    if len(items) <= 2:
        return [items]
    return [(items[0],) + p for p in permutations(items[1:])]


def _corners(C):
    """Per vertex: list of (face, position, arriving edge end, departing edge end)."""
    out = {v: [] for v in C.vertices}
    for f in C.faces:
        n = len(f.trail)
        for i, t in enumerate(f.trail):
            nt = f.trail[(i + 1) % n]
            e, ne = C.edge[t.edge], C.edge[nt.edge]
            v = e.head if t.forward else e.tail
            a = (t.edge, "h" if t.forward else "t")
            b = (nt.edge, "t" if nt.forward else "h")
            out[v].append((f.id, i, a, b))
    return out


def _vertex_planar(C, corners, sigma, v) -> bool:
    """Trace the link surface at v from first principles and test Euler characteristic 2 per component."""
    cs = corners[v]
    if not cs:
        return True
    nodes = set()
    for _, _, a, b in cs:
        nodes.add(a)
        nodes.add(b)
    # rotator at a node: faces around the edge, reversed at the tail end
    halves = {}
    for k, (fid, i, a, b) in enumerate(cs):
        halves.setdefault(a, []).append((k, 0))
        halves.setdefault(b, []).append((k, 1))
    rot = {}
    for n, hs in halves.items():
        order = sigma[n[0]] if n[1] == "h" else tuple(reversed(sigma[n[0]]))
        pos = {f: j for j, f in enumerate(order)}
        rot[n] = sorted(hs, key=lambda h: pos[cs[h[0]][0]])
    succ = {}
    for n, r in rot.items():
        for j, h in enumerate(r):
            succ[h] = r[(j + 1) % len(r)]
    seen = set()
    faces = 0
    for h in succ:
        if h in seen:
            continue
        faces += 1
        x = h
        while x not in seen:
            seen.add(x)
            x = succ[(x[0], 1 - x[1])]
    comp = nx.Graph()
    comp.add_nodes_from(nodes)
    for _, _, a, b in cs:
        comp.add_edge(a, b)
    k = nx.number_connected_components(comp)
    return len(nodes) - len(cs) + faces == 2 * k and _per_component_ok(cs, succ, nodes, comp)


def _per_component_ok(cs, succ, nodes, comp) -> bool:
    for cc in nx.connected_components(comp):
        ks = [k for k, c in enumerate(cs) if c[2] in cc]
        hs = {(k, s) for k in ks for s in (0, 1)}
        seen = set()
        faces = 0
        for h in hs:
            if h in seen:
                continue
            faces += 1
            x = h
            while x not in seen:
                seen.add(x)
                x = succ[(x[0], 1 - x[1])]
        if len(cc) - len(ks) + faces != 2:
            return False
    return True


def brute_prs_exists(C, limit: int = 10 ** 6) -> bool:
    """Full enumeration of rotation systems with an independent planarity check."""
    from math import factorial, prod

    edges = [e.id for e in C.edges]
    fae = {e: [] for e in edges}
    for f in C.faces:
        for t in f.trail:
            fae[t.edge].append(f.id)
    total = prod(factorial(max(len(fae[e]) - 1, 0)) for e in edges)
    if total > limit:
        raise ValueError("too many rotation systems")
    corners = _corners(C)
    choices = [_cyclic_orders(sorted(fae[e])) for e in edges]
    for combo in product(*choices):
        sigma = dict(zip(edges, combo))
        if all(_vertex_planar(C, corners, sigma, v) for v in C.vertices):
            return True
    return False


def brute_cycle_planar(C, cycle_vertices, limit: int = 10 ** 6) -> bool:
    """Some choice of rotators on the edges at the given vertices makes every one of their links planar."""
    from math import factorial, prod

    vs = set(cycle_vertices)
    edges = [e.id for e in C.edges if e.tail in vs or e.head in vs]
    fae = {e: [] for e in edges}
    for f in C.faces:
        for t in f.trail:
            if t.edge in fae:
                fae[t.edge].append(f.id)
    if prod(factorial(max(len(fae[e]) - 1, 0)) for e in edges) > limit:
        raise ValueError("too many rotation systems")
    corners = _corners(C)
    for combo in product(*(_cyclic_orders(sorted(fae[e])) for e in edges)):
        sigma = dict(zip(edges, combo))
        if all(_vertex_planar(C, corners, sigma, v) for v in cycle_vertices):
            return True
    return False
