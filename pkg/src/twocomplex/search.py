"""Exact search for planar rotation systems over per-vertex link embeddings.

Each vertex ranges over the planar embeddings of its link graph, projected to
the edge-ends of face-degree at least three. An edge couples its two ends:
the rotator at the head end must be the reverse of the one at the tail end.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import Complex2
from .embeddings import projected_planar_rotations
from .multigraph import canonical_cycle
from .rotation import RotationSystem, corner_index, is_planar_rotation_system


@dataclass
class SearchStats:
    domain_sizes: dict = field(default_factory=dict)
    nodes_visited: int = 0


def vertex_domain(C: Complex2, v: str) -> list[dict]:
    """Planar embeddings of L(v) as maps edge-end -> cyclic tuple of face ids."""
    L = C.links[v]
    nodes = [n for n in L.nodes if L.degree(n) >= 3]
    at = corner_index(L)
    inv = {n: {h: f for f, h in at[n].items()} for n in L.nodes}
    out = []
    for proj in projected_planar_rotations(L, nodes):
        out.append({n: canonical_cycle(tuple(inv[n][h] for h in proj[n])) for n in nodes})
    return out


def find_planar_rotation_system(C: Complex2, stats: SearchStats | None = None) -> RotationSystem | None:
    stats = stats if stats is not None else SearchStats()
    domains = {}
    for v in C.vertices:
        dom = vertex_domain(C, v)
        stats.domain_sizes[v] = len(dom)
        if not dom:
            return None
        domains[v] = dom
    # constraints: edge e with face-degree >= 3 couples (e, "h") at its head with (e, "t") at its tail
    cons = []
    for e in C.edges:
        if C.face_degree(e.id) >= 3:
            cons.append((e.head, (e.id, "h"), e.tail, (e.id, "t")))
    rev = {v: [{n: canonical_cycle(tuple(reversed(r))) for n, r in d.items()} for d in domains[v]]
           for v in C.vertices}
    index = {v: {} for v in C.vertices}
    for v in C.vertices:
        for k, d in enumerate(domains[v]):
            for n, r in d.items():
                index[v].setdefault(n, {}).setdefault(r, set()).add(k)
    # per vertex: (own node, other vertex, other node)
    links = {v: [] for v in C.vertices}
    for hv, hn, tv, tn in cons:
        links[hv].append((hn, tv, tn))
        links[tv].append((tn, hv, hn))
    nbrs = {v: {w for _, w, _ in links[v]} for v in C.vertices}

    seq = []
    placed = set()
    remaining = set(C.vertices)
    while remaining:
        best = min(remaining, key=lambda v: (-len(nbrs[v] & placed), len(domains[v]), v))
        seq.append(best)
        placed.add(best)
        remaining.discard(best)
    assign: dict = {}
    live = {v: set(range(len(domains[v]))) for v in C.vertices}

    def rec(i: int) -> bool:
        if i == len(seq):
            return True
        v = seq[i]
        for k in sorted(live[v]):
            stats.nodes_visited += 1
            rv = rev[v][k]
            ok = True
            for own, w, wn in links[v]:
                if w == v and domains[v][k][wn] != rv[own]:
                    ok = False
                    break
            if not ok:
                continue
            assign[v] = k
            saved = {}
            for own, w, wn in links[v]:
                if w in assign:
                    continue
                allowed = index[w].get(wn, {}).get(rv[own], set())
                if w not in saved:
                    saved[w] = live[w]
                live[w] = live[w] & allowed
                if not live[w]:
                    ok = False
                    break
            if ok and rec(i + 1):
                return True
            for w, old in saved.items():
                live[w] = old
            del assign[v]
        return False

    if not rec(0):
        return None
    sig = {}
    for e in C.edges:
        if C.face_degree(e.id) >= 3:
            sig[e.id] = domains[e.head][assign[e.head]][(e.id, "h")]
    S = RotationSystem.complete(C, sig)
    if not is_planar_rotation_system(C, S).planar:
        raise AssertionError("search produced a rotation system that fails verification")
    return S


def has_planar_rotation_system(C: Complex2) -> bool:
    return find_planar_rotation_system(C) is not None
