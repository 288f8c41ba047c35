"""Seeded random complexes and scripts for property tests."""
from __future__ import annotations

import random
from itertools import combinations

from .core import Complex2, Edge, Face, Traversal, simplicial_complex
from .minors import (ContractEdge, ContractFace, DeleteFace, DeleteIsolatedVertex, Op, SplitVertex,
                     TopoDeleteEdge)


def random_simplicial(seed: int, n_vertices: int = 5, n_faces: int = 6, max_degree: int | None = 3) -> Complex2:
    """Random set of triangles on n vertices; edge face-degrees capped at max_degree."""
    rng = random.Random(seed)
    verts = [f"v{i}" for i in range(n_vertices)]
    tris = list(combinations(verts, 3))
    rng.shuffle(tris)
    chosen = []
    deg: dict = {}
    for t in tris:
        if len(chosen) >= n_faces:
            break
        es = [frozenset(p) for p in combinations(t, 2)]
        if max_degree is not None and any(deg.get(e, 0) >= max_degree for e in es):
            continue
        for e in es:
            deg[e] = deg.get(e, 0) + 1
        # random orientation
        chosen.append(t if rng.random() < 0.5 else (t[0], t[2], t[1]))
    used = {v for t in chosen for v in t}
    return simplicial_complex(chosen, extra_vertices=sorted(used))


def random_3_bounded(seed: int, n_vertices: int = 4, n_edges: int = 6, n_faces: int = 4,
                     max_len: int = 4) -> Complex2:
    """Random complex with loops and parallel edges allowed; faces are closed trails; edge degrees at most 3."""
    rng = random.Random(seed)
    verts = [f"v{i}" for i in range(n_vertices)]
    edges = []
    for i in range(n_edges):
        u = rng.choice(verts)
        w = rng.choice(verts) if rng.random() < 0.85 else u
        edges.append(Edge(f"e{i}", u, w))
    deg = {e.id: 0 for e in edges}
    inc: dict = {v: [] for v in verts}
    for e in edges:
        inc[e.tail].append(e)
        if e.head != e.tail:
            inc[e.head].append(e)
    faces = []
    attempts = 0
    while len(faces) < n_faces and attempts < 200 * n_faces:
        attempts += 1
        start = rng.choice(verts)
        cur = start
        trail: list[Traversal] = []
        used: set = set()
        for _ in range(max_len):
            opts = [e for e in inc[cur] if e.id not in used and deg[e.id] < 3]
            if not opts:
                break
            e = rng.choice(opts)
            fwd = e.tail == cur if e.tail != e.head else rng.random() < 0.5
            trail.append(Traversal(e.id, fwd))
            used.add(e.id)
            cur = e.head if fwd else e.tail
            if cur == start and rng.random() < 0.7:
                break
        if trail and cur == start:
            for t in trail:
                deg[t.edge] += 1
            faces.append(Face(f"f{len(faces)}", tuple(trail)))
    used_edges = [e for e in edges if deg[e.id] > 0]
    used_verts = {x for e in used_edges for x in (e.tail, e.head)}
    return Complex2.build(sorted(used_verts), used_edges, faces)


def random_script(C: Complex2, seed: int, length: int = 6, face_edges_only: bool = True) -> list[Op]:
    """Random sequence of applicable space-minor operations.

    By default only edges lying in some face are contracted; contracting a
    face-free edge leaves S unchanged.
    """
    from .minors import MinorError

    rng = random.Random(seed)
    script: list[Op] = []
    cur = C
    for _ in range(length):
        cands: list[Op] = []
        cands += [ContractEdge(e.id) for e in cur.edges
                  if not e.is_loop and (cur.face_degree(e.id) or not face_edges_only)]
        cands += [DeleteFace(f.id) for f in cur.faces]
        cands += [ContractFace(f.id) for f in cur.faces]
        cands += [SplitVertex(v) for v in cur.vertices if len(cur.links[v].components()) > 1]
        cands += [TopoDeleteEdge(e.id) for e in cur.edges]
        cands += [DeleteIsolatedVertex(v) for v in cur.vertices if not cur.edges_at_vertex[v]]
        rng.shuffle(cands)
        for op in cands:
            try:
                nxt = op.apply(cur)
            except (MinorError, ValueError):
                continue
            script.append(op)
            cur = nxt
            break
        else:
            break
    return script
