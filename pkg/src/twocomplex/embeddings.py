"""Enumeration of all planar rotations of a loopless multigraph.

Blocks are split recursively at 2-separations; the pieces are recombined in
every cyclic order, and blocks are merged at cut nodes in every non-crossing
way. Rigid pieces contribute their unique embedding and its mirror.
"""
from __future__ import annotations

import itertools
from itertools import combinations, permutations, product

from .graphs import GraphError, GraphRotation, blocks, planar_rotation_of_graph, suppress_degree_two
from .multigraph import MultiGraph, canonical_cycle, sort_key, sorted_ids

_virt = itertools.count()


def planar_rotations(G: MultiGraph, limit: int | None = None) -> list[GraphRotation]:
    """All planar rotations of G (distinct as cyclic orders); G must be loopless."""
    if G.has_loops():
        raise GraphError("planar_rotations needs a loopless graph")
    per_comp = []
    for comp in G.components():
        rs = _component_rotations(G.induced(comp))
        if not rs:
            return []
        per_comp.append(rs)
    out = []
    for combo in product(*per_comp):
        rot = {}
        for r in combo:
            rot.update(r)
        out.append(GraphRotation(rot))
        if limit is not None and len(out) >= limit:
            break
    return out


def projected_planar_rotations(G: MultiGraph, nodes) -> list[dict]:
    """Distinct restrictions of the planar rotations of G to the given nodes (canonical cycles)."""
    nodes = [n for n in sorted_ids(nodes)]
    if G.has_loops():
        raise GraphError("projected_planar_rotations needs a loopless graph")
    per_comp = []
    for comp in G.components():
        mine = [n for n in nodes if n in set(comp)]
        rs = _component_rotations(G.induced(comp))
        if not rs:
            return []
        if not mine:
            continue
        seen = {}
        for r in rs:
            key = tuple(canonical_cycle(r[n]) for n in mine)
            seen.setdefault(key, None)
        per_comp.append([dict(zip(mine, k)) for k in seen])
    out = []
    for combo in product(*per_comp):
        d = {}
        for x in combo:
            d.update(x)
        out.append(d)
    return out


def count_planar_rotations(G: MultiGraph) -> int:
    return len(planar_rotations(G))


def _dedupe(rots: list[dict]) -> list[dict]:
    seen = {}
    for r in rots:
        key = tuple((n, canonical_cycle(r[n])) for n in sorted_ids(r))
        if key not in seen:
            seen[key] = r
    return list(seen.values())


def _component_rotations(H: MultiGraph) -> list[dict]:
    if not H.edges:
        return [{n: () for n in H.nodes}]
    bl, cuts = blocks(H)
    per_block = []
    for b in sorted(bl, key=lambda s: sorted_ids(s)[0] if s else ()):
        rs = _block_rotations(H.subgraph_edges(b))
        if not rs:
            return []
        per_block.append(rs)
    out = []
    for combo in product(*per_block):
        at = {}
        for r in combo:
            for n, seq in r.items():
                at.setdefault(n, []).append(seq)
        choices = []
        names = sorted_ids(at)
        for n in names:
            seqs = at[n]
            choices.append(_merges(seqs) if len(seqs) > 1 else [seqs[0]])
        for pick in product(*choices):
            out.append(dict(zip(names, pick)))
    return _dedupe(out)


def _merges(seqs: list[tuple]) -> list[tuple]:
    """All non-crossing cyclic merges of cyclic sequences, each kept in its own cyclic order."""
    big = [s for s in seqs if len(s) > 1]
    small = [s for s in seqs if len(s) <= 1]
    results = {}
    orders = permutations(big) if big else [()]
    for order in orders:
        order = list(order) + small
        cur = [tuple(order[0])]
        for s in order[1:]:
            nxt = []
            for c in cur:
                n = len(c)
                for g in range(n):
                    for r in range(len(s)):
                        rs = s[r:] + s[:r]
                        nxt.append(c[:g + 1] + rs + c[g + 1:])
            cur = list({canonical_cycle(x): x for x in nxt}.values())
        for c in cur:
            results[canonical_cycle(c)] = c
    return list(results.values())


def _block_rotations(B: MultiGraph) -> list[dict]:
    if len(B.edges) == 1:
        (e, (u, v)), = B.edges.items()
        return [{u: ((e, 0),), v: ((e, 1),)}]
    K, chains = suppress_degree_two(B)
    if len(K.nodes) == 1:
        return [{n: B.halves(n) for n in B.nodes}]
    krots = _kernel_rotations(K)
    out = []
    for kr in krots:
        rot = {}
        for x, seq in kr.items():
            r = []
            for kid, end in seq:
                ch = chains[kid]
                if end == 0:
                    r.append(ch[0])
                else:
                    e, en = ch[-1]
                    r.append((e, 1 - en))
            rot[x] = tuple(r)
        for n in B.nodes:
            if n not in rot:
                rot[n] = B.halves(n)
        out.append(rot)
    return out


def _useful_separation(K: MultiGraph):
    for a, b in combinations(K.nodes, 2):
        rest = K.remove_nodes([a, b])
        comps = rest.components()
        direct = [e for e, (u, v) in K.edges.items() if {u, v} == {a, b}]
        if len(comps) >= 2 or (len(comps) == 1 and len(direct) >= 2):
            return a, b, comps, direct
    return None


def _kernel_rotations(K: MultiGraph) -> list[dict]:
    if len(K.nodes) == 2:
        a, b = K.nodes
        hs = sorted(K.halves(a), key=sort_key)
        out = []
        for perm in permutations(hs[1:]):
            seq = (hs[0],) + perm
            out.append({a: seq, b: tuple((e, 1 - end) for e, end in reversed(seq))})
        return out
    sep = _useful_separation(K)
    if sep is None:
        R = planar_rotation_of_graph(K)
        if R is None:
            return []
        return [dict(R.rot), dict(R.reversed().rot)]
    a, b, comps, direct = sep
    parts = []  # (list of rotations, virtual id or None, direct edge or None)
    for comp in comps:
        ns = set(comp) | {a, b}
        es = {e: (u, v) for e, (u, v) in K.edges.items()
              if u in ns and v in ns and {u, v} != {a, b}}
        vid = ("#virt", next(_virt))
        es[vid] = (a, b)
        rs = _block_rotations(MultiGraph(ns, es))
        if not rs:
            return []
        parts.append((rs, vid, None))
    for d in direct:
        parts.append((None, None, d))
    choice_lists = [p[0] if p[0] is not None else [None] for p in parts]
    out = []
    for combo in product(*choice_lists):
        lin_a, lin_b, inner = [], [], {}
        for (rs, vid, d), r in zip(parts, combo):
            if d is not None:
                u, _ = K.edges[d]
                ea = 0 if u == a else 1
                lin_a.append(((d, ea),))
                lin_b.append(((d, 1 - ea),))
                continue
            lin_a.append(_after(r[a], (vid, 0)))
            lin_b.append(_after(r[b], (vid, 1)))
            for n, seq in r.items():
                if n not in (a, b):
                    inner[n] = seq
        m = len(parts)
        for perm in permutations(range(1, m)):
            order = (0,) + perm
            ra = tuple(h for i in order for h in lin_a[i])
            rb = tuple(h for i in reversed(order) for h in lin_b[i])
            rot = dict(inner)
            rot[a] = ra
            rot[b] = rb
            out.append(rot)
    return _dedupe(out)


def _after(seq: tuple, h) -> tuple:
    i = seq.index(h)
    return seq[i + 1:] + seq[:i]
