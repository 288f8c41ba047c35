"""Exhaustive rotation-system search, used as an independent oracle."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial

from .core import Complex2
from .graphs import trace_faces
from .rotation import RotationSystem, induced_link_rotation


class TooLarge(RuntimeError):
    pass


def rotation_count(C: Complex2) -> int:
    """Number of rotation systems: product of (deg - 1)! over edges."""
    n = 1
    for e in C.edges:
        d = C.face_degree(e.id)
        if d >= 3:
            n *= factorial(d - 1)
    return n


def _cyclic_orders(items: tuple) -> list[tuple]:
    if len(items) <= 2:
        return [items]
    first, rest = items[0], items[1:]
    return [(first,) + p for p in permutations(rest)]


@dataclass
class BruteResult:
    exists: bool
    sigma: RotationSystem | None
    checked: int


class _VertexChecker:
    """Counts traced link faces from the current rotators; planar iff the count is maximal."""

    def __init__(self, C: Complex2, v: str):
        L = C.links[v]
        halves = []
        for lid in L.edges:
            halves += [(lid, 0), (lid, 1)]
        self.idx = {h: i for i, h in enumerate(halves)}
        self.n = len(halves)
        self.other = [self.idx[(h[0], 1 - h[1])] for h in halves]
        self.at = {}
        for lid, (a, b) in L.edges.items():
            self.at.setdefault(a, {})[lid[0]] = self.idx[(lid, 0)]
            self.at.setdefault(b, {})[lid[0]] = self.idx[(lid, 1)]
        target = 0
        for comp in L.components():
            ne = sum(1 for u, _ in L.edges.values() if u in set(comp))
            if ne:
                target += 2 - len(comp) + ne
        self.target = target
        self.nodes = [n for n in L.nodes if n in self.at]

    def planar(self, sigma: dict) -> bool:
        succ = [0] * self.n
        for node in self.nodes:
            eid, end = node
            order = sigma[eid]
            if end == "t":
                order = order[::-1]
            at = self.at[node]
            r = [at[f] for f in order]
            k = len(r)
            for j in range(k):
                succ[r[j]] = r[(j + 1) % k]
        seen = [False] * self.n
        other = self.other
        faces = 0
        for i in range(self.n):
            if seen[i]:
                continue
            faces += 1
            h = i
            while not seen[h]:
                seen[h] = True
                h = succ[other[h]]
        return faces == self.target


def brute_force_prs(C: Complex2, limit: int = 10 ** 6) -> BruteResult:
    """Depth-first over rotators; a vertex is checked once all its edges are fixed.

    Reversing every rotator preserves planarity, so the first free edge only
    ranges over one order of each reverse pair.
    """
    if rotation_count(C) > limit:
        raise TooLarge(f"{rotation_count(C)} rotation systems exceed the limit {limit}")
    free = [e.id for e in C.edges if C.face_degree(e.id) >= 3]
    free.sort(key=lambda e: (-C.face_degree(e), e))
    base = {e.id: C.faces_at_edge[e.id] for e in C.edges}
    check = {v: _VertexChecker(C, v) for v in C.vertices}
    fset = set(free)
    pending = {v: sum(1 for e in C.edges_at_vertex[v] if e in fset) for v in C.vertices}
    sigma = dict(base)
    for v in C.vertices:
        if pending[v] == 0 and not check[v].planar(sigma):
            return BruteResult(False, None, 0)
    ends = {e: {C.edge[e].tail, C.edge[e].head} for e in free}
    checked = 0

    def orders(i: int, e: str) -> list[tuple]:
        os = _cyclic_orders(tuple(sorted(base[e])))
        if i == 0:
            keep = []
            seen = set()
            for o in os:
                r = (o[0],) + tuple(reversed(o[1:]))
                if r in seen:
                    continue
                seen.add(o)
                keep.append(o)
            return keep
        return os

    def rec(i: int) -> bool:
        nonlocal checked
        if i == len(free):
            return True
        e = free[i]
        for order in orders(i, e):
            sigma[e] = order
            checked += 1
            ok = True
            for v in ends[e]:
                pending[v] -= 1
            for v in ends[e]:
                if pending[v] == 0 and not check[v].planar(sigma):
                    ok = False
                    break
            if ok and rec(i + 1):
                return True
            for v in ends[e]:
                pending[v] += 1
        sigma[e] = base[e]
        return False

    if rec(0):
        S = RotationSystem(dict(sigma))
        return BruteResult(True, S, checked)
    return BruteResult(False, None, checked)


def all_planar_rotation_systems(C: Complex2, limit: int = 10 ** 5) -> list[RotationSystem]:
    """Every planar rotation system (small inputs only)."""
    if rotation_count(C) > limit:
        raise TooLarge("too many rotation systems")
    free = [e.id for e in C.edges if C.face_degree(e.id) >= 3]
    base = {e.id: C.faces_at_edge[e.id] for e in C.edges}
    out = []

    def rec(i, sig):
        if i == len(free):
            S = RotationSystem(sig)
            if all(trace_faces(C.links[v], induced_link_rotation(C, S, v)).is_planar for v in C.vertices):
                out.append(S)
            return
        e = free[i]
        for order in _cyclic_orders(tuple(sorted(base[e]))):
            sig[e] = order
            rec(i + 1, sig)
        sig[e] = base[e]

    rec(0, dict(base))
    return out
