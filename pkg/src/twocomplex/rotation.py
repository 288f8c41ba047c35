"""Rotation systems of 2-complexes, link rotations, local surfaces, dual complexes."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .core import Complex2, Edge, Face, LinkGraph, Traversal, link_graph
from .graphs import GraphRotation, TracedSurface, trace_faces
from .multigraph import canonical_cycle, sorted_ids


class RotationError(ValueError):
    pass


class RotationSystem:
    """sigma: edge id -> cyclic tuple of face ids."""

    __slots__ = ("sigma",)

    def __init__(self, sigma: Mapping[str, tuple]):
        self.sigma = {e: tuple(s) for e, s in sigma.items()}

    def __getitem__(self, e):
        return self.sigma.get(e, ())

    def __eq__(self, other):
        return isinstance(other, RotationSystem) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"RotationSystem({self.sigma!r})"

    def canonical(self) -> tuple:
        return tuple((e, canonical_cycle(s)) for e, s in sorted(self.sigma.items()) if len(s) >= 3)

    def to_json(self) -> dict:
        return {e: list(canonical_cycle(s)) for e, s in sorted(self.sigma.items())}

    @classmethod
    def complete(cls, C: Complex2, partial: Mapping[str, tuple]) -> "RotationSystem":
        """Fill in edges of face-degree at most two with their unique order."""
        sig = {}
        for e in C.edges:
            if e.id in partial:
                sig[e.id] = tuple(partial[e.id])
            else:
                fs = C.faces_at_edge[e.id]
                if len(fs) > 2:
                    raise RotationError(f"missing rotator for edge {e.id}")
                sig[e.id] = fs
        return cls(sig)


def check_rotation_system(C: Complex2, S: RotationSystem) -> None:
    for e in C.edges:
        if sorted(S[e.id]) != sorted(C.faces_at_edge[e.id]):
            raise RotationError(f"rotator at {e.id} does not list its incident faces")


def corner_index(L: LinkGraph) -> dict:
    """node -> {face id: half-edge of the link edge of that face at node}."""
    at = {n: {} for n in L.nodes}
    for lid, (a, b) in L.edges.items():
        at[a][lid[0]] = (lid, 0)
        at[b][lid[0]] = (lid, 1)
    return at


def induced_link_rotation(C: Complex2, S: RotationSystem, v: str, L: LinkGraph | None = None) -> GraphRotation:
    """sigma(e) at the head end of e, its reverse at the tail end."""
    L = L or C.links[v]
    at = corner_index(L)
    rot = {}
    for node in L.nodes:
        eid, end = node
        order = S[eid]
        if end == "t":
            order = tuple(reversed(order))
        rot[node] = tuple(at[node][f] for f in order)
    return GraphRotation(rot)


def link_complex(C: Complex2, S: RotationSystem, v: str) -> TracedSurface:
    L = C.links[v]
    return trace_faces(L, induced_link_rotation(C, S, v, L))


@dataclass
class PRSReport:
    planar: bool
    genera: dict  # vertex -> list of genera per link component

    def to_json(self) -> dict:
        return {"planar": self.planar, "genera": {v: g for v, g in sorted(self.genera.items())}}


def is_planar_rotation_system(C: Complex2, S: RotationSystem) -> PRSReport:
    check_rotation_system(C, S)
    genera = {}
    ok = True
    for v in C.vertices:
        T = link_complex(C, S, v)
        genera[v] = T.genera
        ok = ok and T.is_planar
    return PRSReport(ok, genera)


def induced_vertex_planar(C: Complex2, S: Mapping[str, tuple], v: str) -> bool:
    return link_complex(C, RotationSystem.complete(C, S), v).is_planar


# local surfaces -----------------------------------------------------------------

class _UF:
    def __init__(self):
        self.p = {}

    def find(self, x):
        p = self.p
        p.setdefault(x, x)
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra > rb:
                ra, rb = rb, ra
            self.p[rb] = ra


def _sign(C: Complex2, f: str, e: str, s: int) -> int:
    """+1 when orientation (f, s) traverses e forwards."""
    return s if C.direction_in(f, e) else -s


@dataclass
class LocalSurface:
    orientations: tuple  # sorted (face id, +1|-1)
    vertices: int
    edges: int
    faces: int
    euler_char: int
    genus: float
    connected: bool
    vertex_clones: dict  # clone id -> (vertex of C, link-complex face index)

    def to_json(self) -> dict:
        return {"orientations": [[f, s] for f, s in self.orientations],
                "V": self.vertices, "E": self.edges, "F": self.faces,
                "eulerChar": self.euler_char, "genus": self.genus,
                "vertexClones": len(self.vertex_clones)}


def orientation_classes(C: Complex2, S: RotationSystem) -> list[tuple]:
    check_rotation_system(C, S)
    uf = _UF()
    for f in C.faces:
        uf.find((f.id, 1))
        uf.find((f.id, -1))
    for e in C.edges:
        order = S[e.id]
        if len(order) == 1:
            f = order[0]
            uf.union((f, 1), (f, -1))
            continue
        for i, f in enumerate(order):
            g = order[(i + 1) % len(order)]
            # (f, s_f) with positive traversal of e relates to (g, s_g) with negative traversal
            sf = 1 if C.direction_in(f, e.id) else -1
            sg = -1 if C.direction_in(g, e.id) else 1
            uf.union((f, sf), (g, sg))
    classes = {}
    for x in uf.p:
        classes.setdefault(uf.find(x), []).append(x)
    return sorted(tuple(sorted(c)) for c in classes.values())


def local_surfaces(C: Complex2, S: RotationSystem) -> list[LocalSurface]:
    """Glue the oriented faces of each class along related edge sides."""
    out = []
    classes = orientation_classes(C, S)
    for cls_ in classes:
        members = set(cls_)
        # polygon corners: (face, s, i) is the corner at the start of traversal i
        uf = _UF()
        sides = {}
        for (f, s) in cls_:
            tr = C.face[f].trail
            n = len(tr)
            for i, t in enumerate(tr):
                # side of edge t.edge in polygon (f, s); record its tail/head corners
                start, end = (f, s, i), (f, s, (i + 1) % n)
                tail_c, head_c = (start, end) if t.forward else (end, start)
                sides[(f, s, t.edge)] = (tail_c, head_c)
                uf.find(start)
        edges_glued = 0
        for e in C.edges:
            order = S[e.id]
            if not order:
                continue
            if len(order) == 1:
                f = order[0]
                if (f, 1) in members:
                    a, b = sides[(f, 1, e.id)], sides[(f, -1, e.id)]
                    uf.union(a[0], b[0])
                    uf.union(a[1], b[1])
                    edges_glued += 1
                continue
            for i, f in enumerate(order):
                g = order[(i + 1) % len(order)]
                sf = 1 if C.direction_in(f, e.id) else -1
                sg = -1 if C.direction_in(g, e.id) else 1
                if (f, sf) in members:
                    a, b = sides[(f, sf, e.id)], sides[(g, sg, e.id)]
                    uf.union(a[0], b[0])
                    uf.union(a[1], b[1])
                    edges_glued += 1
        corners = {}
        for c in list(uf.p):
            corners.setdefault(uf.find(c), []).append(c)
        V = len(corners)
        F = len(cls_)
        E = edges_glued
        chi = V - E + F
        # connectivity over faces
        fuf = _UF()
        for c, group in corners.items():
            for x in group:
                fuf.union((x[0], x[1]), (group[0][0], group[0][1]))
        connected = len({fuf.find(x) for x in cls_}) == 1
        clones = {}
        for root, group in sorted(corners.items(), key=lambda kv: min(kv[1])):
            f, s, i = min(group)
            v = C.traversal_start(C.face[f].trail[i])
            clones[len(clones)] = (v, tuple(sorted(group)))
        out.append(LocalSurface(tuple(cls_), V, E, F, chi, (2 - chi) / 2, connected, clones))
    return out


@dataclass
class DualComplex:
    complex: Complex2
    surface_of: dict  # (face, sign) -> dual vertex id
    rotation: RotationSystem


def dual_complex(C: Complex2, S: RotationSystem) -> DualComplex:
    classes = orientation_classes(C, S)
    width = len(str(len(classes)))
    name = {}
    for k, cls_ in enumerate(classes):
        for x in cls_:
            name[x] = f"s{k:0{width}d}"
    verts = sorted(set(name.values()))
    edges = [Edge(f.id, name[(f.id, 1)], name[(f.id, -1)]) for f in C.faces]
    faces = []
    for e in C.edges:
        order = S[e.id]
        if not order:
            continue
        trail = tuple(Traversal(f, not C.direction_in(f, e.id)) for f in order)
        faces.append(Face(e.id, trail))
    D = Complex2.build(verts, edges, faces)
    rot = {}
    for f in C.faces:
        rot[f.id] = tuple(t.edge for t in f.trail)
    return DualComplex(D, name, RotationSystem(rot))


@dataclass
class EulerReport:
    lhs: int
    nullhomologous: bool
    dual_links_spheres: bool

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "nullhomologous": self.nullhomologous,
                "dualLinksSpheres": self.dual_links_spheres}


def euler_identity_report(C: Complex2, S: RotationSystem, p: int = 2) -> EulerReport:
    from .homology import homology_trivial

    if not is_planar_rotation_system(C, S).planar:
        raise RotationError("euler_identity_report needs a planar rotation system")
    D = dual_complex(C, S)
    lhs = len(C.vertices) - len(C.edges) + len(C.faces) - len(D.complex.vertices)
    null = homology_trivial(C, p)
    spheres = is_planar_rotation_system(D.complex, D.rotation).planar
    if lhs > 0:
        raise AssertionError("Euler count exceeded zero")
    if null and lhs < 0:
        raise AssertionError("nullhomologous complex with negative Euler count")
    return EulerReport(lhs, null, spheres)


# surfaces with boundary ----------------------------------------------------------

@dataclass
class SurfaceClass:
    kind: str  # "MoebiusStrip" | "Annulus" | "other"
    euler_char: int
    boundary_components: int
    orientable: bool


def classify_bounded_surface(T: Complex2) -> SurfaceClass:
    for e in T.edges:
        if T.face_degree(e.id) > 2:
            raise RotationError(f"edge {e.id} lies in more than two faces")
    for v in T.vertices:
        L = T.links[v]
        if not L.is_connected() or any(L.degree(n) > 2 for n in L.nodes):
            raise RotationError(f"vertex {v} is not a surface point")
    if not T.one_skeleton().is_connected():
        raise RotationError("surface is not connected")
    chi = len(T.vertices) - len(T.edges) + len(T.faces)
    bd = [e.id for e in T.edges if T.face_degree(e.id) == 1]
    from .multigraph import MultiGraph

    B = MultiGraph({x for e in bd for x in (T.edge[e].tail, T.edge[e].head)},
                   {e: (T.edge[e].tail, T.edge[e].head) for e in bd})
    nb = len(B.components()) if bd else 0
    orient = {}
    orientable = True
    for f0 in T.faces:
        if f0.id in orient:
            continue
        orient[f0.id] = 1
        stack = [f0.id]
        while stack and orientable:
            f = stack.pop()
            for t in T.face[f].trail:
                for g in T.faces_at_edge[t.edge]:
                    if g == f:
                        continue
                    want = -orient[f] * (1 if t.forward else -1) * (1 if T.direction_in(g, t.edge) else -1)
                    if g not in orient:
                        orient[g] = want
                        stack.append(g)
                    elif orient[g] != want:
                        orientable = False
    kind = "other"
    if chi == 0 and nb == 1 and not orientable:
        kind = "MoebiusStrip"
    elif chi == 0 and nb == 2 and orientable:
        kind = "Annulus"
    return SurfaceClass(kind, chi, nb, orientable)
