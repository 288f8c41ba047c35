"""Space-minor operations, restrictions and replayable scripts."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from typing import Any, Callable, ClassVar, Iterable

from .core import Complex2, Edge, Face, Traversal, fresh_ids, measures


class MinorError(ValueError):
    pass


class ScriptError(ValueError):
    def __init__(self, step: int, op: "Op", message: str):
        self.step = step
        self.op = op
        super().__init__(f"step {step} ({op.to_json()}): {message}")


_REGISTRY: dict[str, type] = {}


def register(cls):
    _REGISTRY[cls.name] = cls
    return cls


class Op:
    name: ClassVar[str] = ""
    kind: ClassVar[int] = 0  # position in the five-operation list; 0 for stretchings

    def apply(self, C: Complex2) -> Complex2:
        raise NotImplementedError

    def to_json(self) -> dict:
        d = {"op": self.name}
        for f in fields(self):
            v = getattr(self, f.name)
            d[f.name] = list(v) if isinstance(v, tuple) else v
        return d


def op_from_json(d: dict) -> Op:
    d = dict(d)
    name = d.pop("op", None)
    if name not in _REGISTRY:
        raise MinorError(f"unknown op {name!r}")
    cls = _REGISTRY[name]
    kw = {}
    for f in fields(cls):
        if f.name not in d:
            raise MinorError(f"op {name} missing field {f.name}")
        v = d[f.name]
        kw[f.name] = _freeze(v)
    return cls(**kw)


def _freeze(v):
    if isinstance(v, list):
        return tuple(_freeze(x) for x in v)
    return v


# primitive operations -------------------------------------------------------------

def contract_edge(C: Complex2, eid: str) -> Complex2:
    if eid not in C.edge:
        raise MinorError(f"unknown edge {eid}")
    e = C.edge[eid]
    if e.is_loop:
        raise MinorError(f"edge {eid} is a loop")
    keep, drop = sorted((e.tail, e.head))
    m = lambda x: keep if x == drop else x
    edges = [Edge(x.id, m(x.tail), m(x.head)) for x in C.edges if x.id != eid]
    faces = [Face(f.id, tuple(t for t in f.trail if t.edge != eid)) for f in C.faces]
    return Complex2.build([v for v in C.vertices if v != drop], edges, faces)


def delete_face(C: Complex2, fid: str) -> Complex2:
    if fid not in C.face:
        raise MinorError(f"unknown face {fid}")
    return Complex2.build(C.vertices, C.edges, [f for f in C.faces if f.id != fid])


def _omit_cancelling(trail: list[Traversal], eid: str) -> list[Traversal] | None:
    """Drop a cyclically adjacent opposite pair of traversals of eid; None if impossible."""
    idx = [i for i, t in enumerate(trail) if t.edge == eid]
    if len(idx) < 2:
        return trail
    if len(idx) > 2:
        return None
    i, j = idx
    n = len(trail)
    if trail[i].forward == trail[j].forward:
        return None
    if j == i + 1:
        return trail[:i] + trail[j + 1:]
    if i == 0 and j == n - 1:
        return trail[1:n - 1]
    return None


def contract_face(C: Complex2, fid: str) -> Complex2:
    if fid not in C.face:
        raise MinorError(f"unknown face {fid}")
    f = C.face[fid]
    if len(f.trail) == 1:
        loop = f.trail[0].edge
        faces = []
        for g in C.faces:
            if g.id == fid:
                continue
            tr = tuple(t for t in g.trail if t.edge != loop)
            if tr:
                faces.append(Face(g.id, tr))
        return Complex2.build(C.vertices, [e for e in C.edges if e.id != loop], faces)
    if len(f.trail) != 2:
        raise MinorError(f"face {fid} has size {len(f.trail)}")
    t1, t2 = f.trail
    e1, e2 = C.edge[t1.edge], C.edge[t2.edge]
    if e1.is_loop or e2.is_loop:
        raise MinorError(f"face {fid} has a loop edge")
    keep, gone = (e1, e2) if e1.id < e2.id else (e2, e1)
    same = keep.tail == gone.tail  # gone traversed forward equals keep forward
    faces = []
    for g in C.faces:
        if g.id == fid:
            continue
        tr = [Traversal(keep.id, t.forward if same else not t.forward) if t.edge == gone.id else t
              for t in g.trail]
        tr2 = _omit_cancelling(tr, keep.id)
        if tr2 is None:
            raise MinorError(f"face {g.id} would traverse {keep.id} twice without cancelling")
        if tr2:
            faces.append(Face(g.id, tuple(tr2)))
    return Complex2.build(C.vertices, [e for e in C.edges if e.id != gone.id], faces)


def split_vertex(C: Complex2, v: str) -> Complex2:
    if v not in C.edges_at_vertex:
        raise MinorError(f"unknown vertex {v}")
    L = C.links[v]
    comps = L.components()
    if len(comps) == 1:
        return C
    if not comps:
        return Complex2.build([x for x in C.vertices if x != v], C.edges, C.faces)
    taken = set(C.vertices)
    names = fresh_ids(v, len(comps), taken)
    where = {}
    for name, comp in zip(names, comps):
        for node in comp:
            where[node] = name
    edges = []
    for e in C.edges:
        t, h = e.tail, e.head
        if t == v:
            t = where[(e.id, "t")]
        if h == v:
            h = where[(e.id, "h")]
        edges.append(Edge(e.id, t, h))
    verts = [x for x in C.vertices if x != v] + names
    return Complex2.build(verts, edges, C.faces)


def topo_delete_edge(C: Complex2, eid: str) -> Complex2:
    if eid not in C.edge:
        raise MinorError(f"unknown edge {eid}")
    fs = C.faces_at_edge[eid]
    if len(fs) == 0:
        return Complex2.build(C.vertices, [e for e in C.edges if e.id != eid], C.faces)
    if len(fs) == 1:
        return C
    e = C.edge[eid]
    names = fresh_ids(eid, len(fs), set(C.edge))
    copy = dict(zip(sorted(fs), names))
    edges = [x for x in C.edges if x.id != eid] + [Edge(n, e.tail, e.head) for n in names]
    faces = []
    for f in C.faces:
        if f.id in copy:
            faces.append(Face(f.id, tuple(Traversal(copy[f.id], t.forward) if t.edge == eid else t
                                          for t in f.trail)))
        else:
            faces.append(f)
    return Complex2.build(C.vertices, edges, faces)


def delete_isolated_vertex(C: Complex2, v: str) -> Complex2:
    if v not in C.edges_at_vertex:
        raise MinorError(f"unknown vertex {v}")
    if C.edges_at_vertex[v]:
        raise MinorError(f"vertex {v} is not isolated")
    return Complex2.build([x for x in C.vertices if x != v], C.edges, C.faces)


# op records ---------------------------------------------------------------------

@register
@dataclass(frozen=True)
class ContractEdge(Op):
    edge: str
    name: ClassVar[str] = "contract_edge"
    kind: ClassVar[int] = 1

    def apply(self, C):
        return contract_edge(C, self.edge)


@register
@dataclass(frozen=True)
class DeleteFace(Op):
    face: str
    name: ClassVar[str] = "delete_face"
    kind: ClassVar[int] = 2

    def apply(self, C):
        return delete_face(C, self.face)


@register
@dataclass(frozen=True)
class ContractFace(Op):
    face: str
    name: ClassVar[str] = "contract_face"
    kind: ClassVar[int] = 3

    def apply(self, C):
        return contract_face(C, self.face)


@register
@dataclass(frozen=True)
class SplitVertex(Op):
    vertex: str
    name: ClassVar[str] = "split_vertex"
    kind: ClassVar[int] = 4

    def apply(self, C):
        return split_vertex(C, self.vertex)


@register
@dataclass(frozen=True)
class TopoDeleteEdge(Op):
    edge: str
    name: ClassVar[str] = "topo_delete_edge"
    kind: ClassVar[int] = 5

    def apply(self, C):
        return topo_delete_edge(C, self.edge)


@register
@dataclass(frozen=True)
class DeleteIsolatedVertex(Op):
    """Counted as a special case of splitting."""
    vertex: str
    name: ClassVar[str] = "delete_isolated_vertex"
    kind: ClassVar[int] = 4

    def apply(self, C):
        return delete_isolated_vertex(C, self.vertex)


# scripts ----------------------------------------------------------------------

@dataclass(frozen=True)
class TraceStep:
    step: int
    op: Op
    S_before: int
    S_after: int
    nontrivial: bool

    def to_json(self) -> dict:
        return {"step": self.step, "op": self.op.to_json(), "S_before": self.S_before,
                "S_after": self.S_after, "nontrivial": self.nontrivial}


def apply_script(C: Complex2, script: Iterable[Op]) -> tuple[Complex2, list[TraceStep]]:
    trace = []
    cur = C
    S = measures(cur).S
    for i, op in enumerate(script):
        try:
            nxt = op.apply(cur)
        except (MinorError, ValueError, KeyError) as exc:
            raise ScriptError(i, op, str(exc)) from None
        S2 = measures(nxt).S
        trace.append(TraceStep(i, op, S, S2, nxt != cur))
        cur, S = nxt, S2
    return cur, trace


def replay(C: Complex2, script: Iterable[Op]) -> Complex2:
    return apply_script(C, script)[0]


def script_to_json(script: Iterable[Op]) -> list[dict]:
    return [op.to_json() for op in script]


def script_from_json(data) -> list[Op]:
    if isinstance(data, str):
        data = json.loads(data)
    if isinstance(data, dict):
        data = data.get("script", [])
    return [op_from_json(d) for d in data]


def cleanup_ops(C: Complex2) -> list[Op]:
    """Remove face-less edges and then vertices left without edges."""
    ops: list[Op] = []
    dead = {e.id for e in C.edges if not C.faces_at_edge[e.id]}
    for e in sorted(dead):
        ops.append(TopoDeleteEdge(e))
    for v in C.vertices:
        if all(x in dead for x in C.edges_at_vertex[v]):
            ops.append(DeleteIsolatedVertex(v))
    return ops


def with_cleanup(C: Complex2, ops: list[Op]) -> tuple[Complex2, list[Op]]:
    """Apply ops followed by cleanup; returns the result and the full op list."""
    cur = replay(C, ops)
    cl = cleanup_ops(cur)
    return replay(cur, cl), list(ops) + cl


def split_all_ops(C: Complex2, vertices: Iterable[str] | None = None) -> list[Op]:
    vs = C.vertices if vertices is None else vertices
    return [SplitVertex(v) for v in sorted(vs) if len(C.links[v].components()) != 1]


def delete_faces_ops(fids: Iterable[str]) -> list[Op]:
    return [DeleteFace(f) for f in sorted(fids)]


def nontrivial_bound(C: Complex2) -> int:
    """Upper bound on nontrivial splittings and topological deletions along any script."""
    S = measures(C).S
    psi = sum(max(len(C.links[v].components()) - 1, 0) for v in C.vertices)
    return psi + len(C.edges) + 5 * S
