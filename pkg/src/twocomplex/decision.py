"""Decision procedure for planar rotation systems with verified certificates."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from . import catalog
from .bruteforce import TooLarge, brute_force_prs, rotation_count
from .core import Complex2
from .graphs import (GraphRotation, classify_graph, is_planar, kuratowski_witness,
                     planar_rotation_of_graph, subdivision_type, trace_faces, vertex_sum)
from .homology import _check_prime, homology_trivial, solve_face_sum_f2
from .minors import (ContractEdge, ContractFace, DeleteFace, MinorError, Op, SplitVertex,
                     TopoDeleteEdge, cleanup_ops, replay, script_from_json, script_to_json, split_all_ops)
from .multigraph import canonical_cycle, sorted_ids
from .paracycles import (HelicopterError, ParaCycle, helicopter_planar, is_chordless, loop_helicopter,
                         mega_faces, para_cycle_planar, para_cycles, windings_at)
from .rotation import RotationSystem, classify_bounded_surface, is_planar_rotation_system
from .search import find_planar_rotation_system
from .stretching import normalize

BRUTE_LIMIT = 10 ** 6


class DecisionError(ValueError):
    pass


class PreconditionError(DecisionError):
    pass


class HypothesisViolation(DecisionError):
    pass


# link of an edge -----------------------------------------------------------------

def edge_link_sum(C: Complex2, eid: str):
    """L(v) and L(w) summed at the two ends of e=vw; also maps each sum edge to its face."""
    e = C.edge[eid]
    if e.is_loop:
        raise DecisionError(f"edge {eid} is a loop")
    Lt, Lh = C.links[e.tail], C.links[e.head]
    nt, nh = (eid, "t"), (eid, "h")
    at_t = {}
    for h in Lt.halves(nt):
        at_t[h[0][0]] = h
    at_h = {}
    for h in Lh.halves(nh):
        at_h[h[0][0]] = h
    psi = {at_t[f]: at_h[f] for f in C.faces_at_edge[eid]}
    H = vertex_sum(Lt, Lh, nt, psi, v2=nh)
    back = {x: x[1][0] for x in H.edges}
    return H, back


def edge_link_planar(C: Complex2, eid: str) -> bool:
    return is_planar(edge_link_sum(C, eid)[0])


# obstruction records --------------------------------------------------------------

@dataclass
class Obstruction:
    kind: str
    script: list
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": self.detail, "script": script_to_json(self.script)}

    @classmethod
    def from_json(cls, d: dict) -> "Obstruction":
        return cls(d["kind"], script_from_json(d.get("script", [])), dict(d.get("detail", {})))


@dataclass
class Check:
    ok: bool
    checks: dict
    message: str = ""

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "message": self.message}


class _Builder:
    """Applies ops while recording them, so the script always refers to live ids."""

    def __init__(self, C: Complex2):
        self.C = C
        self.ops: list[Op] = []

    def run(self, ops) -> None:
        for op in ops:
            self.C = op.apply(self.C)
            self.ops.append(op)

    def cleanup(self) -> None:
        self.run(cleanup_ops(self.C))

    def delete_faces(self, fids) -> None:
        self.run([DeleteFace(f) for f in sorted(fids)])
        self.cleanup()

    def split_all(self) -> None:
        while True:
            ops = split_all_ops(self.C)
            if not ops:
                return
            self.run(ops)
            self.cleanup()


def split_edge_ops(C: Complex2, W) -> list[Op]:
    """Topologically delete edges far from W, then split the far vertices."""
    W = set(W)
    near = set()
    for f in C.faces:
        vs = set(C.face_vertices(f.id))
        if len(vs & W) >= 2:
            near |= vs
    X = {v for v in C.vertices if v not in W and v not in near}
    ops: list[Op] = []
    for e in C.edges:
        if (e.tail in X or e.head in X) and e.tail not in W and e.head not in W and C.face_degree(e.id) >= 2:
            ops.append(TopoDeleteEdge(e.id))
    cur = replay(C, ops)
    ops += split_all_ops(cur, sorted(X))
    return ops


def no_prs(R: Complex2, brute_limit: int = BRUTE_LIMIT) -> dict:
    """Two independent routes: constraint search, and exhaustive enumeration when small."""
    out = {"search": find_planar_rotation_system(R) is None}
    rc = rotation_count(R)
    out["rotationCount"] = rc
    if rc <= brute_limit:
        out["brute"] = not brute_force_prs(R, limit=brute_limit).exists
    return out


# cones -----------------------------------------------------------------------------

def is_cone_over_kuratowski(R: Complex2, top: str):
    if top not in R.edges_at_vertex:
        return None
    if any(top not in R.face_vertices(f.id) for f in R.faces):
        return None
    w = subdivision_type(R.links[top])
    if w is None:
        return None
    for x in R.vertices:
        if x != top and not R.links[x].is_connected():
            return None
    for e in R.edges:
        if top not in (e.tail, e.head) and R.face_degree(e.id) != 1:
            return None
    return w


def extract_cone_obstruction(C: Complex2, v: str) -> Obstruction:
    L = C.links[v]
    if is_planar(L):
        raise DecisionError(f"link at {v} is planar")
    if not C.is_simplicial:
        wit = kuratowski_witness(L)
        return Obstruction("NonPlanarLinkRaw", [], {"vertex": v, "kind": wit.kind,
                                                      "witness": [list(x) for x in wit.edges]})
    b = _Builder(C)
    b.delete_faces(g.id for g in C.faces if v not in C.face_vertices(g.id))
    b.run(split_edge_ops(b.C, {v}))
    b.cleanup()
    wit = kuratowski_witness(b.C.links[v])
    keep = {lid[0] for lid in wit.edges}
    b.delete_faces(f.id for f in b.C.faces if f.id not in keep)
    b.split_all()
    return Obstruction("ConeOverKuratowski", b.ops, {"vertex": v, "kind": wit.kind})


# combined cones ----------------------------------------------------------------------

def combined_cone_family(R: Complex2, eid: str):
    """(kind, family) if R is a combined cone over a Kuratowski subdivision at e, else None."""
    if eid not in R.edge or R.edge[eid].is_loop:
        return None
    e = R.edge[eid]
    v, w = e.tail, e.head
    if any(v not in R.face_vertices(f.id) and w not in R.face_vertices(f.id) for f in R.faces):
        return None
    if not is_planar(R.links[v]) or not is_planar(R.links[w]):
        return None
    H, _ = edge_link_sum(R, eid)
    st = subdivision_type(H)
    if st is None:
        return None
    kind, branch, sides = st
    side = [x for x in branch if x[0] == 1]
    other = [x for x in branch if x[0] == 2]
    if len(side) < 2 or len(other) < 2:
        return None
    return kind, catalog.combined_family_of(kind, side, other, sides)


def extract_combined_cone(C: Complex2, eid: str) -> Obstruction:
    e = C.edge[eid]
    v, w = e.tail, e.head
    if not C.is_simplicial:
        raise PreconditionError("combined cone extraction needs a simplicial complex")
    if not is_planar(C.links[v]) or not is_planar(C.links[w]):
        raise PreconditionError("an endvertex link is non-planar")
    if edge_link_planar(C, eid):
        raise PreconditionError(f"link at the contraction vertex of {eid} is planar")
    b = _Builder(C)
    b.delete_faces(f.id for f in C.faces if not {v, w} & set(C.face_vertices(f.id)))
    b.run(split_edge_ops(b.C, {v, w}))
    b.cleanup()
    H, back = edge_link_sum(b.C, eid)
    wit = kuratowski_witness(H)
    keep = {back[x] for x in wit.edges}
    b.delete_faces(f.id for f in b.C.faces if f.id not in keep)
    b.run(split_edge_ops(b.C, {v, w}))
    b.cleanup()
    b.split_all()
    fam = combined_cone_family(b.C, eid)
    detail = {"edge": eid, "kind": wit.kind, "family": fam[1] if fam else None}
    return Obstruction("CombinedCone", b.ops, detail)


# rotation frameworks -----------------------------------------------------------------

@dataclass
class RotationFramework:
    rotations: dict  # vertex -> GraphRotation of its link
    colors: dict  # edge id -> "green" | "red"

    def red_edges(self) -> list[str]:
        return sorted(e for e, c in self.colors.items() if c == "red")


@dataclass
class FrameworkFailure:
    vertex: str | None = None
    edge: str | None = None
    reason: str = ""


def _rotator_faces(R: GraphRotation, node) -> tuple:
    return tuple(h[0][0] for h in R[node])


def edge_color(C: Complex2, rots: dict, eid: str) -> str | None:
    e = C.edge[eid]
    if C.face_degree(eid) <= 2:
        return "green"
    a = _rotator_faces(rots[e.head], (eid, "h"))
    b = _rotator_faces(rots[e.tail], (eid, "t"))
    if canonical_cycle(a) == canonical_cycle(tuple(reversed(b))):
        return "green"
    if canonical_cycle(a) == canonical_cycle(b):
        return "red"
    return None


def is_locally_3_connected(C: Complex2) -> bool:
    return all(classify_graph(C.links[v]).tag == "Subdiv3Connected" for v in C.vertices)


def _framework(C: Complex2):
    rots = {}
    for v in C.vertices:
        R = planar_rotation_of_graph(C.links[v])
        if R is None:
            return FrameworkFailure(vertex=v, reason="non-planar link")
        rots[v] = R
    colors = {}
    for e in C.edges:
        c = edge_color(C, rots, e.id)
        if c is None:
            return FrameworkFailure(edge=e.id, reason="rotators neither agree nor are reverse")
        colors[e.id] = c
    return RotationFramework(rots, colors)


def build_rotation_framework(C: Complex2):
    """A framework, or a failure naming a non-planar link or an edge whose summed link is non-planar."""
    if not is_locally_3_connected(C):
        raise PreconditionError("not locally 3-connected")
    for v in C.vertices:
        if not is_planar(C.links[v]):
            return FrameworkFailure(vertex=v, reason="non-planar link")
    F = _framework(C)
    if isinstance(F, FrameworkFailure) and F.edge is not None:
        if edge_link_planar(C, F.edge):
            raise AssertionError(f"edge {F.edge} has incompatible rotators but a planar summed link")
    return F


@dataclass
class Normalized:
    framework: RotationFramework
    flips: set
    odd_cycle: list | None  # edge ids of a cycle with an odd number of red edges


def normalize_colors(C: Complex2, F: RotationFramework) -> Normalized:
    """Flip vertices along a BFS forest from the smallest vertex; report an odd cycle on conflict."""
    red = {e: 1 if c == "red" else 0 for e, c in F.colors.items()}
    for e in C.edges:
        if e.is_loop and red[e.id]:
            return Normalized(F, set(), [e.id])
    adj = {v: [] for v in C.vertices}
    for e in C.edges:
        if C.face_degree(e.id) >= 3 and not e.is_loop:
            adj[e.tail].append((e.id, e.head))
            adj[e.head].append((e.id, e.tail))
    for v in adj:
        adj[v].sort()
    par = {}
    side = {}
    for root in C.vertices:
        if root in side:
            continue
        side[root] = 0
        par[root] = None
        q = deque([root])
        while q:
            x = q.popleft()
            for eid, y in adj[x]:
                want = side[x] ^ red[eid]
                if y not in side:
                    side[y] = want
                    par[y] = (eid, x)
                    q.append(y)
                elif side[y] != want:
                    return Normalized(F, set(), _tree_cycle(par, x, y, eid))
    flips = {v for v, s in side.items() if s}
    rots = {v: (R.reversed() if v in flips else R) for v, R in F.rotations.items()}
    colors = {e.id: edge_color(C, rots, e.id) for e in C.edges}
    if any(c != "green" for c in colors.values()):
        raise AssertionError("flips did not make every edge green")
    return Normalized(RotationFramework(rots, colors), flips, None)


def _tree_cycle(par: dict, x: str, y: str, eid: str) -> list:
    def up(z):
        out = []
        while par[z] is not None:
            e, z = par[z]
            out.append((e, z))
        return out
    px, py = up(x), up(y)
    ex = {e for e, _ in px}
    ey = {e for e, _ in py}
    return sorted((ex ^ ey) | {eid})


def sigma_from_framework(C: Complex2, F: RotationFramework) -> RotationSystem:
    sig = {}
    for e in C.edges:
        if C.face_degree(e.id) >= 3:
            sig[e.id] = _rotator_faces(F.rotations[e.head], (e.id, "h"))
    return RotationSystem.complete(C, sig)


def red_count(C: Complex2, F: RotationFramework, fid: str) -> int:
    return sum(1 for e in C.face[fid].edge_ids if F.colors[e] == "red")


# Moebius obstructions ------------------------------------------------------------------

def extract_moebius(C: Complex2, F: RotationFramework, fid: str) -> Obstruction:
    """Keep f and the two traced link faces beside f at each of its corners."""
    f = C.face[fid]
    keep_faces = {fid}
    keep_edges = set(f.edge_ids)
    for i, t in enumerate(f.trail):
        v = C.traversal_end(t)
        L = C.links[v]
        T = trace_faces(L, F.rotations[v])
        lid = (fid, i)
        hit = [walk for walk in T.faces if any(h[0] == lid for h in walk)]
        if len(hit) != 2:
            raise DecisionError(f"link edge of {fid} at {v} does not lie on two traced faces")
        for walk in hit:
            for h in walk:
                keep_faces.add(h[0][0])
                for node in L.edges[h[0]]:
                    keep_edges.add(node[0])
    b = _Builder(C)
    b.delete_faces(g.id for g in C.faces if g.id not in keep_faces)
    b.run([TopoDeleteEdge(e.id) for e in b.C.edges if e.id not in keep_edges and b.C.face_degree(e.id) >= 2])
    b.split_all()
    return Obstruction("Moebius", b.ops, {"face": fid, "variant": moebius_variant(b.C, fid)})


def moebius_strip_check(R: Complex2, fid: str) -> dict:
    out = {"faceKept": fid in R.face}
    if not out["faceKept"]:
        return out
    from .minors import delete_face

    strip = delete_face(R, fid)
    strip = replay(strip, cleanup_ops(strip))
    try:
        sc = classify_bounded_surface(strip)
        out["strip"] = sc.kind
    except ValueError as exc:
        out["strip"] = f"not a surface: {exc}"
    return out


def moebius_variant(R: Complex2, fid: str) -> str | None:
    """'555' or '5454' when R is one of the two minimal obstructions."""
    if fid not in R.face or not R.is_simplicial:
        return None
    if (len(R.vertices), len(R.edges), len(R.faces)) not in ((6, 15, 10), (7, 17, 11)):
        return None
    cyc = set(R.face_vertices(fid))
    bd = [v for v in R.vertices if v not in cyc]
    B = R.one_skeleton().induced(bd)
    if any(B.degree(x) != 2 for x in bd) or not B.is_connected():
        return None
    order = [bd[0]]
    while len(order) < len(bd):
        nxt = sorted(y for y in B.neighbors(order[-1]) if y not in order)
        order.append(nxt[0])
    degs = [len(R.edges_at_vertex[x]) for x in order]
    if len(degs) == 3 and degs == [5, 5, 5]:
        return "555"
    if len(degs) == 4:
        for k in range(4):
            if degs[k:] + degs[:k] == [5, 4, 5, 4]:
                return "5454"
    return None


def moebius_at_cycle(C: Complex2, o: ParaCycle) -> Obstruction | None:
    """C itself as a Moebius obstruction whose central face is bounded by o."""
    vs = set(o.vertices)
    for f in C.faces:
        if set(C.face[f.id].edge_ids) == set(o.edges) and set(C.face_vertices(f.id)) == vs:
            obs = Obstruction("Moebius", [], {"face": f.id, "variant": moebius_variant(C, f.id)})
            if verify_obstruction(C, obs).ok:
                return obs
    return None


def minimize_moebius(C: Complex2, obs: Obstruction) -> Obstruction:
    """Contract boundary edges and the resulting digons while the Moebius structure survives."""
    fid = obs.detail["face"]
    b = _Builder(replay(C, obs.script))
    ops = list(obs.script)
    changed = True
    while changed:
        changed = False
        cyc = set(b.C.face_vertices(fid))
        for e in b.C.edges:
            if b.C.face_degree(e.id) != 1 or e.tail in cyc or e.head in cyc:
                continue
            tri = b.C.faces_at_edge[e.id][0]
            try:
                step = [ContractEdge(e.id), ContractFace(tri)]
                R = replay(b.C, step)
                R2 = replay(R, cleanup_ops(R))
                step += cleanup_ops(R)
            except (MinorError, ValueError):
                continue
            if not R2.is_simplicial or moebius_strip_check(R2, fid).get("strip") != "MoebiusStrip":
                continue
            b.run(step)
            ops += step
            changed = True
            break
    return Obstruction("Moebius", ops, {"face": fid, "variant": moebius_variant(b.C, fid), "minimized": True})


# torus crossings, helicopters, generic restrictions ---------------------------------------

def extract_torus_crossing(C: Complex2, o: ParaCycle) -> Obstruction | None:
    if len(o.vertices) < 4 or not is_chordless(C, o):
        return None
    ms = mega_faces(C, o)
    best = None
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            wi, wj = windings_at(C, o, ms[i]), windings_at(C, o, ms[j])
            if len(set(wi)) == 1 and len(set(wj)) == 1 and wi[0] != wj[0]:
                best = (ms[i], ms[j])
                break
        if best:
            break
    if best is None:
        return None
    keep = set(best[0].faces) | set(best[1].faces)
    b = _Builder(C)
    b.delete_faces(f.id for f in C.faces if f.id not in keep)
    w = sorted((best[0].winding, best[1].winding))
    return Obstruction("TorusCrossing", b.ops, {"cycle": list(o.vertices), "edges": list(o.edges),
                                                "windings": w})


def torus_crossing_check(R: Complex2, detail: dict) -> dict:
    o = ParaCycle(tuple(detail["cycle"]), tuple(detail["edges"]))
    out = {}
    if any(e not in R.edge for e in o.edges):
        return {"cycle": False}
    ms = mega_faces(R, o)
    out["megaFaces"] = len(ms)
    out["partition"] = len(ms) == 2 and sum(len(m.faces) for m in ms) == len(R.faces)
    ws = sorted(m.winding for m in ms)
    mono = all(len(set(windings_at(R, o, m))) == 1 for m in ms)
    out["monotone"] = mono
    out["windings"] = ws
    out["distinct"] = len(set(ws)) == len(ws) == 2 and ws == sorted(detail.get("windings", []))
    return out


def extract_helicopter(C: Complex2, cycle_edges: list) -> Obstruction | None:
    """Contract all but one cycle edge; the loop's link must fail the helicopter test."""
    if len(cycle_edges) < 2:
        return None
    keep = sorted(cycle_edges)[0]
    b = _Builder(C)
    try:
        for e in sorted(cycle_edges):
            if e == keep:
                continue
            if b.C.edge[e].is_loop:
                return None
            b.run([ContractEdge(e)])
    except (MinorError, ValueError, KeyError):
        return None
    if not b.C.edge[keep].is_loop:
        return None
    try:
        if helicopter_planar(loop_helicopter(b.C, keep)):
            return None
    except HelicopterError:
        return None
    return Obstruction("Helicopter", b.ops, {"loop": keep})


def restrict_greedy(C: Complex2) -> tuple[Complex2, list[Op]]:
    """Delete faces one at a time while no planar rotation system exists."""
    b = _Builder(C)
    for f in sorted(g.id for g in C.faces):
        if f not in b.C.face:
            continue
        trial = _Builder(b.C)
        trial.delete_faces([f])
        if find_planar_rotation_system(trial.C) is None:
            b.run(trial.ops)
    b.split_all()
    return b.C, b.ops


def structured_obstruction(C: Complex2, minimize: bool = False) -> Obstruction | None:
    """Try the named families on C; None if none applies and verifies."""
    for v in C.vertices:
        if not is_planar(C.links[v]):
            return extract_cone_obstruction(C, v)
    if C.is_simplicial:
        for e in C.edges:
            if not e.is_loop and not edge_link_planar(C, e.id):
                obs = extract_combined_cone(C, e.id)
                if verify_obstruction(C, obs).ok:
                    return obs
    for o in para_cycles(C):
        if not para_cycle_planar(C, o)[0]:
            obs = extract_torus_crossing(C, o)
            if obs is not None and verify_obstruction(C, obs).ok:
                return obs
            obs = moebius_at_cycle(C, o)
            if obs is not None:
                return obs
    if is_locally_3_connected(C):
        F = _framework(C)
        if isinstance(F, RotationFramework):
            nz = normalize_colors(C, F)
            if nz.odd_cycle is not None:
                obs = _from_odd_cycle(C, F, nz.odd_cycle, minimize)
                if obs is not None:
                    return obs
    return None


def _from_odd_cycle(C: Complex2, F: RotationFramework, cycle: list, minimize: bool) -> Obstruction | None:
    sol = solve_face_sum_f2(C, set(cycle))
    if sol is not None:
        odd = [f for f in sol if red_count(C, F, f) % 2 == 1]
        if not odd:
            raise AssertionError("red parity is not additive over the face decomposition")
        for f in odd:
            try:
                obs = extract_moebius(C, F, f)
            except (DecisionError, MinorError, ValueError):
                continue
            if verify_obstruction(C, obs).ok:
                if minimize:
                    m = minimize_moebius(C, obs)
                    if verify_obstruction(C, m).ok:
                        return m
                return obs
    obs = extract_helicopter(C, cycle)
    if obs is not None and verify_obstruction(C, obs).ok:
        return obs
    return None


def find_obstruction(C: Complex2, minimize: bool = False) -> Obstruction:
    """A verified certificate for a complex without planar rotation system."""
    obs = structured_obstruction(C, minimize)
    if obs is not None:
        return obs
    R, ops = restrict_greedy(C)
    inner = structured_obstruction(R, minimize)
    if inner is not None:
        full = Obstruction(inner.kind, ops + list(inner.script), dict(inner.detail))
        if verify_obstruction(C, full).ok:
            return full
    return Obstruction("Restriction", ops, {"faces": len(R.faces)})


# verification ---------------------------------------------------------------------------

def verify_obstruction(C: Complex2, obs: Obstruction, brute_limit: int = BRUTE_LIMIT) -> Check:
    try:
        R = replay(C, obs.script)
    except ValueError as exc:
        return Check(False, {}, f"script does not replay: {exc}")
    checks: dict = {}
    k, d = obs.kind, obs.detail
    if k == "NonPlanarLinkRaw":
        checks["nonPlanarLink"] = d["vertex"] in R.edges_at_vertex and not is_planar(R.links[d["vertex"]])
        return Check(all(checks.values()), checks)
    if k == "ConeOverKuratowski":
        w = is_cone_over_kuratowski(R, d["vertex"])
        checks["cone"] = w is not None and w[0] == d["kind"]
        return Check(all(checks.values()), checks)
    if k == "CombinedCone":
        fam = combined_cone_family(R, d["edge"])
        checks["combinedCone"] = fam is not None and R.is_simplicial
        checks["family"] = fam is not None and fam[1] == d.get("family") and fam[0] == d.get("kind")
    elif k == "Moebius":
        mc = moebius_strip_check(R, d["face"])
        checks["moebiusStrip"] = mc.get("strip") == "MoebiusStrip"
        if d.get("variant") is not None:
            checks["variant"] = moebius_variant(R, d["face"]) == d["variant"]
    elif k == "TorusCrossing":
        tc = torus_crossing_check(R, d)
        checks["torusCrossing"] = bool(tc.get("partition") and tc.get("monotone") and tc.get("distinct"))
    elif k == "Helicopter":
        e = d.get("loop")
        try:
            checks["helicopter"] = (e in R.edge and R.edge[e].is_loop
                                    and not helicopter_planar(loop_helicopter(R, e)))
        except HelicopterError:
            checks["helicopter"] = False
    elif k != "Restriction":
        return Check(False, {}, f"unknown obstruction kind {k}")
    checks.update({f"noPRS.{x}": y for x, y in no_prs(R, brute_limit).items() if x != "rotationCount"})
    return Check(all(bool(v) for v in checks.values()), checks)


# verdicts -------------------------------------------------------------------------------

@dataclass
class Verdict:
    status: str  # "Found" | "None"
    sigma: RotationSystem | None
    obstruction: Obstruction | None
    h1_trivial: dict
    interpretation: str
    route: str
    assumed: list
    verified: list
    stretching: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "Found" else 1

    def to_json(self) -> dict:
        d = {"status": self.status, "route": self.route, "interpretation": self.interpretation,
             "h1Trivial": {str(p): v for p, v in self.h1_trivial.items()},
             "assumed": self.assumed, "verified": self.verified}
        if self.sigma is not None:
            d["sigma"] = self.sigma.to_json()
        if self.obstruction is not None:
            d["obstruction"] = self.obstruction.to_json()
        if self.stretching:
            d["stretching"] = script_to_json(self.stretching)
        return d


def _verdict(C: Complex2, sigma, obs, p: int, assume_sc: bool, route: str, stretching=()) -> Verdict:
    h1 = homology_trivial(C, p)
    assumed = ["simply-connected"] if assume_sc else []
    verified = [f"H1(F_{p})={'0' if h1 else 'nonzero'}"]
    if sigma is not None:
        if not is_planar_rotation_system(C, sigma).planar:
            raise AssertionError("emitted rotation system is not planar")
        verified.append("planar rotation system")
        interp = "EmbedsInS3IfSimplyConnected" if assume_sc else "EmbedsInOrientable3Manifold"
        return Verdict("Found", sigma, None, {p: h1}, interp, route, assumed, verified, list(stretching))
    chk = verify_obstruction(C, obs)
    if not chk.ok:
        raise AssertionError(f"obstruction failed verification: {chk.checks} {chk.message}")
    verified.append("obstruction")
    return Verdict("None", None, obs, {p: h1}, "NotEmbeddableAnywhereOrientable", route, assumed, verified,
                   list(stretching))


def _precheck(C: Complex2, p: int, assume_sc: bool) -> None:
    _check_prime(p)
    if not C.is_reasonable:
        raise HypothesisViolation("complex is not reasonable: some edge lies in no face or some vertex is isolated")
    if assume_sc and not homology_trivial(C, p):
        raise HypothesisViolation(f"assumed simply connected but H1 over F_{p} is nonzero")


def decide_locally_3_connected(C: Complex2, p: int = 2, assume_sc: bool = False,
                               minimize: bool = False) -> Verdict:
    _precheck(C, p, assume_sc)
    F = build_rotation_framework(C)
    if isinstance(F, FrameworkFailure):
        if F.vertex is not None:
            obs = extract_cone_obstruction(C, F.vertex)
        else:
            obs = extract_combined_cone(C, F.edge) if C.is_simplicial else find_obstruction(C, minimize)
            if not verify_obstruction(C, obs).ok:
                obs = find_obstruction(C, minimize)
        return _verdict(C, None, obs, p, assume_sc, "locally-3-connected")
    nz = normalize_colors(C, F)
    if nz.odd_cycle is None:
        return _verdict(C, sigma_from_framework(C, nz.framework), None, p, assume_sc, "locally-3-connected")
    obs = _from_odd_cycle(C, F, nz.odd_cycle, minimize)
    if obs is None:
        # links have unique embeddings up to reversal, so an odd cycle already rules out every system
        obs = find_obstruction(C, minimize)
    return _verdict(C, None, obs, p, assume_sc, "locally-3-connected")


def decide_general(C: Complex2, p: int = 2, assume_sc: bool = False, minimize: bool = False) -> Verdict:
    _precheck(C, p, assume_sc)
    for v in C.vertices:
        if not is_planar(C.links[v]):
            return _verdict(C, None, extract_cone_obstruction(C, v), p, assume_sc, "general")
    norm = normalize(C) if C.is_simplicial else None
    stretch = norm.script if norm is not None else []
    S = find_planar_rotation_system(C)
    if S is not None:
        return _verdict(C, S, None, p, assume_sc, "general", stretch)
    return _verdict(C, None, find_obstruction(C, minimize), p, assume_sc, "general", stretch)


def decide(C: Complex2, p: int = 2, assume_sc: bool = False, minimize: bool = False,
           general: bool = False) -> Verdict:
    _precheck(C, p, assume_sc)
    if not general:
        for v in C.vertices:
            if not is_planar(C.links[v]):
                return _verdict(C, None, extract_cone_obstruction(C, v), p, assume_sc, "locally-3-connected")
        if is_locally_3_connected(C):
            return decide_locally_3_connected(C, p, assume_sc, minimize)
    return decide_general(C, p, assume_sc, minimize)


# generalized check -----------------------------------------------------------------------

@dataclass
class GeneralizedReport:
    framework: bool
    even: bool
    odd_faces: list
    reason: str = ""

    def to_json(self) -> dict:
        return {"framework": self.framework, "even": self.even, "oddFaces": self.odd_faces,
                "reason": self.reason}


def generalized_prs_check(C: Complex2) -> GeneralizedReport:
    """Even red count on every face for one arbitrary framework."""
    F = _framework(C)
    if isinstance(F, FrameworkFailure):
        return GeneralizedReport(False, False, [], "no framework: " + F.reason)
    odd = sorted(f.id for f in C.faces if red_count(C, F, f.id) % 2)
    return GeneralizedReport(True, not odd, odd)


def dump_certificate(C: Complex2, v: Verdict) -> str:
    return json.dumps(v.to_json(), sort_keys=True, indent=2)
