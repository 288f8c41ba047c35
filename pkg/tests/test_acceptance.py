"""Acceptance criteria 1 to 10; each test prints one PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v` (lines are printed even under capture).
"""
import time
from itertools import combinations, product

import networkx as nx
import pytest

from oracles import brute_prs_exists
from twocomplex.bruteforce import brute_force_prs, rotation_count
from twocomplex.catalog import base_graph, cone, gen, moebius_central_face, moebius_from_sequence, subdivide, \
    torus_crossing
from twocomplex.core import measures, simplicial_complex
from twocomplex.decision import (combined_cone_family, decide, decide_general, extract_combined_cone,
                                 moebius_strip_check, verify_obstruction)
from twocomplex.minors import MinorError, apply_script, contract_edge, contract_face, delete_face, nontrivial_bound
from twocomplex.randomgen import random_3_bounded, random_script, random_simplicial
from twocomplex.rotation import classify_bounded_surface, euler_identity_report, local_surfaces
from twocomplex.stretching import ContractReversible, StretchError, applicable_stretch_ops, normalize

# pinned tolerances: all exact; runtime ceilings in seconds
LIMIT = {1: 1.0, 2: 1.0, 3: 5.0, 4: 10.0, 5: 30.0, 6: 60.0, 7: 600.0, 8: 300.0, 9: 60.0}
ORACLE_ROTATIONS = 10 ** 6
QUADRATIC_SLACK = 3.0


@pytest.fixture
def line(capsys):
    def emit(n: int, ok: bool, msg: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {msg}")
    return emit


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


# 1 ----------------------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["tetrahedron", "octahedron", "icosahedron"])
def test_c1_sphere_triangulations(name, line):
    def run():
        C = gen(name)
        V = decide(C)
        if V.status != "Found":
            return V.status, None, None
        surfs = local_surfaces(C, V.sigma)
        return V.status, surfs, euler_identity_report(C, V.sigma).lhs
    (status, surfs, lhs), dt = _timed(run)
    ok = (status == "Found" and len(surfs) == 2 and all(s.euler_char == 2 and s.connected for s in surfs)
          and lhs == 0 and dt < LIMIT[1])
    line(1, ok, f"{name} status={status} surfaces={len(surfs or [])} lhs={lhs} time={dt:.3f}s")
    assert ok


# 2 ----------------------------------------------------------------------------------------

@pytest.mark.parametrize("name,kind", [("cone-k5", "K5"), ("cone-k33", "K33"), ("cone-k6", "K5"),
                                       ("cone-petersen", "K33")])
def test_c2_cone_obstructions(name, kind, line):
    def run():
        C = gen(name)
        V = decide(C)
        return V, verify_obstruction(C, V.obstruction) if V.obstruction else None
    (V, chk), dt = _timed(run)
    ok = (V.status == "None" and V.obstruction.kind == "ConeOverKuratowski"
          and V.obstruction.detail["kind"] == kind and chk.ok and dt < LIMIT[2])
    line(2, ok, f"{name} status={V.status} kind={V.obstruction.kind if V.obstruction else None} "
                f"replay={chk.ok if chk else None} time={dt:.3f}s")
    assert ok


# 3 ----------------------------------------------------------------------------------------

def test_c3_octahedron_family(line):
    def run():
        out = {}
        for s in range(4):
            C = gen("octahedron-obstruction", squares=s)
            V = decide(C)
            strip = None
            if V.obstruction is not None and V.obstruction.kind == "Moebius":
                strip = moebius_strip_check(apply_script(C, V.obstruction.script)[0],
                                            V.obstruction.detail["face"]).get("strip")
            out[s] = (V.status, strip, brute_prs_exists(C) if s == 2 else None)
        return out
    res, dt = _timed(run)
    ok = (res[0][0] == "Found" and res[1][0] == "Found" and res[3][0] == "None" and res[3][1] == "MoebiusStrip"
          and (res[2][0] == "Found") == res[2][2] and dt < LIMIT[3])
    line(3, ok, f"squares->status {[res[s][0] for s in range(4)]} strip(3)={res[3][1]} "
                f"brute(2)={res[2][2]} time={dt:.3f}s")
    assert ok


# 4 ----------------------------------------------------------------------------------------

def _compositions(total, max_len):
    """Cyclic sequences of k >= 1 with sum(k - 1) = total, up to rotation and reflection."""
    seen = set()
    for m in range(3, max_len + 1):
        for ks in product(range(1, total + 2), repeat=m):
            if sum(k - 1 for k in ks) != total:
                continue
            rots = [ks[i:] + ks[:i] for i in range(m)]
            canon = min(rots + [tuple(reversed(r)) for r in rots])
            if canon not in seen:
                seen.add(canon)
                yield canon


def _nice_strip(C):
    if not C.is_simplicial:
        return False
    central = moebius_central_face(C)
    S = delete_face(C, central)
    try:
        if classify_bounded_surface(S).kind != "MoebiusStrip":
            return False
    except ValueError:
        return False
    o = {"a0", "a1", "a2"}
    for e in S.edges:
        if S.face_degree(e.id) == 2:
            on = len(o & {e.tail, e.head})
            if on != 2 and on != 1:
                return False
    return True


def _reducible(C):
    """Contract a boundary edge and the resulting 2-gons; reducible if a nice obstruction remains."""
    central = moebius_central_face(C)
    for e in C.edges:
        if "a" in e.tail[0] + e.head[0] or C.face_degree(e.id) != 1:
            continue
        try:
            D = contract_edge(C, e.id)
            for f in [f.id for f in D.faces if len(f.trail) == 2]:
                D = contract_face(D, f)
        except (MinorError, ValueError):
            continue
        if central in {f.id for f in D.faces} and _nice_strip(D):
            return True
    return False


def test_c4_moebius_minimality(line):
    def run():
        minimal = []
        for ks in _compositions(6, 8):
            C = moebius_from_sequence(ks)
            if _nice_strip(C) and not _reducible(C):
                minimal.append(ks)
        degs = sorted(tuple(k + 2 for k in ks) for ks in minimal)
        verdicts = [decide(moebius_from_sequence(ks), general=True).status for ks in minimal]
        return degs, verdicts
    (degs, verdicts), dt = _timed(run)
    ok = degs == [(4, 5, 4, 5), (5, 5, 5)] and verdicts == ["None"] * 2 and dt < LIMIT[4]
    line(4, ok, f"minimal degree sequences={degs} verdicts={verdicts} time={dt:.3f}s")
    assert ok


# 5 ----------------------------------------------------------------------------------------

def test_c5_combined_cones(line):
    def run():
        rows = []
        for fam in range(1, 6):
            C = gen("combined-cone", family=fam)
            brute = brute_force_prs(C, limit=10 ** 7).exists
            oracle = brute_prs_exists(C) if rotation_count(C) <= 10 ** 4 else None
            obs = extract_combined_cone(C, "v~w")
            R = apply_script(C, obs.script)[0]
            fam_back = combined_cone_family(R, "v~w")
            rows.append((fam, brute, oracle, obs.detail["family"], fam_back, verify_obstruction(C, obs).ok))
        return rows
    rows, dt = _timed(run)
    ok = all(not b and o in (None, False) and d == f and fb is not None and fb[1] == f and v
             for f, b, o, d, fb, v in rows) and dt < LIMIT[5]
    line(5, ok, f"(family, bruteFound, oracleFound, extracted, verified) "
                f"{[(r[0], r[1], r[2], r[3], r[5]) for r in rows]} time={dt:.3f}s")
    assert ok


# 6 ----------------------------------------------------------------------------------------

def test_c6_torus_crossings(line):
    def run():
        rows = []
        for w in ((1, 2), (2, 3)):
            C = torus_crossing(*w)
            V = decide_general(C)
            win = V.obstruction.detail.get("windings") if V.obstruction else None
            # every instance is small enough for the exhaustive oracle, not only those with <= 9 faces
            rows.append((w, len(C.faces), V.status, V.obstruction.kind if V.obstruction else None, win,
                         rotation_count(C), brute_prs_exists(C)))
        return rows
    rows, dt = _timed(run)
    ok = all(st == "None" and k == "TorusCrossing" and win == list(w) and not br
             for w, _, st, k, win, _, br in rows) and dt < LIMIT[6]
    line(6, ok, f"(windings, faces, status, kind, found windings, rotations, bruteFound) {rows} time={dt:.3f}s")
    assert ok


# 7 ----------------------------------------------------------------------------------------

def _all_small_simplicial():
    tris = list(combinations([f"v{i}" for i in range(5)], 3))
    for k in range(1, 9):
        for sub in combinations(tris, k):
            yield simplicial_complex(sub)


def test_c7_oracle_equivalence(line):
    def run():
        n = mism = skipped = 0
        examples = []
        pool = list(_all_small_simplicial())
        pool += [random_3_bounded(seed, n_vertices=3 + seed % 3, n_edges=4 + seed % 4, n_faces=2 + seed % 4)
                 for seed in range(500)]
        for C in pool:
            if not C.is_reasonable or rotation_count(C) > ORACLE_ROTATIONS:
                skipped += 1
                continue
            n += 1
            got = decide(C).status == "Found"
            if got != brute_prs_exists(C, ORACLE_ROTATIONS):
                mism += 1
                examples.append(C.summary())
        return n, mism, skipped, examples[:3]
    (n, mism, skipped, ex), dt = _timed(run)
    ok = mism == 0 and n > 1000 and dt < LIMIT[7]
    line(7, ok, f"checked={n} mismatches={mism} skipped={skipped} time={dt:.1f}s {ex if ex else ''}")
    assert ok


# 8 ----------------------------------------------------------------------------------------

def test_c8_stretch_equivalence(line):
    def prs(C):
        return brute_force_prs(C, limit=10 ** 6).exists

    def run():
        ops = viol = 0
        examples = []
        for seed in range(200):
            C = random_simplicial(seed, 6, 8 + seed % 7, 4)
            before = prs(C)
            for op in applicable_stretch_ops(C):
                try:
                    D = op.apply(C)
                except (StretchError, ValueError):
                    if isinstance(op, ContractReversible):
                        continue
                    raise
                ops += 1
                if prs(D) != before:
                    viol += 1
                    examples.append((seed, op))
        return ops, viol, examples[:3]
    (ops, viol, ex), dt = _timed(run)
    ok = viol == 0 and ops > 0 and dt < LIMIT[8]
    line(8, ok, f"complexes=200 ops={ops} violations={viol} time={dt:.1f}s {ex if ex else ''}")
    assert ok


# 9 ----------------------------------------------------------------------------------------

def test_c9_well_foundedness(line):
    def run():
        bad_S = bad_strict = bad_bound = steps = 0
        for seed in range(1000):
            C = random_simplicial(seed, 6, 8, 4) if seed % 2 else random_3_bounded(seed)
            script = random_script(C, seed, length=10)
            _, trace = apply_script(C, script)
            prev = measures(C).S
            cur = C
            nontrivial = 0
            for op, st in zip(script, trace):
                steps += 1
                if op.kind in (4, 5) and op.__class__.__name__ != "DeleteIsolatedVertex":
                    if (op.kind == 4 and len(cur.links[op.vertex].components()) > 1) or \
                            (op.kind == 5 and cur.face_degree(op.edge) >= 2):
                        nontrivial += 1
                cur = op.apply(cur)
                S = measures(cur).S
                bad_S += S > prev
                bad_strict += op.kind in (1, 2, 3) and S >= prev
                prev = S
            bad_bound += nontrivial > nontrivial_bound(C)
        return steps, bad_S, bad_strict, bad_bound
    (steps, bs, bst, bb), dt = _timed(run)
    ok = bs == bst == bb == 0 and dt < LIMIT[9]
    line(9, ok, f"scripts=1000 steps={steps} increases={bs} non-strict(1-3)={bst} bound-exceeded={bb} "
                f"time={dt:.1f}s")
    assert ok


# 10 ---------------------------------------------------------------------------------------

def test_c10_quadratic_counters(line):
    """Documented only: growth of counters and wall time on n, 2n, 4n."""
    rows = []
    fams = {
        "cone-subdivided-K4": lambda n: cone(subdivide(nx.complete_graph(4), n)),
        "torus-crossing": lambda n: torus_crossing(1, 2, n=4 * n),
    }
    for fam, build in fams.items():
        pts = []
        for n in (1, 2, 4):
            C = build(n)
            t = time.perf_counter()
            decide(C, general=True)
            dt = time.perf_counter() - t
            N = normalize(C)
            pts.append((len(C.edges) + len(C.faces), N.counters.get("linkChecks", 0), dt))
        size0, work0, t0 = pts[0]
        ratios = [(w / work0) / (s / size0) ** 2 for s, w, _ in pts]
        fits = all(r <= QUADRATIC_SLACK for r in ratios)
        rows.append((fam, pts, fits))
        line(10, True, f"{fam} (size, linkChecks, decide seconds)={[(s, w, round(d, 3)) for s, w, d in pts]} "
                       f"quadratic-normalized ratios={[round(r, 2) for r in ratios]} within x{QUADRATIC_SLACK}={fits} "
                       f"(documented, not enforced)")
